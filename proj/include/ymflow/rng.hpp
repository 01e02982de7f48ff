#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ymflow {

/// Deterministic Gaussian stream. mt19937_64 is fully specified by the
/// standard; the Box-Muller step below avoids the implementation-defined
/// std::normal_distribution so that seeded runs are reproducible.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586476925286766559 * u2);
    have_spare_ = true;
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double uniform() {  // [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1p-53;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ymflow
