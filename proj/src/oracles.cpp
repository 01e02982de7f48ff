#include "ymflow/oracles.hpp"

#include <cmath>
#include <functional>

#include "ymflow/mesh.hpp"
#include "ymflow/rng.hpp"

namespace ymflow {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

/// Smooth strictly positive random function on [0, T].
struct RandomSmooth {
  double a0, a1, a2, w1, w2, p1, p2;
  static RandomSmooth make(GaussianRng& rng, double T) {
    RandomSmooth f{};
    f.a0 = 0.3 + rng.uniform();
    f.a1 = 0.5 * rng.uniform();
    f.a2 = 0.5 * rng.uniform();
    f.w1 = 2.0 * kPi * (1.0 + 2.0 * rng.uniform()) / T;
    f.w2 = 2.0 * kPi * (1.0 + 3.0 * rng.uniform()) / T;
    f.p1 = 2.0 * kPi * rng.uniform();
    f.p2 = 2.0 * kPi * rng.uniform();
    return f;
  }
  double operator()(double s) const {
    return a0 + a1 * (1.0 + std::sin(w1 * s + p1)) / 2.0 +
           a2 * (1.0 + std::cos(w2 * s + p2)) / 2.0;
  }
};

std::vector<double> graded_grid(double T, int n, double gamma) {
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = T * std::pow(double(i) / n, gamma);
  return t;
}

/// int_0^t (t-s)^-c beta(s) ds by the substitution u = (t-s)^{1-c}.
double convolve_singular(const std::function<double(double)>& beta, double c,
                         double t, int n) {
  double acc = 0.0;
  double omc = 1.0 - c;
  double umax = std::pow(t, omc);
  for (int i = 0; i < n; ++i) {
    double u0 = umax * i / n, u1 = umax * (i + 1) / n;
    double s0 = t - std::pow(u0, 1.0 / omc);
    double s1 = t - std::pow(u1, 1.0 / omc);
    acc += 0.5 * (u1 - u0) * (beta(s0) + beta(s1));
  }
  return acc / omc;
}

double trapz(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

double incomplete_gamma_like(double mu, double tau) {
  // int_0^tau sigma^-mu e^-sigma d sigma via u = sigma^{1-mu}
  double omm = 1.0 - mu;
  double umax = std::pow(tau, omm);
  int n = 4000;
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    double u0 = umax * i / n, u1 = umax * (i + 1) / n;
    double s0 = std::pow(u0, 1.0 / omm), s1 = std::pow(u1, 1.0 / omm);
    acc += 0.5 * (u1 - u0) * (std::exp(-s0) + std::exp(-s1));
  }
  return acc / omm;
}

double sup_c_mu_delta(double mu, double delta) {
  // sup_tau tau^-delta int_0^tau sigma^-mu e^-sigma d sigma
  double best = 0;
  for (int i = 0; i <= 240; ++i) {
    double tau = std::pow(10.0, -4.0 + 6.0 * i / 240.0);
    best = std::max(best, std::pow(tau, -delta) * incomplete_gamma_like(mu, tau));
  }
  return best;
}

}  // namespace

double beta_convolution_constant(double mu, double nu) {
  return std::exp(std::lgamma(1.0 - nu) + std::lgamma(1.0 - mu) -
                  std::lgamma(2.0 - mu - nu));
}

std::vector<OracleTrial> oracle_lemu1(std::uint64_t seed, int trials) {
  std::vector<OracleTrial> out;
  GaussianRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    double c = 0.05 + 0.85 * rng.uniform();
    double blo = std::max(0.0, 2.0 * c - 0.9);
    double b = blo + (std::min(2.0 * c + 0.9, 1.9) - blo) * rng.uniform();
    double T = 0.4 + 1.2 * rng.uniform();
    RandomSmooth beta = RandomSmooth::make(rng, T);

    auto grid = graded_grid(T, 160, 2.0);
    std::vector<double> lhs_y(grid.size(), 0.0), rhs_y(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      double t = grid[i];
      double alpha = convolve_singular([&](double s) { return beta(s); }, c, t, 200) / t;
      lhs_y[i] = std::pow(t, b) * alpha * alpha;
      rhs_y[i] = std::pow(t, b - 2.0 * c) * beta(t) * beta(t);
    }
    double lhs = trapz(grid, lhs_y);
    // gamma constant per the lemma's recipe: r = 0 if b < 2c, else midway
    double r = (b - 2.0 * c < 0) ? 0.0 : 0.5 * (b - 2.0 * c + 1.0);
    double gamma = beta_convolution_constant(c, r) *
                   beta_convolution_constant(c, 1.0 - (2.0 * c + r - b));
    double rhs = gamma * trapz(grid, rhs_y);
    out.push_back({"lemu1", rhs - lhs, std::abs(rhs)});
  }
  return out;
}

double lemu1_beta_crosscheck() {
  // c = 3/4, b = 1, beta == 1: alpha(t) = 4 t^{-3/4} exactly.
  double worst = 0;
  for (double t : {0.1, 0.37, 0.9}) {
    double alpha = convolve_singular([](double) { return 1.0; }, 0.75, t, 400) / t;
    double exact = 4.0 * std::pow(t, -0.75);
    worst = std::max(worst, std::abs(alpha - exact) / exact);
  }
  // closed-form check of the constant: C_{3/4,0} = 4, C_{3/4,1/2} = B(1/2,1/4)
  double c1 = beta_convolution_constant(0.75, 0.0);
  worst = std::max(worst, std::abs(c1 - 4.0) / 4.0);
  double c2 = beta_convolution_constant(0.75, 0.5);
  double exact2 = std::exp(std::lgamma(0.5) + std::lgamma(0.25) - std::lgamma(0.75));
  worst = std::max(worst, std::abs(c2 - exact2) / exact2);
  return worst;
}

std::vector<OracleTrial> oracle_actint(std::uint64_t seed, int trials) {
  std::vector<OracleTrial> out;
  GaussianRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    double alpha = rng.uniform();
    double mu = 0.9 * rng.uniform();
    if (alpha + mu > 1.0) mu = (1.0 - alpha) * rng.uniform();  // delta >= 0
    double b = mu + (0.95 - mu) * rng.uniform();
    double delta = 1.0 - alpha - mu;
    double T = 0.3 + 1.0 * rng.uniform();
    const int ne = 16;
    std::vector<double> lam(ne);
    std::vector<RandomSmooth> gs;
    for (int e = 0; e < ne; ++e) {
      lam[e] = 40.0 * rng.uniform();
      gs.push_back(RandomSmooth::make(rng, T));
    }
    auto tg = graded_grid(T, 96, 2.0);
    std::vector<double> lhs_f(tg.size(), 0.0), rhs_f(tg.size(), 0.0);
    for (std::size_t it = 0; it < tg.size(); ++it) {
      double t = tg[it];
      double norm2 = 0.0;
      if (t > 0) {
        for (int e = 0; e < ne; ++e) {
          // int_0^t s^-mu lam^alpha e^{-(t-s)lam} g_e(s) ds, u = s^{1-mu}
          double omm = 1.0 - mu;
          double umax = std::pow(t, omm);
          int n = 96;
          double acc = 0;
          for (int i = 0; i < n; ++i) {
            double u0 = umax * i / n, u1 = umax * (i + 1) / n;
            double s0 = std::pow(u0, 1.0 / omm), s1 = std::pow(u1, 1.0 / omm);
            double f0 = std::pow(lam[e], alpha) * std::exp(-(t - s0) * lam[e]) * gs[e](s0);
            double f1 = std::pow(lam[e], alpha) * std::exp(-(t - s1) * lam[e]) * gs[e](s1);
            acc += 0.5 * (u1 - u0) * (f0 + f1);
          }
          acc /= omm;
          norm2 += acc * acc;
        }
      }
      lhs_f[it] = norm2;
      double g2 = 0.0;
      for (int e = 0; e < ne; ++e) g2 += gs[e](t) * gs[e](t);
      rhs_f[it] = g2;
    }
    // both sides carry the integrable t^-b weight: singular quadrature
    double lhs = singular_weight_integral(tg, lhs_f, b, tg.size() - 1);
    double c_am = std::pow(1.0 - mu, alpha - 1.0) * sup_c_mu_delta(mu, delta);
    double rhs = std::pow(T, 2.0 * delta) * c_am *
                 singular_weight_integral(tg, rhs_f, b, tg.size() - 1);
    out.push_back({"ce303", rhs - lhs, std::abs(rhs)});
  }
  return out;
}

std::vector<OracleTrial> oracle_kernel_bound(std::uint64_t seed, int trials) {
  std::vector<OracleTrial> out;
  GaussianRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    double alpha = rng.uniform();
    double mu = 0.9 * rng.uniform();
    if (alpha + mu > 1.0) mu = (1.0 - alpha) * rng.uniform();
    double delta = 1.0 - alpha - mu;
    double t = 0.05 + 2.0 * rng.uniform();
    double worst = 1e300, scale = 0;
    for (int e = 0; e < 24; ++e) {
      double lam = (e < 4) ? e * 0.25 : std::pow(10.0, -1.0 + 3.0 * rng.uniform());
      double omm = 1.0 - mu;
      double umax = std::pow(t, omm);
      int n = 400;
      double acc = 0;
      for (int i = 0; i < n; ++i) {
        double u0 = umax * i / n, u1 = umax * (i + 1) / n;
        double s0 = std::pow(u0, 1.0 / omm), s1 = std::pow(u1, 1.0 / omm);
        acc += 0.5 * (u1 - u0) * (std::pow(lam, alpha) * std::exp(-(t - s0) * lam) +
                                  std::pow(lam, alpha) * std::exp(-(t - s1) * lam));
      }
      acc /= omm;
      double bound = std::pow(t, delta) * std::pow(1.0 - mu, alpha - 1.0);
      worst = std::min(worst, bound - acc);
      scale = std::max(scale, bound);
    }
    out.push_back({"ce304", worst, scale});
  }
  return out;
}

std::vector<OracleTrial> oracle_initial_behavior(std::uint64_t seed, int trials) {
  std::vector<OracleTrial> out;
  GaussianRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    double T = 0.5 + rng.uniform();
    double b = -0.9 + 1.8 * rng.uniform();  // b < 1
    RandomSmooth fbase = RandomSmooth::make(rng, T);
    RandomSmooth gbase = RandomSmooth::make(rng, T);
    RandomSmooth rho = RandomSmooth::make(rng, T);
    auto f = [&](double s) { return fbase(s); };
    auto fp = [&](double s) {
      double h = 1e-6 * T;
      return (fbase(s + h) - fbase(s - h)) / (2.0 * h);
    };
    auto g = [&](double s) { return gbase(s); };
    auto h = [&](double s) { return fp(s) + g(s) + rho(s); };  // vs90 with slack

    auto tg = graded_grid(T, 400, 1.5);
    std::vector<double> y1(tg.size()), y2(tg.size()), fv(tg.size());
    for (std::size_t i = 0; i < tg.size(); ++i) {
      double s = tg[i];
      double w = s > 0 ? std::pow(s, 1.0 - b) : 0.0;
      y1[i] = w * g(s);
      y2[i] = w * h(s);
      fv[i] = f(s);
    }
    double lhs = std::pow(T, 1.0 - b) * f(T) + trapz(tg, y1);
    double rhs = trapz(tg, y2) +
                 (1.0 - b) * singular_weight_integral(tg, fv, b, tg.size() - 1);
    out.push_back({"vs91", rhs - lhs, std::abs(rhs)});

    // fa7 equality for monotone f (checked to quadrature tolerance) and fa8.5
    double q = 0.5 + 2.0 * rng.uniform();
    double A = 0.5 + rng.uniform();
    auto fm = [&](double s) { return A * std::exp(-q * s); };
    auto fmp = [&](double s) { return -q * A * std::exp(-q * s); };
    double bb = 0.5;
    std::vector<double> z1(tg.size()), fmv(tg.size());
    for (std::size_t i = 0; i < tg.size(); ++i) {
      double s = tg[i];
      z1[i] = (s > 0 ? std::pow(s, 1.0 - bb) : 0.0) * (-fmp(s));
      fmv[i] = fm(s);
    }
    double l7 = std::pow(T, 1.0 - bb) * fm(T) + trapz(tg, z1);
    double r7 = (1.0 - bb) * singular_weight_integral(tg, fmv, bb, tg.size() - 1);
    out.push_back({"fa7", 1e-3 * std::abs(r7) - std::abs(l7 - r7), std::abs(r7)});
    // fa8.5: (1/2) int f^2 <= ((1/2) int s^-1/2 f)^2
    std::vector<double> w1(tg.size());
    for (std::size_t i = 0; i < tg.size(); ++i) w1[i] = fm(tg[i]) * fm(tg[i]);
    double l85 = 0.5 * trapz(tg, w1);
    double r85 =
        std::pow(0.5 * singular_weight_integral(tg, fmv, 0.5, tg.size() - 1), 2);
    out.push_back({"fa8.5", r85 - l85, std::abs(r85)});
  }
  return out;
}

std::vector<OracleTrial> oracle_heat_power(std::uint64_t seed, int trials) {
  std::vector<OracleTrial> out;
  GaussianRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    double alpha = 2.0 * rng.uniform();
    double t = std::pow(10.0, -2.0 + 3.0 * rng.uniform());
    double c_alpha = std::pow(0.5 * alpha, 0.5 * alpha) * std::exp(-0.5 * alpha);
    double bound = c_alpha * std::pow(t, -0.5 * alpha);
    double worst = 1e300;
    for (int e = 0; e < 64; ++e) {
      double lam = std::pow(10.0, -2.0 + 5.0 * rng.uniform());
      double val = std::pow(lam, 0.5 * alpha) * std::exp(-t * lam);
      worst = std::min(worst, bound - val);
    }
    out.push_back({"hk0", worst, bound});
  }
  return out;
}

}  // namespace ymflow
