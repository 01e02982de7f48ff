#include "ymflow/config.hpp"

#include <fstream>
#include <sstream>

namespace ymflow {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_num(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw ConfigError("config: bad numeric value for " + key + ": " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("config: bad boolean for " + key + ": " + v);
}

}  // namespace

RunConfig RunConfig::from_lines(const std::vector<std::string>& lines) {
  RunConfig cfg;
  for (const auto& raw : lines) {
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "n1") cfg.n1 = static_cast<int>(to_num(key, val));
    else if (key == "n2") cfg.n2 = static_cast<int>(to_num(key, val));
    else if (key == "n3") cfg.n3 = static_cast<int>(to_num(key, val));
    else if (key == "l1") cfg.l1 = to_num(key, val);
    else if (key == "l2") cfg.l2 = to_num(key, val);
    else if (key == "l3") cfg.l3 = to_num(key, val);
    else if (key == "bc") {
      if (val == "periodic") cfg.bc = BcFlavor::Periodic;
      else if (val == "neumann") cfg.bc = BcFlavor::Neumann;
      else if (val == "dirichlet") cfg.bc = BcFlavor::Dirichlet;
      else throw ConfigError("config: bc must be periodic|neumann|dirichlet");
    } else if (key == "group") {
      if (val == "su2") cfg.group = GroupKind::SU2;
      else if (val == "u1") cfg.group = GroupKind::U1;
      else throw ConfigError("config: group must be su2|u1");
    } else if (key == "a") cfg.a_index = to_num(key, val);
    else if (key == "amplitude") cfg.amplitude = to_num(key, val);
    else if (key == "eps_reg") cfg.eps_reg = to_num(key, val);
    else if (key == "T") cfg.horizon = to_num(key, val);
    else if (key == "steps") cfg.steps = static_cast<int>(to_num(key, val));
    else if (key == "gamma_mesh") cfg.gamma_mesh = to_num(key, val);
    else if (key == "integrator") {
      if (val == "etd2rk") cfg.integrator = Integrator::Etd2rk;
      else if (val == "picard") cfg.integrator = Integrator::Picard;
      else throw ConfigError("config: integrator must be etd2rk|picard");
    } else if (key == "flow") {
      if (val == "augmented") cfg.flow = FlowKind::Augmented;
      else if (val == "direct") cfg.flow = FlowKind::Direct;
      else throw ConfigError("config: flow must be augmented|direct");
    } else if (key == "substeps") cfg.substeps = static_cast<int>(to_num(key, val));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_num(key, val));
    else if (key == "dealias") cfg.dealias = to_bool(key, val);
    else if (key == "diagnostics") cfg.diagnostics = val;
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "save_traj") cfg.save_traj = to_bool(key, val);
    else if (key == "tau_index") cfg.tau_index = static_cast<int>(to_num(key, val));
    else throw ConfigError("config: unknown key: " + key);
  }
  // range validation
  if (cfg.n1 < 4 || cfg.n2 < 4 || cfg.n3 < 4)
    throw ConfigError("config: grid sizes must be >= 4");
  if (!(cfg.l1 > 0 && cfg.l2 > 0 && cfg.l3 > 0))
    throw ConfigError("config: box lengths must be positive");
  if (!(cfg.a_index >= 0.5 && cfg.a_index < 1.0))
    throw ConfigError("config: a must lie in [0.5, 1)");
  if (cfg.amplitude < 0) throw ConfigError("config: amplitude must be >= 0");
  if (!(cfg.eps_reg > 0 && cfg.eps_reg <= 1.0))
    throw ConfigError("config: eps_reg must lie in (0, 1]");
  if (!(cfg.horizon > 0 && cfg.horizon <= 4.0))
    throw ConfigError("config: T must lie in (0, 4]");
  if (cfg.steps < 1 || cfg.steps > 100000)
    throw ConfigError("config: steps must lie in [1, 100000]");
  if (cfg.gamma_mesh != 0.0 && !(cfg.gamma_mesh >= 1.0 && cfg.gamma_mesh <= 16.0))
    throw ConfigError("config: gamma_mesh must lie in [1, 16]");
  if (cfg.substeps < 1 || cfg.substeps > 4096)
    throw ConfigError("config: substeps must lie in [1, 4096]");
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return from_lines(lines);
}

std::vector<std::string> RunConfig::diagnostic_list() const {
  std::vector<std::string> out;
  std::stringstream ss(diagnostics);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace ymflow
