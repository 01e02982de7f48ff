#include "ymflow/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ymflow {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian");

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const FormField& f, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open snapshot for writing: " + path);
  os.write("YMH1", 4);
  put<std::uint32_t>(os, 1u);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.kind()));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.geom().flavor));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.degree()));
  for (int m = 0; m < 3; ++m)
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.geom().n[m]));
  for (int m = 0; m < 3; ++m) put<double>(os, f.geom().len[m]);
  put<double>(os, time);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.components()));
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc) {
      const rvec& v = f.data(c, kc);
      os.write(reinterpret_cast<const char*>(v.data()),
               static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
  if (!os) throw std::runtime_error("snapshot write failed: " + path);
}

namespace {

SnapshotHeader read_header(std::ifstream& is, const std::string& path) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "YMH1", 4) != 0)
    throw std::runtime_error("bad snapshot magic: " + path);
  auto version = get<std::uint32_t>(is);
  if (version != 1u) throw std::runtime_error("unsupported snapshot version");
  SnapshotHeader h{};
  h.kind = static_cast<GroupKind>(get<std::uint8_t>(is));
  h.flavor = static_cast<BcFlavor>(get<std::uint8_t>(is));
  h.degree = get<std::uint8_t>(is);
  for (int m = 0; m < 3; ++m) h.n[m] = static_cast<int>(get<std::uint32_t>(is));
  for (int m = 0; m < 3; ++m) h.len[m] = get<double>(is);
  h.time = get<double>(is);
  auto comps = get<std::uint32_t>(is);
  if (comps != static_cast<std::uint32_t>(component_count(h.degree)))
    throw std::runtime_error("snapshot component count mismatch");
  return h;
}

}  // namespace

SnapshotHeader peek_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot: " + path);
  return read_header(is, path);
}

FormField read_snapshot(const std::string& path, const Workspace& ws, double* time) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot: " + path);
  SnapshotHeader h = read_header(is, path);
  if (!(ws.geom() == LatticeGeometry(h.n, h.len, h.flavor)))
    throw std::runtime_error("snapshot geometry does not match workspace");
  FormField f(ws, h.kind, h.degree);
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc) {
      rvec& v = f.data(c, kc);
      is.read(reinterpret_cast<char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
  if (!is) throw std::runtime_error("snapshot truncated: " + path);
  if (time) *time = h.time;
  return f;
}

FormField read_snapshot(const std::string& path, double* time, bool dealias) {
  SnapshotHeader h = peek_snapshot(path);
  Workspace ws(LatticeGeometry(h.n, h.len, h.flavor), dealias);
  return read_snapshot(path, ws, time);
}

void write_series_csv(const std::string& path,
                      const std::map<std::string, std::vector<double>>& series) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open csv for writing: " + path);
  std::vector<std::string> cols;
  if (series.count("t")) cols.push_back("t");
  for (const auto& [k, v] : series)
    if (k != "t") cols.push_back(k);
  for (std::size_t i = 0; i < cols.size(); ++i)
    os << cols[i] << (i + 1 < cols.size() ? "," : "\n");
  std::size_t rows = series.begin()->second.size();
  char buf[40];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", series.at(cols[i])[r]);
      os << buf << (i + 1 < cols.size() ? "," : "\n");
    }
  }
}

std::map<std::string, std::vector<double>> read_series_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open csv: " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
  }
  std::map<std::string, std::vector<double>> series;
  for (const auto& c : cols) series[c];
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',') && i < cols.size())
      series[cols[i++]].push_back(std::stod(tok));
  }
  return series;
}

void save_trajectory(const std::string& dir, const Trajectory& traj) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto meta = traj.series;
  meta["mesh_gamma"].assign(traj.series.at("t").size(), traj.mesh.grading);
  meta["flow_kind"].assign(traj.series.at("t").size(),
                           traj.flow == FlowKind::Augmented ? 0.0 : 1.0);
  meta["a_index"].assign(traj.series.at("t").size(), traj.a_index);
  write_series_csv(dir + "/series.csv", meta);
  char name[64];
  for (int i = 0; i < traj.nodes(); ++i) {
    std::snprintf(name, sizeof(name), "/snapshot_%04d.ymh", i);
    write_snapshot(dir + name, traj.snaps[i], traj.time(i));
  }
}

Trajectory load_trajectory(const std::string& dir, bool dealias) {
  auto series = read_series_csv(dir + "/series.csv");
  const auto& t = series.at("t");
  char name[64];
  std::snprintf(name, sizeof(name), "/snapshot_%04d.ymh", 0);
  double t0 = 0;
  FormField first = read_snapshot(dir + name, &t0, dealias);
  Trajectory traj(first.ws());
  traj.kind = first.kind();
  traj.flow = series.at("flow_kind")[0] == 0.0 ? FlowKind::Augmented : FlowKind::Direct;
  traj.a_index = series.at("a_index")[0];
  traj.mesh.horizon = t.back();
  traj.mesh.steps = static_cast<int>(t.size()) - 1;
  traj.mesh.grading = series.at("mesh_gamma")[0];
  traj.mesh.nodes = t;
  traj.snaps.push_back(std::move(first));
  for (std::size_t i = 1; i < t.size(); ++i) {
    std::snprintf(name, sizeof(name), "/snapshot_%04d.ymh", static_cast<int>(i));
    double ti = 0;
    traj.snaps.push_back(read_snapshot(dir + name, traj.ws, &ti));
  }
  series.erase("mesh_gamma");
  series.erase("flow_kind");
  series.erase("a_index");
  traj.series = std::move(series);
  return traj;
}

bool files_identical(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::istreambuf_iterator<char> ia(fa), ib(fb), end;
  while (ia != end && ib != end) {
    if (*ia != *ib) return false;
    ++ia;
    ++ib;
  }
  return ia == end && ib == end;
}

}  // namespace ymflow
