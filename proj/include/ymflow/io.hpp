#pragma once

#include <map>
#include <string>
#include <vector>

#include "ymflow/flow.hpp"

namespace ymflow {

/// Binary snapshot: magic "YMH1", header (version u32, group u8, bc u8,
/// degree u8, N u32 x3, L f64 x3, time f64, component count u32), then per
/// component the algebra-coordinate lattices as row-major little-endian f64.
void write_snapshot(const std::string& path, const FormField& f, double time);

struct SnapshotHeader {
  GroupKind kind;
  BcFlavor flavor;
  int degree;
  std::array<int, 3> n;
  std::array<double, 3> len;
  double time;
};

SnapshotHeader peek_snapshot(const std::string& path);
/// Reads into a field on the given workspace (header must match).
FormField read_snapshot(const std::string& path, const Workspace& ws, double* time);
/// Reads building a fresh workspace from the header.
FormField read_snapshot(const std::string& path, double* time,
                        bool dealias = true);

/// Time-series CSV: header row `t,name_1,...`, 17 significant digits.
void write_series_csv(const std::string& path,
                      const std::map<std::string, std::vector<double>>& series);
std::map<std::string, std::vector<double>> read_series_csv(const std::string& path);

/// Trajectory directory: series.csv, mesh metadata and one snapshot per node.
void save_trajectory(const std::string& dir, const Trajectory& traj);
Trajectory load_trajectory(const std::string& dir, bool dealias = true);

bool files_identical(const std::string& a, const std::string& b);

}  // namespace ymflow
