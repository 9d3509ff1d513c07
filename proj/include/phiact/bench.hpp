#ifndef PHIACT_BENCH_HPP
#define PHIACT_BENCH_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "phiact/phi_single.hpp"

namespace phiact {

/// Configuration for the experiment harness.  The defaults reproduce the
/// desk-scale acceptance runs exactly.
struct BenchConfig {
  std::string experiment;  // chebyshev | lowrank | adr | gallery
  int cheb_n = 100;
  double cheb_len = 2.0;
  int adr_nx = 50;
  int adr_ny = 50;
  double tol = -1.0;  // <= 0: per-experiment default
  int m = kDefaultDegree;
  double delta = kDefaultGuardFraction;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "csv";
  bool full = false;      // include the long optional cells (chebyshev t = 1)
  bool parallel = false;  // gallery matrices on worker threads
};

/// One row of an experiment table.  The schema is shared by every
/// experiment; `t` holds the step size h for the ADR rows and `order`
/// is populated only where an observed order is defined.
struct ResultRow {
  std::string experiment;
  std::string label;
  double t = 0.0;
  double error = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  long s_effective = 0;
  int series_len_S = 0;
  int sweeps = 0;
  long matvecs = 0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  bool ok = true;
};

std::vector<ResultRow> run_chebyshev(const BenchConfig& cfg);
std::vector<ResultRow> run_lowrank(const BenchConfig& cfg);
std::vector<ResultRow> run_adr(const BenchConfig& cfg);
std::vector<ResultRow> run_gallery(const BenchConfig& cfg);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);
void write_rows(const std::vector<ResultRow>& rows, const BenchConfig& cfg);

/// True iff every row with a bound stayed within it.
bool all_within_bounds(const std::vector<ResultRow>& rows);

}  // namespace phiact

#endif  // PHIACT_BENCH_HPP
