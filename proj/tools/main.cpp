#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phiact/bench.hpp"
#include "phiact/matrix_market.hpp"
#include "phiact/oracle.hpp"
#include "phiact/phi_single.hpp"
#include "phiact/rng.hpp"

namespace {

void print_rows(const std::vector<phiact::ResultRow>& rows,
                const phiact::BenchConfig& cfg) {
  if (cfg.format == "json")
    std::cout << phiact::rows_to_json(rows);
  else
    std::cout << phiact::rows_to_csv(rows);
  phiact::write_rows(rows, cfg);
}

int run_bench(const phiact::BenchConfig& cfg) {
  std::vector<phiact::ResultRow> rows;
  if (cfg.experiment == "chebyshev")
    rows = phiact::run_chebyshev(cfg);
  else if (cfg.experiment == "lowrank")
    rows = phiact::run_lowrank(cfg);
  else if (cfg.experiment == "adr")
    rows = phiact::run_adr(cfg);
  else if (cfg.experiment == "gallery")
    rows = phiact::run_gallery(cfg);
  else {
    std::cerr << "unknown experiment '" << cfg.experiment << "'\n";
    return 2;
  }
  print_rows(rows, cfg);
  return phiact::all_within_bounds(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix-free evaluation of phi-function linear combinations"};
  app.require_subcommand(1);

  phiact::BenchConfig cfg;

  auto* bench = app.add_subcommand("bench", "run an experiment table");
  bench->add_option("experiment", cfg.experiment,
                    "chebyshev | lowrank | adr | gallery")
      ->required();
  bench->add_option("--tol", cfg.tol, "evaluation tolerance");
  bench->add_option("--m", cfg.m, "Taylor degree for parameter selection");
  bench->add_option("--delta", cfg.delta, "guard fraction");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--cheb-n", cfg.cheb_n, "Chebyshev N");
  bench->add_option("--adr-grid", cfg.adr_nx, "ADR points per direction");
  bench->add_option("--out", cfg.out_path, "also write the table to a file");
  bench->add_option("--format", cfg.format, "csv | json");
  bench->add_flag("--full", cfg.full, "include the long optional cells");
  bench->add_flag("--parallel", cfg.parallel,
                  "evaluate gallery matrices concurrently");

  std::string matrix_path;
  int insp_m = phiact::kDefaultDegree;
  double insp_tol = -1.0, insp_delta = phiact::kDefaultGuardFraction;
  auto* params_cmd = app.add_subcommand("params", "parameter selection tools");
  auto* inspect = params_cmd->add_subcommand(
      "inspect", "print the scaling/shift selection for a matrix");
  inspect->add_option("matrix", matrix_path, "Matrix Market file")->required();
  inspect->add_option("--m", insp_m, "Taylor degree");
  inspect->add_option("--tol", insp_tol, "tolerance");
  inspect->add_option("--delta", insp_delta, "guard fraction");

  std::string eval_path, eval_out, eval_format = "csv";
  double eval_t = 1.0, eval_alpha = 1.0, eval_tol = -1.0;
  double eval_delta = phiact::kDefaultGuardFraction;
  int eval_p = 0, eval_m = phiact::kDefaultDegree;
  std::uint64_t eval_seed = 1;
  auto* eval = app.add_subcommand(
      "eval", "evaluate sum_j alpha^j phi_j(tA) v_j for a stored matrix");
  eval->add_option("matrix", eval_path, "Matrix Market file")->required();
  eval->add_option("--t", eval_t, "time argument");
  eval->add_option("--alpha", eval_alpha, "polynomial weight");
  eval->add_option("--p", eval_p, "combination order (random V, p+1 columns)");
  eval->add_option("--tol", eval_tol, "tolerance");
  eval->add_option("--m", eval_m, "Taylor degree");
  eval->add_option("--delta", eval_delta, "guard fraction");
  eval->add_option("--seed", eval_seed, "seed for the random V block");
  eval->add_option("--out", eval_out, "write the result row to a file");
  eval->add_option("--format", eval_format, "csv | json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      if (bench->count("--adr-grid")) cfg.adr_ny = cfg.adr_nx;
      return run_bench(cfg);
    }

    if (*inspect) {
      const phiact::Matrix A = phiact::read_matrix_market(matrix_path);
      const phiact::LinearOperator op = phiact::dense_operator(A, matrix_path);
      const phiact::ScalingShift sel = phiact::select_parameters(
          op, insp_m, insp_tol > 0 ? insp_tol : phiact::default_tolerance(),
          insp_delta);
      nlohmann::json obj;
      obj["n"] = A.rows();
      obj["s"] = sel.s;
      obj["xi"] = sel.xi;
      obj["s0"] = sel.s0;
      obj["f_min"] = sel.f_min;
      obj["m"] = sel.m;
      obj["r"] = sel.r;
      std::cout << obj.dump(2) << "\n";
      return 0;
    }

    if (*eval) {
      const phiact::Matrix A = phiact::read_matrix_market(eval_path);
      const phiact::LinearOperator op = phiact::dense_operator(A, eval_path);
      const double tol =
          eval_tol > 0 ? eval_tol : phiact::default_tolerance();
      const phiact::ScalingShift sel =
          phiact::select_parameters(op, eval_m, tol, eval_delta);
      phiact::Rng rng(eval_seed);
      phiact::PhiRequest req;
      req.t = eval_t;
      req.alpha = eval_alpha;
      req.V = rng.matrix(A.rows(), eval_p + 1);
      req.tol = tol;
      req.params = sel;
      const phiact::PhiResult res = phiact::phimv(op, req);

      phiact::ResultRow row;
      row.experiment = "eval";
      row.label = eval_path;
      row.t = eval_t;
      row.s_effective = res.stats.s_effective;
      row.series_len_S = res.stats.series_len_S;
      row.sweeps = int(res.stats.series_lens_F.size());
      row.matvecs = res.stats.matvecs;
      if (A.rows() + eval_p <= 2000) {
        const phiact::Vector ref =
            phiact::reference_w(A, req.V, eval_t, eval_alpha);
        const double denom = ref.lpNorm<1>();
        row.error = (res.w - ref).lpNorm<1>() / (denom > 0 ? denom : 1.0);
      } else {
        row.error = std::numeric_limits<double>::quiet_NaN();
      }
      std::vector<phiact::ResultRow> rows{row};
      phiact::BenchConfig out_cfg;
      out_cfg.out_path = eval_out;
      out_cfg.format = eval_format;
      print_rows(rows, out_cfg);
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 2;
}
