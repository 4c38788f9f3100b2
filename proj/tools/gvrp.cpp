// gvrp: solve, benchmark, verify and generate GVRP-PCAFS instances.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "gvrp/errors.hpp"
#include "gvrp/evaluation.hpp"
#include "gvrp/generator.hpp"
#include "gvrp/instance_io.hpp"
#include "gvrp/oracle.hpp"
#include "gvrp/report.hpp"
#include "gvrp/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string trace_line(const gvrp::TraceRecord& t) {
  return std::to_string(t.iteration) + "," + (t.best_distance ? fmt(*t.best_distance) : std::string()) + "," +
         std::to_string(t.feasible_size) + "," + std::to_string(t.infeasible_size) + "," +
         fmt(t.weights.overtime) + "," + fmt(t.weights.overmileage) + "," + fmt(t.weights.overcapacity) + "," +
         fmt(t.duration_rate) + "," + fmt(t.mileage_rate) + "," + fmt(t.capacity_rate) + "\n";
}

struct SolveOptions {
  std::string instance;
  unsigned long long seed = 1;
  int max_iter = 2000;
  int no_improve = 300;
  double time_limit = std::numeric_limits<double>::infinity();
  std::string trace;
  std::string out;
};

gvrp::SolverConfig config_of(const SolveOptions& o) {
  gvrp::SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.max_iterations = o.max_iter;
  cfg.max_no_improvement = o.no_improve;
  cfg.time_limit = o.time_limit;
  return cfg;
}

int cmd_solve(const SolveOptions& o) {
  const gvrp::Instance inst = gvrp::read_instance_file(o.instance);
  std::string trace = "iteration,best_td,feasible_size,infeasible_size,w_overtime,w_overmileage,w_overcapacity,"
                      "rate_duration,rate_mileage,rate_capacity\n";
  gvrp::TraceSink sink;
  if (!o.trace.empty()) sink = [&](const gvrp::TraceRecord& t) { trace += trace_line(t); };
  int code = kOk;
  try {
    const gvrp::RunResult r = gvrp::run(inst, config_of(o), sink);
    std::cout << "best_td " << fmt(r.best_distance, "%.2f") << "\n"
              << "routes " << gvrp::used_vehicles(r.best) << "\n"
              << "iterations " << r.iterations << "\n"
              << "time_to_best_s " << fmt(r.time_to_best, "%.3f") << "\n"
              << "total_time_s " << fmt(r.total_time, "%.3f") << "\n";
    if (!o.out.empty()) gvrp::write_text_file(o.out, gvrp::write_solution(r.best));
  } catch (const gvrp::NoFeasibleSolution& e) {
    std::cerr << "no feasible solution found; least violating solution written instead\n";
    if (!o.out.empty()) gvrp::write_text_file(o.out, gvrp::write_solution(e.least_violating()));
    code = kInfeasible;
  }
  if (!o.trace.empty()) gvrp::write_text_file(o.trace, trace);
  return code;
}

struct BenchOptions {
  std::string dir;
  int runs = 10;
  unsigned long long seeds = 1;
  int max_iter = 2000;
  int no_improve = 300;
  double time_limit = std::numeric_limits<double>::infinity();
  std::string out;
};

int cmd_bench(const BenchOptions& o) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw gvrp::Error("no instance files in " + o.dir);

  std::vector<gvrp::RunRecord> records;
  for (const auto& file : files) {
    const gvrp::Instance inst = gvrp::read_instance_file(file);
    for (int k = 0; k < o.runs; ++k) {
      SolveOptions so;
      so.seed = o.seeds + static_cast<unsigned long long>(k);
      so.max_iter = o.max_iter;
      so.no_improve = o.no_improve;
      so.time_limit = o.time_limit;
      gvrp::RunRecord rec;
      rec.instance = file.stem().string();
      rec.seed = so.seed;
      try {
        const gvrp::RunResult r = gvrp::run(inst, config_of(so));
        rec.best_distance = r.best_distance;
        rec.feasible = true;
        rec.time_to_best = r.time_to_best;
        rec.total_time = r.total_time;
        rec.iterations = r.iterations;
      } catch (const gvrp::NoFeasibleSolution&) {
        rec.feasible = false;
      }
      std::cerr << rec.instance << " seed " << rec.seed << ": "
                << (rec.feasible ? fmt(rec.best_distance, "%.2f") : std::string("infeasible")) << "\n";
      records.push_back(rec);
    }
  }
  const gvrp::Report rep = gvrp::write_report(records);
  gvrp::write_text_file(o.out, rep.runs_csv);
  fs::path summary = o.out;
  summary.replace_extension(".summary.csv");
  gvrp::write_text_file(summary, rep.summary_csv);
  std::cout << rep.summary_csv;
  return kOk;
}

int cmd_oracle(const std::string& file) {
  const gvrp::Instance inst = gvrp::read_instance_file(file);
  const gvrp::OracleResult r = gvrp::oracle_solve(inst);
  if (!r.solution) {
    std::cout << "infeasible\n";
    return kInfeasible;
  }
  std::cout << "best_td " << fmt(r.distance, "%.6f") << "\n" << gvrp::write_solution(*r.solution);
  return kOk;
}

int cmd_gen(const std::string& profile, int n, unsigned long long seed, const std::string& out) {
  const gvrp::Instance inst = gvrp::generate_instance(profile, n, seed);
  gvrp::write_instance_file(inst, out);
  return kOk;
}

int cmd_validate(const std::string& instance_file, const std::string& solution_file) {
  const gvrp::Instance inst = gvrp::read_instance_file(instance_file);
  const gvrp::Solution sol = gvrp::read_solution_file(solution_file, inst);
  gvrp::EvalReport rep;
  gvrp::FeasibilityVerdict v;
  try {
    rep = gvrp::evaluate(sol, inst, gvrp::PenaltyWeights{}, gvrp::WaitMode::kScheduled);
    v = gvrp::check_feasibility(sol, rep, inst);
  } catch (const gvrp::MalformedSolution& e) {
    std::cout << "feasible 0\nreason " << e.what() << "\n";
    return kInfeasible;
  }
  std::cout << "feasible " << (v.feasible() ? 1 : 0) << "\n"
            << "total_distance " << fmt(rep.total_distance, "%.6f") << "\n"
            << "routes " << rep.used_vehicles << "\n"
            << "fleet_ok " << v.fleet << "\n"
            << "duration_ok " << v.duration << "\n"
            << "energy_ok " << v.energy << "\n"
            << "capacity_ok " << v.capacity << "\n";
  for (std::size_t r = 0; r < rep.routes.size(); ++r) {
    double wait = 0.0;
    for (const auto& visit : rep.routes[r].visits) wait += visit.wait;
    std::cout << "route " << r + 1 << " distance " << fmt(rep.routes[r].distance, "%.4f") << " duration "
              << fmt(rep.routes[r].duration, "%.4f") << " wait " << fmt(wait, "%.4f") << "\n";
  }
  return v.feasible() ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GVRP with capacitated private fuel stations: memetic solver and tooling"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("--instance", solve.instance, "Instance file")->required();
  s->add_option("--seed", solve.seed, "Random seed")->required();
  s->add_option("--max-iter", solve.max_iter, "Iteration limit")->check(CLI::NonNegativeNumber);
  s->add_option("--no-improve", solve.no_improve, "Iterations without improvement before stopping")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--time-limit", solve.time_limit, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);
  s->add_option("--trace", solve.trace, "Per-iteration CSV trace");
  s->add_option("--out", solve.out, "Solution file");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Run every instance in a directory several times");
  b->add_option("--dir", bench.dir, "Directory of instance files")->required()->check(CLI::ExistingDirectory);
  b->add_option("--runs", bench.runs, "Runs per instance")->required()->check(CLI::PositiveNumber);
  b->add_option("--seeds", bench.seeds, "First seed; run k uses seed + k")->required();
  b->add_option("--max-iter", bench.max_iter, "Iteration limit")->check(CLI::NonNegativeNumber);
  b->add_option("--no-improve", bench.no_improve, "Iterations without improvement")->check(CLI::NonNegativeNumber);
  b->add_option("--time-limit", bench.time_limit, "Wall-clock limit per run")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "Per-run CSV; the summary goes next to it")->required();

  std::string oracle_file;
  auto* o = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  o->add_option("--instance", oracle_file, "Instance file")->required();

  std::string profile;
  int gen_n = 0;
  unsigned long long gen_seed = 1;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "Generate an instance");
  g->add_option("--profile", profile, "s_central, m_central, beijing or tiny")->required();
  g->add_option("--n", gen_n, "Customer count (profile default when omitted)");
  g->add_option("--seed", gen_seed, "Random seed")->required();
  g->add_option("--out", gen_out, "Output file")->required();

  std::string val_instance;
  std::string val_solution;
  auto* v = app.add_subcommand("validate", "Re-evaluate a solution file");
  v->add_option("--instance", val_instance, "Instance file")->required();
  v->add_option("--solution", val_solution, "Solution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*b) return cmd_bench(bench);
    if (*o) return cmd_oracle(oracle_file);
    if (*g) return cmd_gen(profile, gen_n, gen_seed, gen_out);
    if (*v) return cmd_validate(val_instance, val_solution);
  } catch (const gvrp::InfeasibleInstance& e) {
    std::cerr << "infeasible instance: " << e.what() << "\n";
    return kInfeasible;
  } catch (const gvrp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
