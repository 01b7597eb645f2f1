// qent: command-line front end for Groverian entanglement computations.
//
//   qent pmax      --state SPEC
//   qent groverian --state SPEC [--split SITES] | --mixed SPEC
//   qent grover    --state SPEC (--marked I[,J..] | --marked-count R) [--iterations M|auto]
//   qent verify    --suite all|grover|pmax|measures [--seed S]
//   qent sweep     --measure pmax|groverian|grover-success|pmax-gap --family F --n-min A --n-max B
//
// Exit codes: 0 success, 1 verify check failure, 2 usage/parse error,
// 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "qent/grover.hpp"
#include "qent/io.hpp"
#include "qent/measures.hpp"
#include "qent/product_opt.hpp"
#include "qent/random.hpp"
#include "qent/sweep.hpp"
#include "qent/verify.hpp"

namespace {

using qent::io::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::uint64_t seed = 0;
  int restarts = 20;
  double tol = 1e-12;
  int max_sweeps = 1000;
  std::string output = "json";
  std::string out_file;

  qent::OptimizerConfig optimizer() const {
    qent::OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.tol = tol;
    cfg.max_sweeps = max_sweeps;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, Common& c, std::uint64_t default_seed) {
  c.seed = default_seed;
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--restarts", c.restarts, "optimizer restarts")->capture_default_str();
  cmd->add_option("--tol", c.tol, "per-sweep convergence threshold")->capture_default_str();
  cmd->add_option("--max-sweeps", c.max_sweeps, "sweep limit per restart")->capture_default_str();
  cmd->add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", c.out_file, "write the report to FILE instead of stdout");
}

// Everything a subcommand produces; printed only after the computation succeeds.
struct Outcome {
  json config = json::object();
  json results = json::object();
  std::string csv;
  int exit_code = kExitOk;
};

std::string flat_csv(const json& record) {
  std::string header;
  std::string row;
  for (auto it = record.begin(); it != record.end(); ++it) {
    if (it.value().is_structured()) continue;
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    row += it.value().is_string() ? it.value().get<std::string>() : qent::io::format_json(it.value(), 0);
  }
  return header + "\n" + row + "\n";
}

Outcome cmd_pmax(const std::string& state_spec, const Common& c) {
  const qent::OptimizerConfig cfg = c.optimizer();
  const qent::StateVector psi = qent::io::resolve_state(state_spec);
  const qent::PmaxResult r = qent::pmax_overlap(psi, cfg);
  Outcome o;
  o.config = {{"state", state_spec}, {"optimizer", qent::io::to_json(cfg)}};
  o.results = qent::io::to_json(r);
  o.csv = flat_csv(o.results);
  return o;
}

Outcome cmd_groverian(const std::string& state_spec, const std::string& mixed_spec, const std::string& split,
                      const Common& c) {
  const qent::OptimizerConfig cfg = c.optimizer();
  Outcome o;
  o.config = {{"optimizer", qent::io::to_json(cfg)}};
  qent::MeasureReport report;
  if (!mixed_spec.empty()) {
    o.config["mixed"] = mixed_spec;
    report = qent::groverian_mixed(qent::io::resolve_density(mixed_spec), cfg);
  } else {
    o.config["state"] = state_spec;
    const qent::StateVector psi = qent::io::resolve_state(state_spec);
    if (split.empty()) {
      report = qent::groverian(psi, cfg);
    } else {
      o.config["split"] = split;
      const std::vector<int> first = [&] {
        std::vector<int> sites;
        std::stringstream in(split);
        for (std::string item; std::getline(in, item, ',');) {
          try {
            sites.push_back(std::stoi(item));
          } catch (const std::exception&) {
            throw qent::Error(qent::ErrorCode::ParseError, "bad site list '" + split + "'");
          }
        }
        return sites;
      }();
      report = qent::groverian_bipartite(psi, first);
    }
  }
  o.results = qent::io::to_json(report);
  o.csv = flat_csv(o.results);
  return o;
}

Outcome cmd_grover(const std::string& state_spec, const std::vector<std::uint64_t>& marked, std::size_t marked_count,
                   const std::string& iterations, const std::string& final_state, const Common& c) {
  const qent::StateVector psi = qent::io::resolve_state(state_spec);
  const qent::SystemShape& shape = psi.shape();

  std::vector<qent::BasisIndex> indices(marked.begin(), marked.end());
  if (indices.empty()) {
    if (marked_count == 0 || marked_count > shape.size())
      throw qent::Error(qent::ErrorCode::OutOfRange, "--marked-count must be in [1, N]");
    std::vector<qent::BasisIndex> all(shape.size());
    for (qent::BasisIndex x = 0; x < shape.size(); ++x) all[x] = x;
    qent::Rng rng(c.seed);
    std::shuffle(all.begin(), all.end(), rng);
    indices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(marked_count));
  }
  const qent::OracleSpec oracle = qent::make_oracle(shape, std::move(indices));

  int m = 0;
  if (iterations == "auto") {
    m = qent::optimal_iterations(oracle);
  } else {
    try {
      std::size_t used = 0;
      m = std::stoi(iterations, &used);
      if (used != iterations.size() || m < 0) throw std::invalid_argument("iterations");
    } catch (const std::exception&) {
      throw qent::Error(qent::ErrorCode::ParseError, "--iterations must be 'auto' or a non-negative integer");
    }
  }

  const qent::GroverRun run = qent::run_grover(psi, oracle, m);
  if (!final_state.empty()) qent::io::write_state_file(final_state, run.final_state);

  Outcome o;
  o.config = {{"state", state_spec},
              {"marked", std::vector<qent::BasisIndex>(oracle.marked().begin(), oracle.marked().end())},
              {"iterations", iterations}};
  o.results = {{"iterations", run.iterations},
               {"bound", qent::iteration_bound(shape.size(), oracle.count())},
               {"prob_curve", run.prob_curve},
               {"success_probability", run.prob_curve.back()}};
  std::ostringstream csv;
  csv << "k,probability\n";
  for (std::size_t k = 0; k < run.prob_curve.size(); ++k)
    csv << k << ',' << qent::io::format_double(run.prob_curve[k]) << '\n';
  o.csv = csv.str();
  return o;
}

Outcome cmd_verify(const std::string& suite, bool tamper, const Common& c) {
  qent::verify::Options opts;
  opts.seed = c.seed;
  opts.tamper = tamper;
  const std::vector<qent::verify::CheckResult> checks = qent::verify::run_suite(suite, opts);

  Outcome o;
  o.config = {{"suite", suite}, {"tamper", tamper}};
  json list = json::array();
  std::string csv = "name,observed,tolerance,passed\n";
  for (const auto& check : checks) {
    std::cerr << qent::verify::describe(check) << '\n';
    list.push_back({{"name", check.name},
                    {"observed", check.observed},
                    {"tolerance", check.tolerance},
                    {"passed", check.passed},
                    {"detail", check.detail}});
    csv += check.name + ',' + qent::io::format_double(check.observed) + ',' +
           qent::io::format_double(check.tolerance) + ',' + (check.passed ? "true" : "false") + '\n';
  }
  const bool passed = qent::verify::all_passed(checks);
  o.results = {{"suite", suite}, {"passed", passed}, {"checks", std::move(list)}};
  o.csv = std::move(csv);
  o.exit_code = passed ? kExitOk : kExitCheckFailed;
  return o;
}

Outcome cmd_sweep(qent::sweep::Options opts, const Common& c) {
  opts.seed = c.seed;
  opts.optimizer = c.optimizer();
  const std::vector<qent::sweep::Row> rows = qent::sweep::run(opts);
  Outcome o;
  o.config = {{"measure", opts.measure},
              {"family", opts.family},
              {"n_min", opts.n_min},
              {"n_max", opts.n_max},
              {"local_dim", opts.local_dim},
              {"optimizer", qent::io::to_json(opts.optimizer)}};
  json table = json::array();
  for (const auto& r : rows)
    table.push_back({{"N", r.size},
                     {"value", r.value},
                     {"reference", r.reference ? json(*r.reference) : json(nullptr)},
                     {"error", r.error ? json(*r.error) : json(nullptr)}});
  o.results = {{"rows", std::move(table)}};
  o.csv = qent::sweep::to_csv(rows);
  return o;
}

int exit_code_for(qent::ErrorCode code) {
  switch (code) {
    case qent::ErrorCode::ZeroContraction:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

int emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_file, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_file << "'\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search and Groverian entanglement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QENT_VERSION);

  Common common_pmax, common_grov, common_grover, common_verify, common_sweep;

  std::string pmax_state;
  auto* pmax = app.add_subcommand("pmax", "maximal squared overlap with product states");
  pmax->add_option("--state", pmax_state, "state file or family spec")->required();
  add_common(pmax, common_pmax, 0);

  std::string grov_state, grov_mixed, grov_split;
  auto* grov = app.add_subcommand("groverian", "Groverian entanglement G = sqrt(1 - P_max)");
  auto* grov_state_opt = grov->add_option("--state", grov_state, "state file or family spec");
  auto* grov_mixed_opt = grov->add_option("--mixed", grov_mixed, "density file or mixed family spec");
  grov->add_option("--split", grov_split, "sites of the first party, e.g. 0 (closed form)")->needs(grov_state_opt);
  grov_state_opt->excludes(grov_mixed_opt);
  grov->require_option(1, 2);
  add_common(grov, common_grov, 0);

  std::string grover_state, grover_iters = "auto", grover_final;
  std::vector<std::uint64_t> grover_marked;
  std::size_t grover_count = 0;
  auto* grover = app.add_subcommand("grover", "run the Grover iteration and print P(k)");
  grover->add_option("--state", grover_state, "initial state")->required();
  auto* marked_opt = grover->add_option("--marked", grover_marked, "marked basis indices")->delimiter(',');
  auto* count_opt = grover->add_option("--marked-count", grover_count, "mark R seeded-random indices");
  marked_opt->excludes(count_opt);
  grover->add_option("--iterations", grover_iters, "iteration count or 'auto'")->capture_default_str();
  grover->add_option("--final-state", grover_final, "write the final state to FILE");
  add_common(grover, common_grover, 0);

  std::string verify_suite = "all";
  bool verify_tamper = false;
  auto* verify = app.add_subcommand("verify", "run the self-verification suites");
  verify->add_option("--suite", verify_suite)
      ->check(CLI::IsMember({"all", "grover", "pmax", "measures"}))
      ->capture_default_str();
  verify->add_flag("--tamper", verify_tamper, "corrupt the Grover input to exercise failure reporting");
  add_common(verify, common_verify, 7);

  qent::sweep::Options sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "tabulate a measure over a family of states");
  sweep->add_option("--measure", sweep_opts.measure)
      ->check(CLI::IsMember({"pmax", "groverian", "grover-success", "pmax-gap"}))
      ->capture_default_str();
  sweep->add_option("--family", sweep_opts.family)
      ->check(CLI::IsMember({"ghz", "w", "uniform", "random", "product-random"}))
      ->capture_default_str();
  sweep->add_option("--n-min", sweep_opts.n_min)->capture_default_str();
  sweep->add_option("--n-max", sweep_opts.n_max)->capture_default_str();
  sweep->add_option("--local-dim", sweep_opts.local_dim)->capture_default_str();
  add_common(sweep, common_sweep, 7);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const Common* common = nullptr;
  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (pmax->parsed()) {
      common = &common_pmax;
      outcome = cmd_pmax(pmax_state, common_pmax);
    } else if (grov->parsed()) {
      common = &common_grov;
      if (grov_state.empty() && grov_mixed.empty())
        throw qent::Error(qent::ErrorCode::ParseError, "one of --state or --mixed is required");
      outcome = cmd_groverian(grov_state, grov_mixed, grov_split, common_grov);
    } else if (grover->parsed()) {
      common = &common_grover;
      if (grover_marked.empty() && grover_count == 0)
        throw qent::Error(qent::ErrorCode::ParseError, "one of --marked or --marked-count is required");
      outcome = cmd_grover(grover_state, grover_marked, grover_count, grover_iters, grover_final, common_grover);
    } else if (verify->parsed()) {
      common = &common_verify;
      outcome = cmd_verify(verify_suite, verify_tamper, common_verify);
    } else {
      common = &common_sweep;
      outcome = cmd_sweep(sweep_opts, common_sweep);
    }
  } catch (const qent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::string text;
  if (common->output == "csv") {
    text = outcome.csv;
  } else {
    std::vector<std::string> command(argv + 1, argv + argc);
    const json report = {{"tool", "qent"},
                         {"version", QENT_VERSION},
                         {"command", command},
                         {"seed", common->seed},
                         {"config", outcome.config},
                         {"results", outcome.results},
                         {"duration_seconds", seconds}};
    text = qent::io::format_json(report) + "\n";
  }
  const int rc = emit(text, common->out_file);
  return rc != kExitOk ? rc : outcome.exit_code;
}
