#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "slabsens/config.hpp"
#include "slabsens/report.hpp"

namespace fs = std::filesystem;
using namespace slabsens;

namespace {

std::string g4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Binary mode keeps table files byte-identical run to run.
void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::vector<ResponseBundle> build_bundles(const RunConfig& cfg) {
  const Grid grid(cfg.n_nodes, cfg.base.half_thickness_a);
  std::vector<ResponseBundle> out;
  out.reserve(cfg.detectors.size());
  for (double b : cfg.detectors)
    out.push_back(compute_response_bundle(cfg.base.with_detector(b), grid));
  return out;
}

void emit_tables(const RunConfig& cfg,
                 const std::vector<ResponseBundle>& bundles,
                 const std::vector<CaseReport>& case_reports,
                 const fs::path& dir) {
  for (const auto& rb : bundles) {
    const std::string lb = detector_label(rb.params.detector_b);
    write_file(dir / ("first_order_b" + lb + ".tsv"), first_order_tsv(rb));
    write_file(dir / ("second_order_b" + lb + ".tsv"), second_order_tsv(rb));
    write_file(dir / ("symmetry_b" + lb + ".tsv"), symmetry_tsv(rb));
    write_file(dir / ("solve_counts_b" + lb + ".tsv"), solve_counts_tsv(rb));
  }
  for (const auto& cr : case_reports) {
    write_file(dir / ("moments_" + cr.c.name + ".tsv"),
               moments_tsv(cr, bundles));
    write_file(dir / ("correlation_" + cr.c.name + ".tsv"),
               correlation_tsv(cr, cfg.detectors));
  }
}

void print_summary(const std::vector<ResponseBundle>& bundles) {
  for (const auto& rb : bundles)
    std::cout << "response R(b=" << detector_label(rb.params.detector_b)
              << " cm) = " << g4(rb.response_numeric) << " n/(cm^3 s)\n";
  if (!bundles.empty())
    std::cout << "adjoint solves per response: "
              << bundles.front().ledger.adjoint_total() << "\n";
}

bool print_checks(const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS" : "FAIL") << " " << c.name
              << " measured=" << g4(c.measured)
              << " tolerance=" << g4(c.tolerance) << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all;
}

int do_run(const RunConfig& cfg, bool with_checks) {
  validate_for_run(cfg);
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  const std::vector<ResponseBundle> bundles = build_bundles(cfg);
  std::vector<CaseReport> case_reports;
  case_reports.reserve(cfg.cases.size());
  for (const auto& c : cfg.cases)
    case_reports.push_back(build_case_report(c, bundles));

  std::vector<CheckResult> checks;
  if (with_checks)
    checks = run_all_checks(cfg.base, cfg.detectors, cfg.n_nodes,
                            cfg.tolerances, cfg.seed);

  const bool want_tsv = cfg.format != OutputFormat::json;
  const bool want_json = cfg.format != OutputFormat::tsv;
  if (want_tsv) {
    emit_tables(cfg, bundles, case_reports, dir);
    if (with_checks) write_file(dir / "checks.tsv", checks_tsv(checks));
  }
  if (want_json)
    write_file(dir / "results.json",
               results_json(cfg, bundles, case_reports, checks));

  print_summary(bundles);
  if (!with_checks) return 0;
  return print_checks(checks) ? 0 : 1;
}

int do_verify(const RunConfig& cfg) {
  if (cfg.detectors.empty())
    throw ConfigError("config: at least one detector position is required");
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  const std::vector<CheckResult> checks = run_all_checks(
      cfg.base, cfg.detectors, cfg.n_nodes, cfg.tolerances, cfg.seed);

  if (cfg.format != OutputFormat::json)
    write_file(dir / "checks.tsv", checks_tsv(checks));
  if (cfg.format != OutputFormat::tsv)
    write_file(dir / "checks.json", checks_json(checks));
  return print_checks(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"second-order adjoint sensitivities and uncertainty "
               "propagation for a 1-D diffusion slab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format_text;
  std::size_t grid_n = 0;
  std::uint64_t seed = 0;
  auto* copt = app.add_option("--config", config_path, "configuration file");
  auto* gopt = app.add_option("--grid", grid_n, "override grid.n_nodes");
  auto* oopt = app.add_option("--out", out_dir, "override output.dir");
  auto* fopt =
      app.add_option("--format", format_text, "tsv | json | both");
  auto* sopt = app.add_option("--seed", seed, "override mc.seed");

  auto* run_cmd =
      app.add_subcommand("run", "emit all tables and run the oracle checks");
  auto* verify_cmd =
      app.add_subcommand("verify", "run only the oracle checks");
  auto* tables_cmd =
      app.add_subcommand("tables", "emit only the reproduction tables");
  for (auto* sc : {run_cmd, verify_cmd, tables_cmd}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2; // CLI misuse is a configuration error
  }

  try {
    RunConfig cfg =
        copt->count() ? load_config_file(config_path) : RunConfig{};
    if (gopt->count()) cfg.n_nodes = grid_n;
    if (oopt->count()) cfg.out_dir = out_dir;
    if (fopt->count()) cfg.format = parse_format(format_text);
    if (sopt->count()) cfg.seed = seed;

    if (run_cmd->parsed()) return do_run(cfg, true);
    if (tables_cmd->parsed()) return do_run(cfg, false);
    return do_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
