#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "slabsens/params.hpp"
#include "slabsens/uncertainty.hpp"
#include "slabsens/verification.hpp"

namespace slabsens {

/// Raised for anything the config layer rejects: unreadable file, malformed
/// line, unknown key, bad number, or a violated run invariant. The CLI maps
/// this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { tsv, json, both };

OutputFormat parse_format(const std::string& text); // throws ConfigError

struct RunConfig {
  ModelParameters base = ModelParameters::nominal(0.0); // detector set later
  std::vector<double> detectors{-49.5, -40.0, -10.0, 10.0, 40.0, 49.5};
  std::vector<UncertaintyCase> cases = UncertaintyCase::standard_cases();
  std::size_t n_nodes = 4001;
  VerifyTolerances tolerances;
  std::uint64_t seed = 20260822;
  std::size_t mc_samples = 1'000'000;
  std::string out_dir = "out";
  OutputFormat format = OutputFormat::both;
};

/// Flat key = value lines, '#' comments, dotted keys:
///   params.sigma_a / diff_coeff / source_q / sigma_d / half_thickness_a
///   detectors = 10, 40, 49.5            (replaces the default list)
///   grid.n_nodes = 4001
///   case.<n>.<param>_rel = 0.15         (any case.* key replaces the
///                                        default five cases)
///   tolerance.fd_first / fd_second / quad_vs_closed / symmetry_quad /
///             symmetry_closed / duality / convergence_order
///   mc.seed / mc.samples
///   output.dir / output.format          (tsv | json | both)
/// Unknown keys are rejected.
RunConfig parse_config_text(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Invariants the run/tables subcommands enforce up front: at least one
/// detector, and every detector representable on the configured grid. The
/// verify subcommand deliberately skips this so a degenerate grid reaches
/// the oracle checks and fails there.
void validate_for_run(const RunConfig& cfg);

} // namespace slabsens
