#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabsens/pipeline.hpp"
#include "slabsens/uncertainty.hpp"

namespace slabsens {

/// One oracle check. `measured` and `tolerance` share units within a check
/// but their meaning is per-check: a worst relative discrepancy for most, a
/// minimum observed order for grid convergence, a worst |z| for the Monte
/// Carlo check. `detail` names the worst entry and any absolute floor used.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyTolerances {
  double fd_first = 1e-4;         // relative, vs central finite differences
  double fd_second = 1e-3;        // mixed, vs the second-order FD stencil
  double quad_vs_closed = 1e-3;   // quadrature route vs closed forms
  double symmetry_quad = 1e-2;    // dual-route mixed partials, quadrature
  double symmetry_closed = 1e-10; // dual-route mixed partials, closed form
  double duality = 1e-4;          // forward route vs adjoint route
  double convergence_order = 1.9; // minimum acceptable observed order
};

inline constexpr std::size_t kDualityVectors = 100;

/// Central-difference first derivatives of the analytic response, relative
/// step 1e-5 per parameter. Independent oracle: no adjoint machinery.
std::array<double, kNumParams> fd_first_vector(const ModelParameters& p);

/// Second-order stencil (diagonal three-point, mixed four-point), relative
/// step 1e-3 per parameter.
SensitivityMatrix fd_second_matrix(const ModelParameters& p);

CheckResult check_fd_first(const ResponseBundle& rb, double tol);
CheckResult check_fd_second(const ResponseBundle& rb, double tol);
CheckResult check_quad_vs_closed(const ResponseBundle& rb, double tol);
CheckResult check_symmetry_quad(const ResponseBundle& rb, double tol);
CheckResult check_symmetry_closed(const ResponseBundle& rb, double tol);

/// Random joint variations (component i ~ N(0, (0.01 alpha_i)^2)); compares
/// the forward-route first variation against the adjoint-route sum S_i h_i,
/// normalized by sum |S_i h_i| so cancellation between terms cannot inflate
/// the quoted agreement.
CheckResult check_duality(const ResponseBundle& rb, std::size_t n_vectors,
                          std::uint64_t seed, double tol);

/// Max-norm errors of numeric flux and first adjoint against closed forms
/// across `node_counts`; every per-step observed order must reach min_order.
CheckResult check_grid_convergence(const ModelParameters& p,
                                   const std::vector<std::size_t>& node_counts,
                                   double min_order);

/// Node-count ladder used by verify: base = min(n_config, 1001), then three
/// successive spacing halvings. The default grid therefore exercises
/// {1001, 2001, 4001, 8001}, while a degenerate configured grid (e.g. 3
/// nodes) is made to face its own refinement ladder.
std::vector<std::size_t> convergence_ladder(std::size_t n_config);

/// Samples the second-order Taylor surrogate and compares empirical
/// mean/variance/skewness against the closed moment formulas within 3
/// batch standard errors.
CheckResult check_mc_moments(const ResponseBundle& rb, const UncertaintyCase& c,
                             std::size_t n_samples, std::uint64_t seed);

/// The verify-subcommand suite: per detector, FD (both orders), quadrature
/// vs closed form, dual-route symmetry, forward-vs-adjoint duality, and grid
/// convergence. A detector whose pipeline cannot be built contributes a
/// single failed record plus its convergence record.
std::vector<CheckResult> run_all_checks(const ModelParameters& base,
                                        const std::vector<double>& detectors,
                                        std::size_t n_nodes,
                                        const VerifyTolerances& tol,
                                        std::uint64_t seed);

} // namespace slabsens
