#include "slabsens/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "slabsens/analytic.hpp"
#include "slabsens/forward.hpp"

namespace slabsens {
namespace {

constexpr double kFdFirstStep = 1e-5;  // relative
constexpr double kFdSecondStep = 1e-3; // relative
constexpr double kFloorFactor = 1e-6;  // of the dominating matrix magnitude

double nominal_of(const ModelParameters& p, std::size_t i) {
  const std::array<double, kNumParams> a{p.sigma_a, p.diff_coeff, p.source_q,
                                         p.sigma_d};
  return a[i];
}

ModelParameters perturbed(const ModelParameters& p, std::size_t i, double h) {
  ModelParameters q = p;
  switch (i) {
    case 0: q.sigma_a += h; break;
    case 1: q.diff_coeff += h; break;
    case 2: q.source_q += h; break;
    case 3: q.sigma_d += h; break;
    default: throw std::out_of_range("parameter index out of range");
  }
  return q;
}

std::string entry_label(std::size_t i, std::size_t j) {
  return "S" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::string entry_label(std::size_t i) { return "S" + std::to_string(i + 1); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const char* method_name(Method m) {
  return m == Method::quadrature ? "quadrature" : "closed-form";
}

} // namespace

std::array<double, kNumParams> fd_first_vector(const ModelParameters& p) {
  std::array<double, kNumParams> out{};
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double h = kFdFirstStep * nominal_of(p, i);
    const double rp = analytic_response(perturbed(p, i, +h));
    const double rm = analytic_response(perturbed(p, i, -h));
    out[i] = (rp - rm) / (2.0 * h);
  }
  return out;
}

SensitivityMatrix fd_second_matrix(const ModelParameters& p) {
  SensitivityMatrix m;
  const double r0 = analytic_response(p);
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double hi = kFdSecondStep * nominal_of(p, i);
    const double rp = analytic_response(perturbed(p, i, +hi));
    const double rm = analytic_response(perturbed(p, i, -hi));
    m.set(i, i, (rp - 2.0 * r0 + rm) / (hi * hi));
    for (std::size_t j = i + 1; j < kNumParams; ++j) {
      const double hj = kFdSecondStep * nominal_of(p, j);
      const double rpp =
          analytic_response(perturbed(perturbed(p, i, +hi), j, +hj));
      const double rpm =
          analytic_response(perturbed(perturbed(p, i, +hi), j, -hj));
      const double rmp =
          analytic_response(perturbed(perturbed(p, i, -hi), j, +hj));
      const double rmm =
          analytic_response(perturbed(perturbed(p, i, -hi), j, -hj));
      m.set(i, j, (rpp - rpm - rmp + rmm) / (4.0 * hi * hj));
    }
  }
  return m;
}

CheckResult check_fd_first(const ResponseBundle& rb, double tol) {
  const auto fd = fd_first_vector(rb.params);
  double worst = 0.0;
  std::string where;
  auto scan = [&](const SensitivityVector& v) {
    for (std::size_t i = 0; i < kNumParams; ++i) {
      const double rel = std::abs(v[i] - fd[i]) / std::abs(fd[i]);
      if (rel > worst) {
        worst = rel;
        where = entry_label(i) + " (" + method_name(v.method) + ")";
      }
    }
  };
  scan(rb.first_quad);
  scan(rb.first_closed);
  return {"fd-first", worst <= tol, worst, tol, "worst " + where};
}

CheckResult check_fd_second(const ResponseBundle& rb, double tol) {
  const auto fd = fd_second_matrix(rb.params);
  const double floor_abs = kFloorFactor * fd.max_abs();
  double worst = 0.0;
  std::string where;
  auto scan = [&](const SensitivityMatrix& m) {
    for (std::size_t i = 0; i < kNumParams; ++i)
      for (std::size_t j = i; j < kNumParams; ++j) {
        const double allow =
            std::max(tol * std::abs(fd.at(i, j)), floor_abs);
        const double util = std::abs(m.at(i, j) - fd.at(i, j)) / allow;
        if (util > worst) {
          worst = util;
          where = entry_label(i, j) + " (" + method_name(m.method) + ")";
        }
      }
  };
  scan(rb.second_quad);
  scan(rb.second_closed);
  return {"fd-second", worst <= 1.0, worst * tol, tol,
          "mixed, floor " + fmt(floor_abs) + ", worst " + where};
}

CheckResult check_quad_vs_closed(const ResponseBundle& rb, double tol) {
  double worst = 0.0;
  std::string where;
  for (std::size_t i = 0; i < kNumParams; ++i) {
    const double ref = rb.first_closed[i];
    const double rel = std::abs(rb.first_quad[i] - ref) / std::abs(ref);
    if (rel / tol > worst) {
      worst = rel / tol;
      where = entry_label(i);
    }
  }
  const double floor_abs = kFloorFactor * rb.second_closed.max_abs();
  for (std::size_t i = 0; i < kNumParams; ++i)
    for (std::size_t j = i; j < kNumParams; ++j) {
      const double ref = rb.second_closed.at(i, j);
      const double allow = std::max(tol * std::abs(ref), floor_abs);
      const double util =
          std::abs(rb.second_quad.at(i, j) - ref) / allow;
      if (util > worst) {
        worst = util;
        where = entry_label(i, j);
      }
    }
  return {"quad-vs-closed", worst <= 1.0, worst * tol, tol,
          "mixed, floor " + fmt(floor_abs) + ", worst " + where};
}

namespace {

CheckResult symmetry_check(const char* name, const SymmetryReport& rep,
                           double tol, double floor_abs) {
  double worst = 0.0;
  std::string where;
  for (const auto& pr : rep.pairs) {
    const double mag = std::max(std::abs(pr.primary), std::abs(pr.alternate));
    const double allow = std::max(tol * mag, floor_abs);
    const double util =
        allow > 0.0 ? std::abs(pr.primary - pr.alternate) / allow : 0.0;
    if (util >= worst) {
      worst = util;
      where = pr.label;
    }
  }
  std::string det = "worst " + where;
  if (floor_abs > 0.0) det = "mixed, floor " + fmt(floor_abs) + ", " + det;
  return {name, worst <= 1.0, worst * tol, tol, det};
}

} // namespace

CheckResult check_symmetry_quad(const ResponseBundle& rb, double tol) {
  return symmetry_check("symmetry-quad", rb.sym_quad, tol,
                        kFloorFactor * rb.second_quad.max_abs());
}

CheckResult check_symmetry_closed(const ResponseBundle& rb, double tol) {
  return symmetry_check("symmetry-closed", rb.sym_closed, tol, 0.0);
}

CheckResult check_duality(const ResponseBundle& rb, std::size_t n_vectors,
                          std::uint64_t seed, double tol) {
  const ModelParameters& p = rb.params;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  double worst = 0.0;
  SolveLedger scratch;
  for (std::size_t v = 0; v < n_vectors; ++v) {
    std::array<double, kNumParams> h{};
    for (std::size_t i = 0; i < kNumParams; ++i)
      h[i] = 0.01 * nominal_of(p, i) * unit(rng);

    const ParameterVariation var{h[0], h[1], h[2], h[3]};
    const ScalarField h_phi =
        solve_forward_sensitivity(p, rb.grid, var, scratch, &rb.phi);
    const double fwd = total_first_variation(p, rb.grid, var, h_phi);

    double adj = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < kNumParams; ++i) {
      const double term = rb.first_quad[i] * h[i];
      adj += term;
      scale += std::abs(term);
    }
    worst = std::max(worst, std::abs(fwd - adj) / scale);
  }
  return {"duality", worst <= tol, worst, tol,
          std::to_string(n_vectors) + " random variations, scale sum|S_i h_i|"};
}

std::vector<std::size_t> convergence_ladder(std::size_t n_config) {
  const std::size_t base = std::min<std::size_t>(n_config, 1001);
  return {base, 2 * base - 1, 4 * base - 3, 8 * base - 7};
}

CheckResult check_grid_convergence(const ModelParameters& p,
                                   const std::vector<std::size_t>& node_counts,
                                   double min_order) {
  try {
    if (node_counts.size() < 2)
      throw std::invalid_argument("convergence needs at least two grids");

    std::vector<double> e_phi, e_psi, spacing;
    for (std::size_t n : node_counts) {
      const Grid g(n, p.half_thickness_a);
      SolveLedger scratch;
      const ScalarField phi =
          solve_bvp(p, g, SourceSpec::uniform(g, -p.source_q), scratch,
                    SolveTag::verification);
      const ScalarField psi =
          solve_bvp(p, g, SourceSpec::delta(p.detector_b, p.sigma_d), scratch,
                    SolveTag::verification);
      double ep = 0.0, es = 0.0;
      for (std::size_t i = 0; i < g.n_nodes; ++i) {
        ep = std::max(ep, std::abs(phi[i] - analytic_flux(p, g.x(i))));
        es = std::max(es, std::abs(psi[i] - closed_form_psi(p, g.x(i))));
      }
      e_phi.push_back(ep);
      e_psi.push_back(es);
      spacing.push_back(g.spacing());
    }

    double worst = std::numeric_limits<double>::infinity();
    std::ostringstream orders;
    for (std::size_t k = 0; k + 1 < node_counts.size(); ++k) {
      const double lr = std::log(spacing[k] / spacing[k + 1]);
      auto order = [&](const std::vector<double>& e) {
        if (e[k] == 0.0 && e[k + 1] == 0.0)
          return std::numeric_limits<double>::infinity();
        return std::log(e[k] / e[k + 1]) / lr;
      };
      const double op = order(e_phi), os = order(e_psi);
      worst = std::min({worst, op, os});
      orders << (k ? "; " : "") << "step " << k + 1 << ": phi " << fmt(op)
             << ", psi " << fmt(os);
    }
    return {"grid-convergence", worst >= min_order, worst, min_order,
            orders.str()};
  } catch (const std::exception& e) {
    return {"grid-convergence", false, 0.0, min_order,
            std::string("error: ") + e.what()};
  }
}

CheckResult check_mc_moments(const ResponseBundle& rb, const UncertaintyCase& c,
                             std::size_t n_samples, std::uint64_t seed) {
  const ResponseMoments ref = compute_moments(
      rb.response_numeric, rb.first_quad, rb.second_quad, c, rb.params);
  const SurrogateSample s =
      sample_surrogate_moments(rb.response_numeric, rb.first_quad,
                               rb.second_quad, c, rb.params, n_samples, seed);

  auto z = [](double sample, double exact, double se) {
    if (se > 0.0) return std::abs(sample - exact) / se;
    return sample == exact ? 0.0 : std::numeric_limits<double>::infinity();
  };
  const double zm = z(s.mean, ref.expected_value, s.se_mean);
  const double zv = z(s.variance, ref.variance, s.se_variance);
  const double zs = z(s.skewness, ref.skewness, s.se_skewness);
  const double worst = std::max({zm, zv, zs});
  return {"mc-moments", worst <= 3.0, worst, 3.0,
          c.name + ": |z| mean " + fmt(zm) + ", var " + fmt(zv) + ", skew " +
              fmt(zs)};
}

std::vector<CheckResult> run_all_checks(const ModelParameters& base,
                                        const std::vector<double>& detectors,
                                        std::size_t n_nodes,
                                        const VerifyTolerances& tol,
                                        std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (double b : detectors) {
    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "[b=%g]", b);
    auto tag = [&](CheckResult r) {
      r.name += suffix;
      out.push_back(std::move(r));
    };

    const ModelParameters p = base.with_detector(b);
    try {
      const Grid grid(n_nodes, base.half_thickness_a);
      const ResponseBundle rb = compute_response_bundle(p, grid);
      tag(check_fd_first(rb, tol.fd_first));
      tag(check_fd_second(rb, tol.fd_second));
      tag(check_quad_vs_closed(rb, tol.quad_vs_closed));
      tag(check_symmetry_quad(rb, tol.symmetry_quad));
      tag(check_symmetry_closed(rb, tol.symmetry_closed));
      tag(check_duality(rb, kDualityVectors, seed, tol.duality));
    } catch (const std::exception& e) {
      tag({"pipeline", false, 0.0, 0.0, std::string("error: ") + e.what()});
    }
    tag(check_grid_convergence(p, convergence_ladder(n_nodes),
                               tol.convergence_order));
  }
  return out;
}

} // namespace slabsens
