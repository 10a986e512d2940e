#include <cmath>

#include "doctest.h"
#include "slabsens/verification.hpp"

using namespace slabsens;

namespace {

ResponseBundle bundle_at(double b, std::size_t n = 4001) {
  const ModelParameters p = ModelParameters::nominal(b);
  return compute_response_bundle(p, Grid(n, p.half_thickness_a));
}

} // namespace

TEST_CASE("finite-difference oracle agrees with the closed forms") {
  const ModelParameters p = ModelParameters::nominal(10.0);
  const auto fd = fd_first_vector(p);
  const SensitivityVector v = first_order_closed_form(p);
  for (std::size_t i = 0; i < kNumParams; ++i)
    // 1e-5 rather than tighter: the S2 difference quotient sits ~230 ulp of
    // R above the cancellation floor at this step size
    CHECK(fd[i] == doctest::Approx(v[i]).epsilon(1e-5));

  const SensitivityMatrix fd2 = fd_second_matrix(p);
  const SensitivityMatrix m = second_order_closed_form(p);
  const double floor = 1e-6 * m.max_abs();
  for (std::size_t i = 0; i < kNumParams; ++i)
    for (std::size_t j = i; j < kNumParams; ++j)
      CHECK(within_mixed_tolerance(fd2.at(i, j), m.at(i, j), 1e-3, floor));
}

TEST_CASE("the full check battery passes on the default grid") {
  const ResponseBundle rb = bundle_at(10.0);
  const VerifyTolerances tol;
  for (const CheckResult& r :
       {check_fd_first(rb, tol.fd_first), check_fd_second(rb, tol.fd_second),
        check_quad_vs_closed(rb, tol.quad_vs_closed),
        check_symmetry_quad(rb, tol.symmetry_quad),
        check_symmetry_closed(rb, tol.symmetry_closed),
        check_duality(rb, 20, 123, tol.duality)}) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
    CHECK(r.measured <= r.tolerance);
    CHECK_FALSE(r.detail.empty());
  }
}

TEST_CASE("a tightened tolerance fails in a controlled way") {
  const ResponseBundle rb = bundle_at(10.0);
  const CheckResult r = check_quad_vs_closed(rb, 1e-12);
  CHECK_FALSE(r.passed);
  // the measured discrepancy is what it is; only the allowance moved
  CHECK(r.measured > r.tolerance);
  CHECK(r.tolerance == 1e-12);
}

TEST_CASE("convergence ladder construction") {
  CHECK(convergence_ladder(4001) ==
        std::vector<std::size_t>{1001, 2001, 4001, 8001});
  CHECK(convergence_ladder(8001) ==
        std::vector<std::size_t>{1001, 2001, 4001, 8001});
  CHECK(convergence_ladder(1001) ==
        std::vector<std::size_t>{1001, 2001, 4001, 8001});
  CHECK(convergence_ladder(3) == std::vector<std::size_t>{3, 5, 9, 17});
  CHECK(convergence_ladder(101) == std::vector<std::size_t>{101, 201, 401, 801});
}

TEST_CASE("grid refinement shows second order against the closed forms") {
  const ModelParameters p = ModelParameters::nominal(10.0);
  const CheckResult r = check_grid_convergence(p, {1001, 2001, 4001}, 1.9);
  INFO(r.detail);
  CHECK(r.passed);
  CHECK(r.measured >= 1.9);
}

TEST_CASE("a degenerate ladder reports an error instead of throwing") {
  const ModelParameters p = ModelParameters::nominal(10.0);
  // 3-node spacing is 50: the detector cannot land on a node
  const CheckResult r = check_grid_convergence(p, {3, 5, 9, 17}, 1.9);
  CHECK_FALSE(r.passed);
  CHECK(r.detail.find("error") != std::string::npos);
}

TEST_CASE("monte carlo check against the sampled surrogate") {
  const ResponseBundle rb = bundle_at(10.0);
  const auto cases = UncertaintyCase::standard_cases();
  const CheckResult all = check_mc_moments(rb, cases[4], 100000, 20260822);
  INFO(all.detail);
  CHECK(all.passed);
  const CheckResult lin = check_mc_moments(rb, cases[1], 100000, 20260822);
  INFO(lin.detail);
  CHECK(lin.passed);
}

TEST_CASE("the verify suite runs per detector and never throws") {
  CHECK(kDualityVectors == 100);
  const ModelParameters base = ModelParameters::nominal(0.0);
  const VerifyTolerances tol;

  const auto ok = run_all_checks(base, {10.0}, 4001, tol, 20260822);
  REQUIRE(ok.size() == 7);
  for (const auto& r : ok) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
    CHECK(r.name.find("[b=10]") != std::string::npos);
  }

  // a 3-node grid cannot represent the detector: the pipeline contributes a
  // single failed record and the convergence ladder fails on its own terms
  const auto degenerate = run_all_checks(base, {10.0}, 3, tol, 20260822);
  REQUIRE(degenerate.size() == 2);
  CHECK(degenerate[0].name == "pipeline[b=10]");
  CHECK_FALSE(degenerate[0].passed);
  CHECK(degenerate[1].name == "grid-convergence[b=10]");
  CHECK_FALSE(degenerate[1].passed);
}
