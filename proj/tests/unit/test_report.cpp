#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "slabsens/report.hpp"

using namespace slabsens;

namespace {

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct Fixture {
  RunConfig cfg;
  std::vector<ResponseBundle> bundles;

  Fixture() {
    cfg.detectors = {10.0, 49.5};
    cfg.n_nodes = 401; // spacing 0.25 keeps both detectors on nodes
    for (double b : cfg.detectors) {
      const ModelParameters p = cfg.base.with_detector(b);
      bundles.push_back(compute_response_bundle(p, Grid(cfg.n_nodes, p.half_thickness_a)));
    }
  }
};

std::vector<CheckResult> fake_checks() {
  return {{"alpha[b=10]", true, 1e-6, 1e-4, "ok"},
          {"beta", false, 2.0, 1.0, "exceeded"}};
}

} // namespace

TEST_CASE("detector labels are compact") {
  CHECK(detector_label(10.0) == "10");
  CHECK(detector_label(-49.5) == "-49.5");
  CHECK(detector_label(40.0) == "40");
  CHECK(detector_label(0.0) == "0");
}

TEST_CASE("case report derives its summary columns from the moments") {
  const Fixture f;
  const auto cases = UncertaintyCase::standard_cases();
  const CaseReport cr = build_case_report(cases[2], f.bundles);
  REQUIRE(cr.moments.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto m = compute_moments(f.bundles[k].response_numeric,
                                   f.bundles[k].first_quad,
                                   f.bundles[k].second_quad, cases[2],
                                   f.bundles[k].params);
    CHECK(cr.moments[k].variance == m.variance);
    CHECK(cr.rel_std_dev[k] ==
          std::sqrt(m.variance) / f.bundles[k].response_numeric);
    CHECK(cr.covariance[k][k] == m.variance);
    CHECK(cr.correlation[k][k] == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(cr.covariance[0][1] == doctest::Approx(cr.covariance[1][0]).epsilon(1e-15));
  CHECK(std::abs(cr.correlation[0][1]) <= 1.0);
}

TEST_CASE("a zero-spread case produces null correlations, not NaN text") {
  const Fixture f;
  const UncertaintyCase zero{"zero", {0.0, 0.0, 0.0, 0.0}};
  const CaseReport cr = build_case_report(zero, f.bundles);
  CHECK(std::isnan(cr.correlation[0][1]));
  CHECK(cr.moments[0].variance == 0.0);

  const std::string doc = results_json(f.cfg, f.bundles, {cr}, {});
  const auto j = nlohmann::json::parse(doc);
  CHECK(j["cases"][0]["correlation"][0][1].is_null());
  CHECK(j["cases"][0]["moments"][0]["variance"].get<double>() == 0.0);
}

TEST_CASE("results JSON parses and keeps full double precision") {
  const Fixture f;
  const auto cases = UncertaintyCase::standard_cases();
  std::vector<CaseReport> crs;
  for (const auto& c : cases) crs.push_back(build_case_report(c, f.bundles));
  const std::string doc = results_json(f.cfg, f.bundles, crs, fake_checks());
  const auto j = nlohmann::json::parse(doc);

  CHECK(j["parameters"]["sigma_a"].get<double>() == f.cfg.base.sigma_a);
  CHECK(j["grid"]["n_nodes"].get<std::size_t>() == 401);
  CHECK(j["seed"].get<std::uint64_t>() == 20260822);
  REQUIRE(j["responses"].size() == 2);
  REQUIRE(j["cases"].size() == 5);

  const auto& r0 = j["responses"][0];
  CHECK(r0["detector_b"].get<double>() == 10.0);
  // 17 significant digits round-trip doubles exactly
  CHECK(r0["response_numeric"].get<double>() == f.bundles[0].response_numeric);
  CHECK(r0["first_order"]["quadrature"][1].get<double>() ==
        f.bundles[0].first_quad[1]);
  CHECK(r0["second_order"]["quadrature"][0][1].get<double>() ==
        f.bundles[0].second_quad.at(0, 1));
  CHECK(r0["second_order"]["closed_form"][2][2].get<double>() == 0.0);
  CHECK(r0["symmetry"]["quadrature"].size() == 5);
  CHECK(r0["symmetry"]["quadrature"][0]["label"].get<std::string>() ==
        "S12/S21");
  CHECK(r0["solves"]["adjoint_total"].get<int>() == 4);
  CHECK(r0["solves"]["forward"].get<int>() == 1);

  CHECK(j["cases"][4]["moments"][1]["rel_std_dev"].get<double>() ==
        crs[4].rel_std_dev[1]);
  CHECK(j["cases"][2]["covariance"][0][1].get<double>() ==
        crs[2].covariance[0][1]);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"].get<std::string>() == "alpha[b=10]");
  CHECK(j["checks"][1]["passed"].get<bool>() == false);

  const auto jc = nlohmann::json::parse(checks_json(fake_checks()));
  CHECK(jc["checks"][1]["measured"].get<double>() == 2.0);
}

TEST_CASE("tables carry units in their headers") {
  const Fixture f;
  const auto& rb = f.bundles[0];

  const std::string t1 = first_order_tsv(rb);
  CHECK(t1.find("# first-order sensitivities, detector b = 10 cm") !=
        std::string::npos);
  CHECK(t1.find("S1_sigma_a") != std::string::npos);
  CHECK(t1.find("S4_sigma_d") != std::string::npos);
  CHECK(t1.find("(n/(cm^3 s))/(cm^-1)") != std::string::npos);
  CHECK(t1.find("response_R") != std::string::npos);
  CHECK(lines(t1) == 7); // comment, header, response, four sensitivities

  const std::string t2 = second_order_tsv(rb);
  CHECK(t2.find("S11") != std::string::npos);
  CHECK(t2.find("S34") != std::string::npos);
  CHECK(t2.find("(n/(cm^3 s))/((cm)(cm))") != std::string::npos);
  CHECK(lines(t2) == 12); // comment, header, ten upper-triangle entries

  const std::string ts = symmetry_tsv(rb);
  CHECK(ts.find("S12/S21") != std::string::npos);
  CHECK(ts.find("S24/S42") != std::string::npos);
  CHECK(lines(ts) == 7);

  const std::string tc = solve_counts_tsv(rb);
  CHECK(tc.find("adjoint solves per response: 4") != std::string::npos);
  CHECK(tc.find("first-adjoint\t1") != std::string::npos);
  CHECK(tc.find("verification\t0") != std::string::npos);
}

TEST_CASE("moments and correlation tables") {
  const Fixture f;
  const auto cases = UncertaintyCase::standard_cases();
  const CaseReport cr = build_case_report(cases[2], f.bundles);

  const std::string tm = moments_tsv(cr, f.bundles);
  CHECK(tm.find(cr.c.name) != std::string::npos);
  CHECK(tm.find("sigma_a=0.15") != std::string::npos);
  CHECK(tm.find("skewness [dimensionless]") != std::string::npos);
  CHECK(tm.find("[(n/(cm^3 s))^2]") != std::string::npos);
  CHECK(lines(tm) == 4);

  const std::string tr = correlation_tsv(cr, f.cfg.detectors);
  CHECK(tr.find("b [cm]\t10\t49.5") != std::string::npos);
  CHECK(lines(tr) == 4);

  const std::string tk = checks_tsv(fake_checks());
  CHECK(tk.find("alpha[b=10]\tPASS") != std::string::npos);
  CHECK(tk.find("beta\tFAIL") != std::string::npos);
  CHECK(tk.find("exceeded") != std::string::npos);
}

TEST_CASE("emitters are deterministic") {
  const Fixture f;
  const auto cases = UncertaintyCase::standard_cases();
  std::vector<CaseReport> crs;
  for (const auto& c : cases) crs.push_back(build_case_report(c, f.bundles));
  CHECK(first_order_tsv(f.bundles[0]) == first_order_tsv(f.bundles[0]));
  CHECK(results_json(f.cfg, f.bundles, crs, fake_checks()) ==
        results_json(f.cfg, f.bundles, crs, fake_checks()));
}
