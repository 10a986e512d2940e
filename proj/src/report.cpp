#include "slabsens/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace slabsens {
namespace {

std::string g4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string g17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no NaN/Inf literals; non-finite values become null.
std::string json_num(double v) {
  if (!std::isfinite(v)) return "null";
  return g17(v);
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

const std::array<const char*, kNumParams> kParamUnits{"cm^-1", "cm",
                                                     "n/(cm^3 s)", "cm^-1"};
constexpr const char* kResponseUnit = "n/(cm^3 s)";

std::string first_unit(std::size_t i) {
  return std::string("(") + kResponseUnit + ")/(" + kParamUnits[i] + ")";
}

std::string second_unit(std::size_t i, std::size_t j) {
  return std::string("(") + kResponseUnit + ")/((" + kParamUnits[i] + ")(" +
         kParamUnits[j] + "))";
}

// The five dual-route pairs map onto these matrix slots in order.
constexpr std::array<std::pair<std::size_t, std::size_t>, 5> kPairSlots{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}};

} // namespace

std::string detector_label(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", b);
  return buf;
}

CaseReport build_case_report(const UncertaintyCase& c,
                             const std::vector<ResponseBundle>& bundles) {
  CaseReport cr{c, {}, {}, {}, {}};
  const std::size_t n = bundles.size();
  for (const auto& rb : bundles) {
    cr.moments.push_back(compute_moments(rb.response_numeric, rb.first_quad,
                                         rb.second_quad, c, rb.params));
    cr.rel_std_dev.push_back(std::sqrt(cr.moments.back().variance) /
                             rb.response_numeric);
  }
  cr.covariance.assign(n, std::vector<double>(n, 0.0));
  cr.correlation.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const double cov = covariance(bundles[k].first_quad,
                                    bundles[k].second_quad,
                                    bundles[l].first_quad,
                                    bundles[l].second_quad, c,
                                    bundles[k].params);
      cr.covariance[k][l] = cov;
      const double vk = cr.moments[k].variance, vl = cr.moments[l].variance;
      cr.correlation[k][l] = (vk > 0.0 && vl > 0.0)
                                 ? correlation(cov, vk, vl)
                                 : std::numeric_limits<double>::quiet_NaN();
    }
  return cr;
}

std::string first_order_tsv(const ResponseBundle& rb) {
  std::ostringstream o;
  o << "# first-order sensitivities, detector b = "
    << detector_label(rb.params.detector_b) << " cm\n";
  o << "quantity\tunits\tquadrature\tclosed_form\trelative_quadrature "
       "[dimensionless]\n";
  o << "response_R\t" << kResponseUnit << "\t" << g4(rb.response_numeric)
    << "\t" << g4(rb.response_analytic) << "\t\n";
  const SensitivityVector rel =
      to_relative(rb.first_quad, rb.params, rb.response_numeric);
  for (std::size_t i = 0; i < kNumParams; ++i)
    o << "S" << i + 1 << "_" << kParamNames[i] << "\t" << first_unit(i) << "\t"
      << g4(rb.first_quad[i]) << "\t" << g4(rb.first_closed[i]) << "\t"
      << g4(rel[i]) << "\n";
  return o.str();
}

std::string second_order_tsv(const ResponseBundle& rb) {
  std::ostringstream o;
  o << "# second-order sensitivities, detector b = "
    << detector_label(rb.params.detector_b) << " cm\n";
  o << "pair\tunits\tquadrature\tclosed_form\trelative_quadrature "
       "[dimensionless]\n";
  const SensitivityMatrix rel =
      to_relative(rb.second_quad, rb.params, rb.response_numeric);
  for (std::size_t i = 0; i < kNumParams; ++i)
    for (std::size_t j = i; j < kNumParams; ++j)
      o << "S" << i + 1 << j + 1 << "\t" << second_unit(i, j) << "\t"
        << g4(rb.second_quad.at(i, j)) << "\t" << g4(rb.second_closed.at(i, j))
        << "\t" << g4(rel.at(i, j)) << "\n";
  return o.str();
}

std::string symmetry_tsv(const ResponseBundle& rb) {
  std::ostringstream o;
  o << "# dual-route mixed partials, detector b = "
    << detector_label(rb.params.detector_b) << " cm\n";
  o << "pair\tunits\tquad_primary\tquad_alternate\tclosed_primary\t"
       "closed_alternate\n";
  for (std::size_t k = 0; k < rb.sym_quad.pairs.size(); ++k) {
    const auto& q = rb.sym_quad.pairs[k];
    const auto& c = rb.sym_closed.pairs[k];
    const auto [i, j] = kPairSlots[k];
    o << q.label << "\t" << second_unit(i, j) << "\t" << g4(q.primary) << "\t"
      << g4(q.alternate) << "\t" << g4(c.primary) << "\t" << g4(c.alternate)
      << "\n";
  }
  return o.str();
}

std::string solve_counts_tsv(const ResponseBundle& rb) {
  std::ostringstream o;
  o << "# solver ledger, detector b = "
    << detector_label(rb.params.detector_b) << " cm\n";
  o << "tag\tsolves [count]\n";
  for (SolveTag t : {SolveTag::forward, SolveTag::first_adjoint,
                     SolveTag::second_adjoint, SolveTag::verification})
    o << to_string(t) << "\t" << rb.ledger.count(t) << "\n";
  o << "adjoint_total\t" << rb.ledger.adjoint_total() << "\n";
  o << "# adjoint solves per response: " << rb.ledger.adjoint_total() << "\n";
  return o.str();
}

std::string moments_tsv(const CaseReport& cr,
                        const std::vector<ResponseBundle>& bundles) {
  std::ostringstream o;
  o << "# uncertainty " << cr.c.name << ": relative sigmas";
  for (std::size_t i = 0; i < kNumParams; ++i)
    o << " " << kParamNames[i] << "=" << g4(cr.c.sigma_rel[i]);
  o << "\n";
  o << "detector_b [cm]\texpected_value [" << kResponseUnit
    << "]\tvariance [(" << kResponseUnit
    << ")^2]\trel_std_dev [dimensionless]\tthird_central_moment [("
    << kResponseUnit << ")^3]\tskewness [dimensionless]\n";
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    const auto& m = cr.moments[k];
    o << detector_label(bundles[k].params.detector_b) << "\t"
      << g4(m.expected_value) << "\t" << g4(m.variance) << "\t"
      << g4(cr.rel_std_dev[k]) << "\t" << g4(m.third_central_moment) << "\t"
      << g4(m.skewness) << "\n";
  }
  return o.str();
}

std::string correlation_tsv(const CaseReport& cr,
                            const std::vector<double>& detectors) {
  std::ostringstream o;
  o << "# response correlation matrix, " << cr.c.name
    << " [dimensionless]\n";
  o << "b [cm]";
  for (double b : detectors) o << "\t" << detector_label(b);
  o << "\n";
  for (std::size_t k = 0; k < detectors.size(); ++k) {
    o << detector_label(detectors[k]);
    for (std::size_t l = 0; l < detectors.size(); ++l)
      o << "\t" << g4(cr.correlation[k][l]);
    o << "\n";
  }
  return o.str();
}

std::string checks_tsv(const std::vector<CheckResult>& checks) {
  std::ostringstream o;
  o << "check\tstatus\tmeasured [dimensionless]\ttolerance "
       "[dimensionless]\tdetail\n";
  for (const auto& c : checks)
    o << c.name << "\t" << (c.passed ? "PASS" : "FAIL") << "\t"
      << g4(c.measured) << "\t" << g4(c.tolerance) << "\t" << c.detail << "\n";
  return o.str();
}

namespace {

void append_array4(std::ostringstream& o, const SensitivityVector& v) {
  o << "[";
  for (std::size_t i = 0; i < kNumParams; ++i)
    o << (i ? ", " : "") << json_num(v[i]);
  o << "]";
}

void append_matrix(std::ostringstream& o, const SensitivityMatrix& m,
                   const char* indent) {
  o << "[";
  for (std::size_t i = 0; i < kNumParams; ++i) {
    o << (i ? "," : "") << "\n" << indent << "  [";
    for (std::size_t j = 0; j < kNumParams; ++j)
      o << (j ? ", " : "") << json_num(m.at(i, j));
    o << "]";
  }
  o << "\n" << indent << "]";
}

void append_sym(std::ostringstream& o, const SymmetryReport& rep,
                const char* indent) {
  o << "[";
  bool first = true;
  for (const auto& pr : rep.pairs) {
    o << (first ? "" : ",") << "\n"
      << indent << "  {\"label\": " << json_str(pr.label)
      << ", \"primary\": " << json_num(pr.primary)
      << ", \"alternate\": " << json_num(pr.alternate) << "}";
    first = false;
  }
  o << "\n" << indent << "]";
}

void append_checks(std::ostringstream& o, const std::vector<CheckResult>& cs,
                   const char* indent) {
  o << "[";
  bool first = true;
  for (const auto& c : cs) {
    o << (first ? "" : ",") << "\n"
      << indent << "  {\"name\": " << json_str(c.name)
      << ", \"passed\": " << (c.passed ? "true" : "false")
      << ", \"measured\": " << json_num(c.measured)
      << ", \"tolerance\": " << json_num(c.tolerance)
      << ", \"detail\": " << json_str(c.detail) << "}";
    first = false;
  }
  o << "\n" << indent << "]";
}

} // namespace

std::string results_json(const RunConfig& cfg,
                         const std::vector<ResponseBundle>& bundles,
                         const std::vector<CaseReport>& case_reports,
                         const std::vector<CheckResult>& checks) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"parameters\": {";
  o << "\"sigma_a\": " << json_num(cfg.base.sigma_a);
  o << ", \"diff_coeff\": " << json_num(cfg.base.diff_coeff);
  o << ", \"source_q\": " << json_num(cfg.base.source_q);
  o << ", \"sigma_d\": " << json_num(cfg.base.sigma_d);
  o << ", \"half_thickness_a\": " << json_num(cfg.base.half_thickness_a);
  o << "},\n";
  o << "  \"grid\": {\"n_nodes\": " << cfg.n_nodes << "},\n";
  o << "  \"seed\": " << cfg.seed << ",\n";

  o << "  \"responses\": [";
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    const auto& rb = bundles[k];
    o << (k ? "," : "") << "\n    {\n";
    o << "      \"detector_b\": " << json_num(rb.params.detector_b) << ",\n";
    o << "      \"response_numeric\": " << json_num(rb.response_numeric)
      << ",\n";
    o << "      \"response_analytic\": " << json_num(rb.response_analytic)
      << ",\n";
    o << "      \"first_order\": {\"quadrature\": ";
    append_array4(o, rb.first_quad);
    o << ", \"closed_form\": ";
    append_array4(o, rb.first_closed);
    o << ", \"relative_quadrature\": ";
    append_array4(o, to_relative(rb.first_quad, rb.params,
                                 rb.response_numeric));
    o << "},\n";
    o << "      \"second_order\": {\n        \"quadrature\": ";
    append_matrix(o, rb.second_quad, "        ");
    o << ",\n        \"closed_form\": ";
    append_matrix(o, rb.second_closed, "        ");
    o << ",\n        \"relative_quadrature\": ";
    append_matrix(o, to_relative(rb.second_quad, rb.params,
                                 rb.response_numeric),
                  "        ");
    o << "\n      },\n";
    o << "      \"symmetry\": {\"quadrature\": ";
    append_sym(o, rb.sym_quad, "      ");
    o << ", \"closed_form\": ";
    append_sym(o, rb.sym_closed, "      ");
    o << "},\n";
    o << "      \"solves\": {";
    for (SolveTag t : {SolveTag::forward, SolveTag::first_adjoint,
                       SolveTag::second_adjoint, SolveTag::verification})
      o << "\"" << to_string(t) << "\": " << rb.ledger.count(t) << ", ";
    o << "\"adjoint_total\": " << rb.ledger.adjoint_total() << "}\n";
    o << "    }";
  }
  o << "\n  ],\n";

  o << "  \"cases\": [";
  for (std::size_t c = 0; c < case_reports.size(); ++c) {
    const auto& cr = case_reports[c];
    o << (c ? "," : "") << "\n    {\n";
    o << "      \"name\": " << json_str(cr.c.name) << ",\n";
    o << "      \"sigma_rel\": [";
    for (std::size_t i = 0; i < kNumParams; ++i)
      o << (i ? ", " : "") << json_num(cr.c.sigma_rel[i]);
    o << "],\n";
    o << "      \"moments\": [";
    for (std::size_t k = 0; k < cr.moments.size(); ++k) {
      const auto& m = cr.moments[k];
      o << (k ? "," : "") << "\n        {\"detector_b\": "
        << json_num(bundles[k].params.detector_b)
        << ", \"expected_value\": " << json_num(m.expected_value)
        << ", \"variance\": " << json_num(m.variance)
        << ", \"rel_std_dev\": " << json_num(cr.rel_std_dev[k])
        << ", \"third_central_moment\": " << json_num(m.third_central_moment)
        << ", \"skewness\": " << json_num(m.skewness) << "}";
    }
    o << "\n      ],\n";
    o << "      \"covariance\": [";
    for (std::size_t k = 0; k < cr.covariance.size(); ++k) {
      o << (k ? "," : "") << "\n        [";
      for (std::size_t l = 0; l < cr.covariance[k].size(); ++l)
        o << (l ? ", " : "") << json_num(cr.covariance[k][l]);
      o << "]";
    }
    o << "\n      ],\n";
    o << "      \"correlation\": [";
    for (std::size_t k = 0; k < cr.correlation.size(); ++k) {
      o << (k ? "," : "") << "\n        [";
      for (std::size_t l = 0; l < cr.correlation[k].size(); ++l)
        o << (l ? ", " : "") << json_num(cr.correlation[k][l]);
      o << "]";
    }
    o << "\n      ]\n    }";
  }
  o << "\n  ],\n";

  o << "  \"checks\": ";
  append_checks(o, checks, "  ");
  o << "\n}\n";
  return o.str();
}

std::string checks_json(const std::vector<CheckResult>& checks) {
  std::ostringstream o;
  o << "{\n  \"checks\": ";
  append_checks(o, checks, "  ");
  o << "\n}\n";
  return o.str();
}

} // namespace slabsens
