#pragma once

#include <string>
#include <vector>

#include "slabsens/config.hpp"
#include "slabsens/pipeline.hpp"
#include "slabsens/uncertainty.hpp"
#include "slabsens/verification.hpp"

namespace slabsens {

/// Moments of every configured detector response under one uncertainty case,
/// plus the cross-response covariance/correlation matrices. Sensitivities
/// feeding these are the quadrature (production) path; correlation entries
/// are null/NaN only if a response has zero variance under the case.
struct CaseReport {
  UncertaintyCase c;
  std::vector<ResponseMoments> moments;             // per detector
  std::vector<double> rel_std_dev;                  // sqrt(var)/R0
  std::vector<std::vector<double>> covariance;
  std::vector<std::vector<double>> correlation;
};

CaseReport build_case_report(const UncertaintyCase& c,
                             const std::vector<ResponseBundle>& bundles);

// TSV emitters, 4 significant digits, units in every column header (mixed
// per-row units are carried by a dedicated `units` column).
std::string first_order_tsv(const ResponseBundle& rb);
std::string second_order_tsv(const ResponseBundle& rb);
std::string symmetry_tsv(const ResponseBundle& rb);
std::string solve_counts_tsv(const ResponseBundle& rb);
std::string moments_tsv(const CaseReport& cr,
                        const std::vector<ResponseBundle>& bundles);
std::string correlation_tsv(const CaseReport& cr,
                            const std::vector<double>& detectors);
std::string checks_tsv(const std::vector<CheckResult>& checks);

/// Single JSON document with parameters, per-detector sensitivities (both
/// routes), symmetry pairs, solve counts, per-case moments, and check
/// records; every floating-point number at 17 significant digits.
std::string results_json(const RunConfig& cfg,
                         const std::vector<ResponseBundle>& bundles,
                         const std::vector<CaseReport>& case_reports,
                         const std::vector<CheckResult>& checks);

std::string checks_json(const std::vector<CheckResult>& checks);

/// "10" for 10.0, "-49.5" for -49.5; used in file names and headers.
std::string detector_label(double b);

} // namespace slabsens
