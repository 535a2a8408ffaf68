#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hfee/regress.hpp"
#include "hfee/subjects.hpp"

namespace hfee {

enum class Subset { All, LowIntensity };

inline constexpr std::array<Subset, 2> kAllSubsets = {Subset::All, Subset::LowIntensity};

std::string_view subset_name(Subset subset);  // "all", "low"
std::optional<Subset> parse_subset(std::string_view name);

struct CvConfig {
  Scenario scenario = Scenario::Hr;
  Subset subset = Subset::All;
};

/// Box-plot summary: quartiles by linear interpolation of order
/// statistics, whiskers at the most extreme values within 1.5 IQR of the
/// quartiles, everything beyond listed as outliers.
struct BoxStats {
  double median = 0.0;
  double mean = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending

  friend bool operator==(const BoxStats&, const BoxStats&) = default;
};

/// Per-fold detail kept for tests and diagnostics; the JSON report
/// carries only config, per-subject R^2, box stats and failures.
struct FoldResult {
  std::string subject_id;
  double r2 = 0.0;
  std::size_t rows_evaluated = 0;
  ModelFit fit;             // fitted on the other subjects only
  PcaProjector projector;   // fitted on the other subjects only
};

struct FoldFailure {
  std::string subject_id;
  std::string error;
};

struct CvReport {
  CvConfig config;
  std::map<std::string, double> per_subject_r2;
  BoxStats box;
  std::vector<FoldResult> folds;          // subject-id order
  std::vector<FoldFailure> failed_folds;  // subject-id order
};

/// R^2 = 1 - mean((y - y_hat)^2) / mean((y - mean(y))^2).
/// Throws ConstantTruth when the denominator is zero and Error on
/// empty or mismatched lengths.
double r_squared(std::span<const double> y, std::span<const double> y_hat);

/// Throws Error on empty input.
BoxStats box_stats(std::vector<double> values);

/// Leave-one-subject-out cross-validation. Per fold: PCA projector and
/// OLS fit see training subjects only; the held-out subject is scored by
/// R^2 against its own mean EE over the evaluated (subset-filtered)
/// rows. Fold-level failures (RankDeficient, TooFewRows, SubsetEmpty)
/// are recorded and excluded from the box stats instead of aborting the
/// run. Throws TooFewSubjects (< 3) and MissingProjection when a table
/// has no matching profile.
CvReport run_loocv(const std::vector<FeatureTable>& tables,
                   const std::vector<SubjectProfile>& profiles, const CvConfig& config);

/// Rows surviving the subset filter (All keeps everything).
FeatureTable filter_subset(const FeatureTable& table, Subset subset);

/// Report JSON: {config, per_subject_r2, box, failed_folds}.
std::string report_to_json(const CvReport& report);

/// Parsed back without fold detail (folds left empty).
CvReport report_from_json(const std::string& text);

}  // namespace hfee
