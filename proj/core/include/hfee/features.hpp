#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfee/recording.hpp"

namespace hfee {

/// One 30 s bin of predictors plus the ground-truth EE for that bin.
/// The med_short features are medians over [bin_end-90, bin_end-30),
/// the med_long ones over [bin_end-420, bin_end-120), both on the raw
/// 20 Hz samples.
struct FeatureRow {
  double bin_end_s = 0.0;
  double hr_bpm = 0.0;
  double hf = 0.0;
  double hf_med_short = 0.0;
  double hf_med_long = 0.0;
  double temp = 0.0;
  double temp_med_short = 0.0;
  double temp_med_long = 0.0;
  double ee_w = 0.0;
  ActivityLabel activity = ActivityLabel::Sitting;

  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

struct FeatureTable {
  std::string subject_id;
  std::vector<FeatureRow> rows;  // ordered by bin_end_s, unique

  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;
};

struct FeatureDiagnostics {
  std::size_t bins_considered = 0;
  std::size_t bins_dropped = 0;
};

inline constexpr double kBinSeconds = 30.0;
inline constexpr double kShortLagStart = 30.0;   // window [end-90, end-30)
inline constexpr double kShortLagEnd = 90.0;
inline constexpr double kLongLagStart = 120.0;   // window [end-420, end-120)
inline constexpr double kLongLagEnd = 420.0;

/// HR over [bin_end-30, bin_end): 60000 / mean(rr ms). Nullopt if the
/// bin holds no beats.
std::optional<double> bin_heart_rate(std::span<const Sample> rr_intervals, double bin_end);

/// Arithmetic mean of sample values in [bin_end-30, bin_end).
std::optional<double> bin_average(std::span<const Sample> samples, double bin_end);

/// Median of sample values with t in [bin_end-lag_end, bin_end-lag_start).
/// Even counts average the two middle values.
std::optional<double> window_median(std::span<const Sample> samples, double bin_end,
                                    double lag_start, double lag_end);

/// One FeatureRow per 30 s bin that has full long-window history, at
/// least one sample of every stream in the bin, and exactly one covering
/// activity. Bins failing any condition are dropped (counted in `diag`).
/// Throws NoUsableRows when nothing survives.
FeatureTable build_feature_table(const SensorRecording& rec,
                                 FeatureDiagnostics* diag = nullptr);

/// Canonical dump, header:
/// bin_end_s,hr_bpm,hf,hf_med_short,hf_med_long,temp,temp_med_short,temp_med_long,ee_w,activity
void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path);

}  // namespace hfee
