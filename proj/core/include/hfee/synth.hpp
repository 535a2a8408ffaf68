#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hfee/recording.hpp"
#include "hfee/subjects.hpp"

namespace hfee {

/// Per-signal noise levels. Heart-rate wander is multiplied by
/// `low_intensity_hr_multiplier` during sitting and standing bouts,
/// where heart rate genuinely carries less information about EE.
struct NoiseProfile {
  double hr_sd_bpm = 2.0;
  double hf_sd_w_m2 = 1.5;
  double temp_sd_c = 0.05;
  double ee_sd_w = 10.0;
  double low_intensity_hr_multiplier = 3.0;  // >= 1

  friend bool operator==(const NoiseProfile&, const NoiseProfile&) = default;
};

struct CohortSpec {
  int n_subjects = 15;
  std::uint64_t seed = 42;
  NoiseProfile noise;
  double thermal_lag_s = 90.0;  // first-order HF lag constant

  friend bool operator==(const CohortSpec&, const CohortSpec&) = default;
};

struct BoutEe {
  ActivityInterval interval;
  double ee_w = 0.0;  // constant within the bout
};

/// What the generator actually produced, recoverable from the seed.
struct GroundTruth {
  std::vector<Sample> ee_1hz;  // true EE sampled at 1 Hz
  std::vector<BoutEe> bouts;
};

struct SubjectData {
  SensorRecording recording;
  SubjectProfile profile;
  GroundTruth truth;
};

/// Random order of the five activity classes, one bout each, durations
/// uniform in [5, 45] min (whole seconds), resampled until the total
/// lands in [96, 163] min. Same (seed, index) always yields the same
/// schedule.
std::vector<ActivityInterval> generate_protocol(std::uint64_t seed, int subject_index);

/// Full synthetic subject: profile, 20 Hz HF/T streams, R-R intervals,
/// breath-by-breath calorimetry and the generative ground truth. All
/// maps are linear or first-order lags, so with zero noise the OLS model
/// class contains the truth exactly. Throws Error on an invalid spec.
SubjectData generate_subject(const CohortSpec& spec, int subject_index);

/// Writes the whole cohort under `root`:
///   subjects.csv, cohort_spec.json,
///   subjects/<id>/{hf,temp,rr,calorimeter,activities}.csv,
///   ground_truth/<id>.csv  (header timestamp_s,ee_true_w)
/// Identical specs produce byte-identical trees.
void write_cohort(const CohortSpec& spec, const std::filesystem::path& root);

/// "s01", "s02", ... zero-padded to the cohort's width.
std::string subject_id_for_index(int index, int n_subjects);

/// The spec plus every generative constant (maps, gains, lags), so a
/// cohort directory documents exactly how it was made.
std::string cohort_spec_to_json(const CohortSpec& spec);
CohortSpec cohort_spec_from_json(const std::string& text);

}  // namespace hfee
