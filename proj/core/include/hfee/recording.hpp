#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hfee/activity.hpp"

namespace hfee {

/// One timestamped measurement. `t` is seconds from recording start.
struct Sample {
  double t = 0.0;
  double value = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Half-open-ish activity bout [start_s, end_s]; bouts never overlap.
struct ActivityInterval {
  double start_s = 0.0;
  double end_s = 0.0;
  ActivityLabel label = ActivityLabel::Sitting;

  friend bool operator==(const ActivityInterval&, const ActivityInterval&) = default;
};

/// All raw streams of one subject on a common time base (earliest sample
/// across streams is t = 0 after parsing). Immutable by convention after
/// construction; safe to share across threads.
struct SensorRecording {
  std::string subject_id;
  std::vector<Sample> hf;        // heat flux, W/m^2, nominally 20 Hz
  std::vector<Sample> temp;      // heat-sink temperature, degC, nominally 20 Hz
  std::vector<Sample> rr;        // value = R-R interval in ms, t = beat time
  std::vector<Sample> breaths;   // value = EE in W, t = breath time
  std::vector<ActivityInterval> activities;

  friend bool operator==(const SensorRecording&, const SensorRecording&) = default;
};

/// Per-stream sampling diagnostics.
struct StreamRateStats {
  std::string stream;
  std::size_t samples = 0;
  double mean_interval_s = 0.0;  // 0 when fewer than 2 samples
  std::size_t gap_count = 0;     // inter-sample gaps > 0.25 s
  bool within_20hz_band = false; // mean interval in [0.045, 0.055] s
};

struct ValidationSummary {
  std::vector<StreamRateStats> streams;
};

inline constexpr const char* kHfFile = "hf.csv";
inline constexpr const char* kTempFile = "temp.csv";
inline constexpr const char* kRrFile = "rr.csv";
inline constexpr const char* kCalorimeterFile = "calorimeter.csv";
inline constexpr const char* kActivitiesFile = "activities.csv";

/// Parses the five stream files under `dir_path` and re-bases all
/// timestamps so the earliest sample across streams sits at t = 0.
/// Throws MissingFile, MalformedRow, NonMonotoneTime, EmptyStream.
SensorRecording parse_recording(const std::filesystem::path& dir_path,
                                const std::string& subject_id);

/// Writes the five stream files in the canonical format parse_recording
/// reads. parse -> write reproduces a canonical fixture byte for byte.
void write_recording(const SensorRecording& rec, const std::filesystem::path& dir_path);

/// Sampling-rate diagnostics for the continuous (20 Hz) streams.
/// Never throws: out-of-band rates are flagged, not fatal.
ValidationSummary validate_rates(const SensorRecording& rec);

}  // namespace hfee
