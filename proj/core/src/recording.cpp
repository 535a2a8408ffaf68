#include "hfee/recording.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"

namespace hfee {

namespace {

constexpr double kGapThresholdS = 0.25;
constexpr double kBandLowS = 0.045;
constexpr double kBandHighS = 0.055;

double require_number(const std::string& file, std::size_t line, std::string_view field,
                      const char* what) {
  const auto v = parse_double(field);
  if (!v) {
    throw MalformedRow(file, line,
                       std::string(what) + " is not a finite number: '" + std::string(field) + "'");
  }
  return *v;
}

/// Two-column stream file: timestamp plus value, timestamps strictly increasing.
std::vector<Sample> parse_stream(const std::filesystem::path& path, std::string_view header,
                                 bool positive_values) {
  std::vector<Sample> samples;
  const std::string file = path.string();
  read_csv(file, header, 2, [&](std::size_t line, const std::vector<std::string_view>& f) {
    Sample s;
    s.t = require_number(file, line, f[0], "timestamp");
    s.value = require_number(file, line, f[1], "value");
    if (positive_values && !(s.value > 0.0))
      throw MalformedRow(file, line, "value must be positive, got " + std::string(f[1]));
    if (!samples.empty() && !(s.t > samples.back().t))
      throw NonMonotoneTime(file, line,
                            "timestamp " + format_double(s.t) + " does not increase past " +
                                format_double(samples.back().t));
    samples.push_back(s);
  });
  return samples;
}

std::vector<ActivityInterval> parse_activities(const std::filesystem::path& path) {
  std::vector<ActivityInterval> intervals;
  const std::string file = path.string();
  read_csv(file, "start_s,end_s,activity", 3,
           [&](std::size_t line, const std::vector<std::string_view>& f) {
             ActivityInterval iv;
             iv.start_s = require_number(file, line, f[0], "start_s");
             iv.end_s = require_number(file, line, f[1], "end_s");
             const auto label = parse_activity(f[2]);
             if (!label)
               throw MalformedRow(file, line, "unknown activity '" + std::string(f[2]) + "'");
             iv.label = *label;
             if (!(iv.end_s > iv.start_s))
               throw NonMonotoneTime(file, line, "interval end does not exceed start");
             if (!intervals.empty() && iv.start_s < intervals.back().end_s)
               throw NonMonotoneTime(file, line, "interval overlaps the previous one");
             intervals.push_back(iv);
           });
  return intervals;
}

void append_stream_csv(std::string& out, std::string_view header,
                       const std::vector<Sample>& samples) {
  out.append(header);
  out.push_back('\n');
  for (const Sample& s : samples) {
    out += format_double(s.t);
    out.push_back(',');
    out += format_double(s.value);
    out.push_back('\n');
  }
}

StreamRateStats rate_stats(std::string_view name, const std::vector<Sample>& samples) {
  StreamRateStats st;
  st.stream = std::string(name);
  st.samples = samples.size();
  if (samples.size() >= 2) {
    double sum = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const double dt = samples[i].t - samples[i - 1].t;
      sum += dt;
      if (dt > kGapThresholdS) ++st.gap_count;
    }
    st.mean_interval_s = sum / static_cast<double>(samples.size() - 1);
    st.within_20hz_band = st.mean_interval_s >= kBandLowS && st.mean_interval_s <= kBandHighS;
  }
  return st;
}

}  // namespace

SensorRecording parse_recording(const std::filesystem::path& dir_path,
                                const std::string& subject_id) {
  SensorRecording rec;
  rec.subject_id = subject_id;
  rec.hf = parse_stream(dir_path / kHfFile, "timestamp_s,heat_flux_w_m2", false);
  rec.temp = parse_stream(dir_path / kTempFile, "timestamp_s,temp_c", false);
  rec.rr = parse_stream(dir_path / kRrFile, "beat_time_s,rr_ms", true);
  rec.breaths = parse_stream(dir_path / kCalorimeterFile, "breath_time_s,ee_w", false);
  rec.activities = parse_activities(dir_path / kActivitiesFile);

  // Re-base so the earliest sample across streams sits at t = 0.
  double t0 = rec.hf.front().t;
  t0 = std::min(t0, rec.temp.front().t);
  t0 = std::min(t0, rec.rr.front().t);
  t0 = std::min(t0, rec.breaths.front().t);
  t0 = std::min(t0, rec.activities.front().start_s);
  if (t0 != 0.0) {
    for (auto& s : rec.hf) s.t -= t0;
    for (auto& s : rec.temp) s.t -= t0;
    for (auto& s : rec.rr) s.t -= t0;
    for (auto& s : rec.breaths) s.t -= t0;
    for (auto& iv : rec.activities) {
      iv.start_s -= t0;
      iv.end_s -= t0;
    }
  }
  return rec;
}

void write_recording(const SensorRecording& rec, const std::filesystem::path& dir_path) {
  std::string buf;
  buf.reserve(rec.hf.size() * 24 + 32);
  append_stream_csv(buf, "timestamp_s,heat_flux_w_m2", rec.hf);
  write_file((dir_path / kHfFile).string(), buf);

  buf.clear();
  append_stream_csv(buf, "timestamp_s,temp_c", rec.temp);
  write_file((dir_path / kTempFile).string(), buf);

  buf.clear();
  append_stream_csv(buf, "beat_time_s,rr_ms", rec.rr);
  write_file((dir_path / kRrFile).string(), buf);

  buf.clear();
  append_stream_csv(buf, "breath_time_s,ee_w", rec.breaths);
  write_file((dir_path / kCalorimeterFile).string(), buf);

  buf.clear();
  buf.append("start_s,end_s,activity\n");
  for (const ActivityInterval& iv : rec.activities) {
    buf += format_double(iv.start_s);
    buf.push_back(',');
    buf += format_double(iv.end_s);
    buf.push_back(',');
    buf += activity_name(iv.label);
    buf.push_back('\n');
  }
  write_file((dir_path / kActivitiesFile).string(), buf);
}

ValidationSummary validate_rates(const SensorRecording& rec) {
  ValidationSummary summary;
  summary.streams.push_back(rate_stats("hf", rec.hf));
  summary.streams.push_back(rate_stats("temp", rec.temp));
  return summary;
}

}  // namespace hfee
