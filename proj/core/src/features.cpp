#include "hfee/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"

namespace hfee {

namespace {

/// Samples with t in [lo, hi). Input is sorted by t.
std::span<const Sample> slice(std::span<const Sample> samples, double lo, double hi) {
  const auto begin = std::lower_bound(samples.begin(), samples.end(), lo,
                                      [](const Sample& s, double t) { return s.t < t; });
  const auto end = std::lower_bound(begin, samples.end(), hi,
                                    [](const Sample& s, double t) { return s.t < t; });
  return samples.subspan(static_cast<std::size_t>(begin - samples.begin()),
                         static_cast<std::size_t>(end - begin));
}

double median_of(std::span<const Sample> window, std::vector<double>& scratch) {
  scratch.clear();
  scratch.reserve(window.size());
  for (const Sample& s : window) scratch.push_back(s.value);
  const std::size_t n = scratch.size();
  const std::size_t mid = n / 2;
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid),
                   scratch.end());
  if (n % 2 == 1) return scratch[mid];
  const double hi = scratch[mid];
  const double lo =
      *std::max_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lo + hi) / 2.0;
}

/// The unique activity interval covering [bin_end-30, bin_end), if any.
/// Intervals never overlap, so at most one can cover a whole bin.
std::optional<ActivityLabel> covering_activity(std::span<const ActivityInterval> activities,
                                               double bin_end) {
  const double bin_start = bin_end - kBinSeconds;
  for (const ActivityInterval& iv : activities) {
    if (iv.start_s <= bin_start && iv.end_s >= bin_end) return iv.label;
    if (iv.start_s > bin_start) break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> bin_heart_rate(std::span<const Sample> rr_intervals, double bin_end) {
  const auto beats = slice(rr_intervals, bin_end - kBinSeconds, bin_end);
  if (beats.empty()) return std::nullopt;
  double sum_ms = 0.0;
  for (const Sample& b : beats) sum_ms += b.value;
  return 60000.0 / (sum_ms / static_cast<double>(beats.size()));
}

std::optional<double> bin_average(std::span<const Sample> samples, double bin_end) {
  const auto window = slice(samples, bin_end - kBinSeconds, bin_end);
  if (window.empty()) return std::nullopt;
  double sum = 0.0;
  for (const Sample& s : window) sum += s.value;
  return sum / static_cast<double>(window.size());
}

std::optional<double> window_median(std::span<const Sample> samples, double bin_end,
                                    double lag_start, double lag_end) {
  const auto window = slice(samples, bin_end - lag_end, bin_end - lag_start);
  if (window.empty()) return std::nullopt;
  std::vector<double> scratch;
  return median_of(window, scratch);
}

FeatureTable build_feature_table(const SensorRecording& rec, FeatureDiagnostics* diag) {
  FeatureTable table;
  table.subject_id = rec.subject_id;
  FeatureDiagnostics local;

  if (!rec.hf.empty() && !rec.temp.empty() && !rec.rr.empty() && !rec.breaths.empty() &&
      !rec.activities.empty()) {
    double t_first = rec.hf.front().t;
    t_first = std::min(t_first, rec.temp.front().t);
    t_first = std::min(t_first, rec.rr.front().t);
    t_first = std::min(t_first, rec.breaths.front().t);
    t_first = std::min(t_first, rec.activities.front().start_s);

    double t_last = rec.hf.back().t;
    t_last = std::max(t_last, rec.temp.back().t);
    t_last = std::max(t_last, rec.rr.back().t);
    t_last = std::max(t_last, rec.breaths.back().t);
    t_last = std::max(t_last, rec.activities.back().end_s);

    // Bin ends on the 30 s grid; a row needs the full long window of
    // history, so nothing can exist before t_first + long lag.
    const auto first_mult =
        static_cast<long long>(std::ceil((t_first + kLongLagEnd) / kBinSeconds));
    const auto last_mult = static_cast<long long>(std::ceil(t_last / kBinSeconds));

    std::vector<double> scratch;
    for (long long m = first_mult; m <= last_mult; ++m) {
      const double bin_end = static_cast<double>(m) * kBinSeconds;
      ++local.bins_considered;

      const auto activity = covering_activity(rec.activities, bin_end);
      const auto hr = bin_heart_rate(rec.rr, bin_end);
      const auto hf_avg = bin_average(rec.hf, bin_end);
      const auto temp_avg = bin_average(rec.temp, bin_end);
      const auto ee = bin_average(rec.breaths, bin_end);
      const auto hf_ms = window_median(rec.hf, bin_end, kShortLagStart, kShortLagEnd);
      const auto hf_ml = window_median(rec.hf, bin_end, kLongLagStart, kLongLagEnd);
      const auto temp_ms = window_median(rec.temp, bin_end, kShortLagStart, kShortLagEnd);
      const auto temp_ml = window_median(rec.temp, bin_end, kLongLagStart, kLongLagEnd);

      if (!activity || !hr || !hf_avg || !temp_avg || !ee || !hf_ms || !hf_ml || !temp_ms ||
          !temp_ml) {
        ++local.bins_dropped;
        continue;
      }

      FeatureRow row;
      row.bin_end_s = bin_end;
      row.hr_bpm = *hr;
      row.hf = *hf_avg;
      row.hf_med_short = *hf_ms;
      row.hf_med_long = *hf_ml;
      row.temp = *temp_avg;
      row.temp_med_short = *temp_ms;
      row.temp_med_long = *temp_ml;
      row.ee_w = *ee;
      row.activity = *activity;
      table.rows.push_back(row);
    }
  }

  if (diag) *diag = local;
  if (table.rows.empty())
    throw NoUsableRows("no usable 30 s bins for subject '" + rec.subject_id + "' (" +
                       std::to_string(local.bins_dropped) + " of " +
                       std::to_string(local.bins_considered) + " candidate bins dropped)");
  return table;
}

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::string buf;
  buf.append(
      "bin_end_s,hr_bpm,hf,hf_med_short,hf_med_long,temp,temp_med_short,temp_med_long,ee_w,"
      "activity\n");
  for (const FeatureRow& r : table.rows) {
    buf += format_double(r.bin_end_s);
    buf.push_back(',');
    buf += format_double(r.hr_bpm);
    buf.push_back(',');
    buf += format_double(r.hf);
    buf.push_back(',');
    buf += format_double(r.hf_med_short);
    buf.push_back(',');
    buf += format_double(r.hf_med_long);
    buf.push_back(',');
    buf += format_double(r.temp);
    buf.push_back(',');
    buf += format_double(r.temp_med_short);
    buf.push_back(',');
    buf += format_double(r.temp_med_long);
    buf.push_back(',');
    buf += format_double(r.ee_w);
    buf.push_back(',');
    buf += activity_name(r.activity);
    buf.push_back('\n');
  }
  write_file(path.string(), buf);
}

}  // namespace hfee
