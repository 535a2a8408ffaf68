#include "hfee/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"
#include "hfee/parallel.hpp"
#include "hfee/rng.hpp"

namespace hfee {

namespace {

// Protocol bounds, whole seconds.
constexpr std::int64_t kBoutMinS = 5 * 60;
constexpr std::int64_t kBoutMaxS = 45 * 60;
constexpr double kTotalMinS = 96 * 60;
constexpr double kTotalMaxS = 163 * 60;

// Nominal EE per activity class before per-subject and per-bout scaling.
constexpr std::array<double, 5> kBaseEeW = {95.0, 120.0, 290.0, 430.0, 360.0};
constexpr double kBoutJitterLo = 0.85;
constexpr double kBoutJitterHi = 1.25;

// hr = kHrBase + kHrGain * ee, plus per-subject jitter that scales with
// the noise level so the zero-noise cohort is exactly linear.
constexpr double kHrBase = 45.0;
constexpr double kHrGain = 0.22;
constexpr double kHrClampLo = 30.0;
constexpr double kHrClampHi = 240.0;
constexpr double kHrOffsetSdFactor = 1.5;   // per-subject offset, x hr_sd
constexpr double kGainJitterFactor = 0.01;  // relative gain spread per unit sd
constexpr double kHrOuTauS = 60.0;

// hf = kHfBase + kHfGain * L where L is EE through a first-order lag.
constexpr double kHfBase = 25.0;
constexpr double kHfGain = 0.09;
constexpr double kHfOffsetSdFactor = 0.75;
constexpr double kHfOuTauS = 45.0;

// temp = kTempBase + kTempGain * M where M lags L six times slower.
constexpr double kTempBase = 31.5;
constexpr double kTempGain = 0.010;
constexpr double kTempLagFactor = 6.0;
constexpr double kTempOffsetSdFactor = 8.0;
constexpr double kTempOuTauS = 120.0;

constexpr double kBreathMinS = 2.6;
constexpr double kBreathMaxS = 3.4;

constexpr double kSampleHz = 20.0;

// Seed stream tags.
constexpr std::uint64_t kStreamProtocol = 1;
constexpr std::uint64_t kStreamProfile = 2;
constexpr std::uint64_t kStreamSignals = 3;

void check_spec(const CohortSpec& spec) {
  if (spec.n_subjects < 3) throw Error("cohort: n_subjects must be >= 3");
  if (spec.thermal_lag_s <= 0.0) throw Error("cohort: thermal_lag_s must be > 0");
  const NoiseProfile& z = spec.noise;
  if (z.hr_sd_bpm < 0 || z.hf_sd_w_m2 < 0 || z.temp_sd_c < 0 || z.ee_sd_w < 0)
    throw Error("cohort: noise levels must be >= 0");
  if (z.low_intensity_hr_multiplier < 1.0)
    throw Error("cohort: low_intensity_hr_multiplier must be >= 1");
}

double ee_of_bout(const std::vector<BoutEe>& bouts, double t) {
  // Bouts are contiguous from 0; find the one whose start is <= t.
  auto it = std::upper_bound(bouts.begin(), bouts.end(), t,
                             [](double v, const BoutEe& b) { return v < b.interval.start_s; });
  if (it == bouts.begin()) return bouts.front().ee_w;
  return std::prev(it)->ee_w;
}

/// One Ornstein-Uhlenbeck step over dt. Always consumes a draw, so the
/// stream layout does not depend on the noise level.
double ou_step(double w, double dt, double tau, double sd, Rng& rng) {
  const double a = std::exp(-dt / tau);
  return w * a + sd * std::sqrt(1.0 - a * a) * rng.normal01();
}

SubjectProfile generate_profile(const CohortSpec& spec, int index) {
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(index), kStreamProfile));
  const auto n_male = static_cast<int>(std::llround(0.6 * spec.n_subjects));
  SubjectProfile p;
  p.subject_id = subject_id_for_index(index, spec.n_subjects);
  p.gender = index < n_male ? Gender::Male : Gender::Female;
  p.age_y = static_cast<double>(rng.uniform_int(23, 45));
  const bool male = p.gender == Gender::Male;
  p.height_cm = std::max(140.0, rng.normal(male ? 178.0 : 165.0, male ? 7.0 : 6.0));
  p.weight_kg = std::max(45.0, rng.normal(male ? 80.0 : 67.0, male ? 10.0 : 8.0));
  p.height_cm = std::round(p.height_cm * 10.0) / 10.0;
  p.weight_kg = std::round(p.weight_kg * 10.0) / 10.0;
  p.activity_level = static_cast<int>(rng.uniform_int(1, 10));
  return p;
}

}  // namespace

std::string subject_id_for_index(int index, int n_subjects) {
  std::string digits = std::to_string(index + 1);
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n_subjects).size());
  while (digits.size() < width) digits.insert(digits.begin(), '0');
  return "s" + digits;
}

std::vector<ActivityInterval> generate_protocol(std::uint64_t seed, int subject_index) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(subject_index), kStreamProtocol));

  std::vector<ActivityLabel> order(kAllActivities.begin(), kAllActivities.end());
  rng.shuffle(order);

  std::array<std::int64_t, 5> durations{};
  while (true) {
    std::int64_t total = 0;
    for (auto& d : durations) {
      d = rng.uniform_int(kBoutMinS, kBoutMaxS);
      total += d;
    }
    if (static_cast<double>(total) >= kTotalMinS && static_cast<double>(total) <= kTotalMaxS)
      break;
  }

  std::vector<ActivityInterval> protocol;
  protocol.reserve(order.size());
  double t = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double end = t + static_cast<double>(durations[i]);
    protocol.push_back({t, end, order[i]});
    t = end;
  }
  return protocol;
}

SubjectData generate_subject(const CohortSpec& spec, int subject_index) {
  check_spec(spec);
  if (subject_index < 0 || subject_index >= spec.n_subjects)
    throw Error("cohort: subject index out of range");

  SubjectData s;
  s.profile = generate_profile(spec, subject_index);
  s.recording.subject_id = s.profile.subject_id;
  s.recording.activities = generate_protocol(spec.seed, subject_index);
  const double total_s = s.recording.activities.back().end_s;

  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(subject_index), kStreamSignals));
  const NoiseProfile& nz = spec.noise;

  // True EE: constant per bout, scaled by body mass and a per-bout
  // intensity jitter. The jitter diversifies the targets; it does not
  // bend any sensor map, so linear recoverability is untouched.
  const double subject_scale = 0.5 + 0.5 * s.profile.weight_kg / 75.0;
  for (const ActivityInterval& iv : s.recording.activities) {
    const double base = kBaseEeW[static_cast<std::size_t>(iv.label)];
    const double jitter = rng.uniform(kBoutJitterLo, kBoutJitterHi);
    s.truth.bouts.push_back({iv, base * jitter * subject_scale});
  }

  // Per-subject map parameters. Every deviation from the global map is
  // proportional to a noise sd, so sd = 0 collapses to the exact map.
  const double hr_gain = kHrGain * (1.0 + rng.normal(0.0, kGainJitterFactor * nz.hr_sd_bpm));
  const double hr_offset = rng.normal(0.0, kHrOffsetSdFactor * nz.hr_sd_bpm);
  const double hf_gain = kHfGain * (1.0 + rng.normal(0.0, kGainJitterFactor * nz.hf_sd_w_m2));
  const double hf_offset = rng.normal(0.0, kHfOffsetSdFactor * nz.hf_sd_w_m2);
  const double temp_offset = rng.normal(0.0, kTempOffsetSdFactor * nz.temp_sd_c);

  // R-R intervals. The beat clock restarts at each bout so every interval
  // reflects a single bout's EE; heart-rate wander is an OU process in
  // beat time, wider while sitting or standing.
  double w_hr = rng.normal01() * nz.hr_sd_bpm;
  for (const BoutEe& b : s.truth.bouts) {
    const bool calm =
        b.interval.label == ActivityLabel::Sitting || b.interval.label == ActivityLabel::Standing;
    const double sigma = nz.hr_sd_bpm * (calm ? nz.low_intensity_hr_multiplier : 1.0);
    double t = b.interval.start_s;
    while (true) {
      const double hr_clean = kHrBase + hr_gain * b.ee_w + hr_offset;
      const double hr_inst = std::clamp(hr_clean + w_hr, kHrClampLo, kHrClampHi);
      const double rr_ms = 60000.0 / hr_inst;
      const double t_beat = t + rr_ms / 1000.0;
      if (t_beat >= b.interval.end_s) break;
      s.recording.rr.push_back({t_beat, rr_ms});
      w_hr = ou_step(w_hr, rr_ms / 1000.0, kHrOuTauS, sigma, rng);
      t = t_beat;
    }
  }

  // 20 Hz heat flux and heat-sink temperature. L lags EE, M lags L.
  const double dt = 1.0 / kSampleHz;
  const double a_lag_hf = std::exp(-dt / spec.thermal_lag_s);
  const double a_lag_temp = std::exp(-dt / (kTempLagFactor * spec.thermal_lag_s));
  const auto n20 = static_cast<std::size_t>(std::llround(total_s * kSampleHz));
  s.recording.hf.reserve(n20);
  s.recording.temp.reserve(n20);
  double lag_hf = s.truth.bouts.front().ee_w;
  double lag_temp = lag_hf;
  double w_hf = rng.normal01() * nz.hf_sd_w_m2;
  double w_temp = rng.normal01() * nz.temp_sd_c;
  for (std::size_t k = 0; k < n20; ++k) {
    const double t = static_cast<double>(k) / kSampleHz;
    const double ee = ee_of_bout(s.truth.bouts, t);
    if (k > 0) {
      lag_hf = ee + (lag_hf - ee) * a_lag_hf;
      lag_temp = lag_hf + (lag_temp - lag_hf) * a_lag_temp;
    }
    w_hf = ou_step(w_hf, dt, kHfOuTauS, nz.hf_sd_w_m2, rng);
    const double hf_v =
        kHfBase + hf_gain * lag_hf + hf_offset + w_hf + rng.normal01() * nz.hf_sd_w_m2;
    w_temp = ou_step(w_temp, dt, kTempOuTauS, nz.temp_sd_c, rng);
    const double temp_v =
        kTempBase + kTempGain * lag_temp + temp_offset + w_temp + rng.normal01() * nz.temp_sd_c;
    s.recording.hf.push_back({t, hf_v});
    s.recording.temp.push_back({t, temp_v});
  }

  // Breath-by-breath calorimetry: true EE plus white noise.
  for (double t = rng.uniform(kBreathMinS, kBreathMaxS); t < total_s;
       t += rng.uniform(kBreathMinS, kBreathMaxS)) {
    s.recording.breaths.push_back({t, ee_of_bout(s.truth.bouts, t) + rng.normal(0.0, nz.ee_sd_w)});
  }

  // 1 Hz ground truth, noise-free.
  const auto n1 = static_cast<std::size_t>(std::llround(total_s));
  s.truth.ee_1hz.reserve(n1);
  for (std::size_t k = 0; k < n1; ++k) {
    const double t = static_cast<double>(k);
    s.truth.ee_1hz.push_back({t, ee_of_bout(s.truth.bouts, t)});
  }
  return s;
}

void write_cohort(const CohortSpec& spec, const std::filesystem::path& root) {
  check_spec(spec);

  std::vector<SubjectData> subjects(static_cast<std::size_t>(spec.n_subjects));
  parallel_for_index(subjects.size(), [&](std::size_t i) {
    subjects[i] = generate_subject(spec, static_cast<int>(i));
  });

  write_file((root / "cohort_spec.json").string(), cohort_spec_to_json(spec));

  std::vector<SubjectProfile> profiles;
  profiles.reserve(subjects.size());
  for (const SubjectData& s : subjects) profiles.push_back(s.profile);
  write_subjects_csv(profiles, root / kSubjectsFile);

  for (const SubjectData& s : subjects) {
    write_recording(s.recording, root / "subjects" / s.profile.subject_id);
    std::string csv = "timestamp_s,ee_true_w\n";
    for (const Sample& p : s.truth.ee_1hz)
      csv += format_double(p.t) + "," + format_double(p.value) + "\n";
    write_file((root / "ground_truth" / (s.profile.subject_id + ".csv")).string(), csv);
  }
}

std::string cohort_spec_to_json(const CohortSpec& spec) {
  nlohmann::json j;
  j["n_subjects"] = spec.n_subjects;
  j["seed"] = spec.seed;
  j["thermal_lag_s"] = spec.thermal_lag_s;
  j["noise"] = {
      {"hr_sd_bpm", spec.noise.hr_sd_bpm},
      {"hf_sd_w_m2", spec.noise.hf_sd_w_m2},
      {"temp_sd_c", spec.noise.temp_sd_c},
      {"ee_sd_w", spec.noise.ee_sd_w},
      {"low_intensity_hr_multiplier", spec.noise.low_intensity_hr_multiplier},
  };
  // How the data was made, for the record. Readers can ignore this block;
  // cohort_spec_from_json does.
  j["generative"] = {
      {"base_ee_w",
       {{"sitting", kBaseEeW[0]},
        {"standing", kBaseEeW[1]},
        {"walking", kBaseEeW[2]},
        {"cycling", kBaseEeW[3]},
        {"arm_ergometry", kBaseEeW[4]}}},
      {"bout_intensity_jitter", {kBoutJitterLo, kBoutJitterHi}},
      {"subject_scale", "0.5 + 0.5 * weight_kg / 75"},
      {"hr_map", "hr_bpm = 45 + 0.22 * ee_w (+ jitter proportional to hr_sd_bpm)"},
      {"hf_map", "hf = 25 + 0.09 * lag(ee, thermal_lag_s)"},
      {"temp_map", "temp_c = 31.5 + 0.01 * lag(hf_lag, 6 * thermal_lag_s)"},
      {"breath_interval_s", {kBreathMinS, kBreathMaxS}},
      {"ou_tau_s", {{"hr", kHrOuTauS}, {"hf", kHfOuTauS}, {"temp", kTempOuTauS}}},
  };
  return j.dump(2) + "\n";
}

CohortSpec cohort_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    CohortSpec spec;
    spec.n_subjects = j.at("n_subjects").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.thermal_lag_s = j.at("thermal_lag_s").get<double>();
    const nlohmann::json& z = j.at("noise");
    spec.noise.hr_sd_bpm = z.at("hr_sd_bpm").get<double>();
    spec.noise.hf_sd_w_m2 = z.at("hf_sd_w_m2").get<double>();
    spec.noise.temp_sd_c = z.at("temp_sd_c").get<double>();
    spec.noise.ee_sd_w = z.at("ee_sd_w").get<double>();
    spec.noise.low_intensity_hr_multiplier = z.at("low_intensity_hr_multiplier").get<double>();
    check_spec(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("cohort_spec.json: ") + e.what());
  }
}

}  // namespace hfee
