#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"
#include "hfee/synth.hpp"
#include "tmpdir.hpp"

using namespace hfee;

namespace {

CohortSpec zero_noise_spec() {
  CohortSpec spec;
  spec.n_subjects = 3;
  spec.seed = 7;
  spec.noise = {0.0, 0.0, 0.0, 0.0, 3.0};
  return spec;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (const double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("subject ids are zero padded to the cohort width") {
  CHECK(subject_id_for_index(0, 15) == "s01");
  CHECK(subject_id_for_index(14, 15) == "s15");
  CHECK(subject_id_for_index(0, 9) == "s01");
  CHECK(subject_id_for_index(99, 100) == "s100");
  CHECK(subject_id_for_index(7, 100) == "s008");
}

TEST_CASE("protocols stay inside the duration envelope") {
  for (int index = 0; index < 200; ++index) {
    const auto protocol = generate_protocol(42, index);
    REQUIRE(protocol.size() == 5);

    std::set<ActivityLabel> seen;
    double t = 0.0;
    double total = 0.0;
    for (const ActivityInterval& bout : protocol) {
      CHECK(bout.start_s == t);
      const double d = bout.end_s - bout.start_s;
      CHECK(d >= 300.0);
      CHECK(d <= 2700.0);
      CHECK(d == std::floor(d));
      seen.insert(bout.label);
      t = bout.end_s;
      total += d;
    }
    CHECK(seen.size() == 5);
    CHECK(total >= 5760.0);
    CHECK(total <= 9780.0);
  }
}

TEST_CASE("protocol generation is deterministic and seed sensitive") {
  const auto a = generate_protocol(42, 3);
  const auto b = generate_protocol(42, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].start_s == b[i].start_s);
    CHECK(a[i].end_s == b[i].end_s);
    CHECK(a[i].label == b[i].label);
  }

  const auto other_subject = generate_protocol(42, 4);
  const auto other_seed = generate_protocol(43, 3);
  const auto differs = [&](const std::vector<ActivityInterval>& p) {
    if (p.size() != a.size()) return true;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (p[i].end_s != a[i].end_s || p[i].label != a[i].label) return true;
    return false;
  };
  CHECK(differs(other_subject));
  CHECK(differs(other_seed));
}

TEST_CASE("generate_subject is deterministic") {
  CohortSpec spec;
  spec.n_subjects = 3;
  spec.seed = 99;
  const SubjectData a = generate_subject(spec, 1);
  const SubjectData b = generate_subject(spec, 1);
  CHECK(a.profile == b.profile);
  CHECK(a.recording == b.recording);
  CHECK(a.truth.ee_1hz == b.truth.ee_1hz);
}

TEST_CASE("default cohort demographics") {
  CohortSpec spec;
  int males = 0;
  for (int i = 0; i < spec.n_subjects; ++i) {
    const SubjectData s = generate_subject(spec, i);
    if (s.profile.gender == Gender::Male) ++males;
    CHECK(s.profile.age_y >= 23.0);
    CHECK(s.profile.age_y <= 45.0);
    CHECK(s.profile.height_cm > 0.0);
    CHECK(s.profile.weight_kg > 0.0);
    CHECK(s.profile.activity_level >= 1);
    CHECK(s.profile.activity_level <= 10);
    CHECK(s.profile.subject_id == subject_id_for_index(i, spec.n_subjects));
  }
  CHECK(males == 9);
}

TEST_CASE("zero noise makes every signal an exact function of EE") {
  const SubjectData s = generate_subject(zero_noise_spec(), 0);

  SUBCASE("R-R intervals are constant within each bout") {
    for (const BoutEe& bout : s.truth.bouts) {
      std::vector<double> rr;
      for (const Sample& beat : s.recording.rr)
        if (beat.t >= bout.interval.start_s && beat.t < bout.interval.end_s)
          rr.push_back(beat.value);
      REQUIRE(rr.size() > 10);
      for (const double v : rr) CHECK(v == rr.front());
    }
  }

  SUBCASE("calorimeter breaths carry the bout EE exactly") {
    for (const BoutEe& bout : s.truth.bouts) {
      for (const Sample& breath : s.recording.breaths)
        if (breath.t >= bout.interval.start_s && breath.t < bout.interval.end_s)
          CHECK(breath.value == bout.ee_w);
    }
  }

  SUBCASE("30 s calorimeter averages match ground-truth averages inside bouts") {
    for (const BoutEe& bout : s.truth.bouts) {
      // Bins fully covered by this bout.
      const double first_end = 30.0 * std::ceil(bout.interval.start_s / 30.0) + 30.0;
      for (double bin_end = first_end; bin_end <= bout.interval.end_s; bin_end += 30.0) {
        std::vector<double> breaths;
        for (const Sample& b : s.recording.breaths)
          if (b.t >= bin_end - 30.0 && b.t < bin_end) breaths.push_back(b.value);
        std::vector<double> truth;
        for (const Sample& g : s.truth.ee_1hz)
          if (g.t >= bin_end - 30.0 && g.t < bin_end) truth.push_back(g.value);
        if (breaths.empty() || truth.empty()) continue;
        CHECK(std::fabs(mean_of(breaths) - mean_of(truth)) < 1e-9);
        CHECK(std::fabs(mean_of(truth) - bout.ee_w) < 1e-9);
      }
    }
  }

  SUBCASE("ground truth is piecewise constant at the bout values") {
    for (const Sample& g : s.truth.ee_1hz) {
      bool matched = false;
      for (const BoutEe& bout : s.truth.bouts)
        if (g.t >= bout.interval.start_s && g.t < bout.interval.end_s) {
          CHECK(g.value == bout.ee_w);
          matched = true;
          break;
        }
      CHECK(matched);
    }
  }
}

TEST_CASE("streams cover the protocol at their nominal rates") {
  CohortSpec spec;
  spec.n_subjects = 3;
  const SubjectData s = generate_subject(spec, 2);
  const double total = s.recording.activities.back().end_s;

  CHECK(s.recording.hf.size() == s.recording.temp.size());
  CHECK(static_cast<double>(s.recording.hf.size()) == total * 20.0);
  CHECK(s.recording.hf.front().t == 0.0);
  CHECK(s.recording.hf[1].t == 0.05);
  CHECK(s.truth.ee_1hz.size() == static_cast<std::size_t>(total));

  // Breaths arrive every ~3 s.
  const double breaths_per_s =
      static_cast<double>(s.recording.breaths.size()) / total;
  CHECK(breaths_per_s > 1.0 / 3.4);
  CHECK(breaths_per_s < 1.0 / 2.6);
}

TEST_CASE("heart rate is noisier at low intensity by construction") {
  CohortSpec spec;
  spec.n_subjects = 3;
  spec.seed = 11;
  const SubjectData s = generate_subject(spec, 0);

  // Residual scatter of instantaneous HR around the per-bout mean.
  double calm_var = 0.0;
  std::size_t calm_n = 0;
  double active_var = 0.0;
  std::size_t active_n = 0;
  for (const BoutEe& bout : s.truth.bouts) {
    std::vector<double> hr;
    for (const Sample& beat : s.recording.rr)
      if (beat.t >= bout.interval.start_s && beat.t < bout.interval.end_s)
        hr.push_back(60000.0 / beat.value);
    if (hr.size() < 2) continue;
    const double m = mean_of(hr);
    double var = 0.0;
    for (const double v : hr) var += (v - m) * (v - m);
    const bool calm = bout.interval.label == ActivityLabel::Sitting ||
                      bout.interval.label == ActivityLabel::Standing;
    (calm ? calm_var : active_var) += var;
    (calm ? calm_n : active_n) += hr.size();
  }
  REQUIRE(calm_n > 0);
  REQUIRE(active_n > 0);
  CHECK(calm_var / static_cast<double>(calm_n) >
        2.0 * active_var / static_cast<double>(active_n));
}

TEST_CASE("write_cohort lays out the documented tree deterministically") {
  CohortSpec spec;
  spec.n_subjects = 3;
  spec.seed = 5;

  testsupport::TempDir dir("synth");
  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  write_cohort(spec, a);
  write_cohort(spec, b);

  CHECK(std::filesystem::exists(a / "cohort_spec.json"));
  CHECK(std::filesystem::exists(a / "subjects.csv"));
  for (int i = 0; i < spec.n_subjects; ++i) {
    const std::string id = subject_id_for_index(i, spec.n_subjects);
    for (const char* name : {"hf.csv", "temp.csv", "rr.csv", "calorimeter.csv",
                             "activities.csv"})
      CHECK(std::filesystem::exists(a / "subjects" / id / name));
    CHECK(std::filesystem::exists(a / "ground_truth" / (id + ".csv")));
    CHECK(read_file((a / "subjects" / id / "hf.csv").string()) ==
          read_file((b / "subjects" / id / "hf.csv").string()));
    CHECK(read_file((a / "ground_truth" / (id + ".csv")).string()) ==
          read_file((b / "ground_truth" / (id + ".csv")).string()));
  }
  CHECK(read_file((a / "subjects.csv").string()) == read_file((b / "subjects.csv").string()));
  CHECK(read_file((a / "cohort_spec.json").string()) ==
        read_file((b / "cohort_spec.json").string()));

  const auto profiles = load_subjects_csv(a / "subjects.csv");
  CHECK(profiles.size() == 3);

  const std::string truth = read_file((a / "ground_truth" / "s01.csv").string());
  CHECK(truth.rfind("timestamp_s,ee_true_w\n", 0) == 0);
}

TEST_CASE("cohort spec JSON round trips and validates") {
  CohortSpec spec;
  spec.n_subjects = 5;
  spec.seed = 1234567890123456789ULL;
  spec.noise.hr_sd_bpm = 0.5;
  spec.noise.low_intensity_hr_multiplier = 2.5;
  spec.thermal_lag_s = 45.0;

  const std::string text = cohort_spec_to_json(spec);
  CHECK(cohort_spec_from_json(text) == spec);
  CHECK(text.back() == '\n');

  CHECK_THROWS_AS(cohort_spec_from_json("not json"), Error);
  CHECK_THROWS_AS(cohort_spec_from_json("{}"), Error);

  CohortSpec bad = spec;
  bad.n_subjects = 2;
  CHECK_THROWS_AS(generate_subject(bad, 0), Error);
  bad = spec;
  bad.noise.low_intensity_hr_multiplier = 0.5;
  CHECK_THROWS_AS(generate_subject(bad, 0), Error);
  bad = spec;
  bad.thermal_lag_s = 0.0;
  CHECK_THROWS_AS(generate_subject(bad, 0), Error);
  bad = spec;
  bad.noise.ee_sd_w = -1.0;
  CHECK_THROWS_AS(generate_subject(bad, 0), Error);
}
