#include <doctest.h>

#include <filesystem>
#include <string>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"
#include "hfee/recording.hpp"
#include "tmpdir.hpp"

using namespace hfee;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HFEE_FIXTURE_DIR;

/// Minimal valid recording the error cases below corrupt one file of.
void write_valid(const fs::path& dir) {
  write_file((dir / kHfFile).string(), "timestamp_s,heat_flux_w_m2\n0,30\n0.05,31\n0.1,32\n");
  write_file((dir / kTempFile).string(), "timestamp_s,temp_c\n0,31.5\n0.05,31.5\n");
  write_file((dir / kRrFile).string(), "beat_time_s,rr_ms\n0.5,800\n1.3,810\n");
  write_file((dir / kCalorimeterFile).string(), "breath_time_s,ee_w\n1.5,95\n4.5,96\n");
  write_file((dir / kActivitiesFile).string(), "start_s,end_s,activity\n0,300,sitting\n");
}

}  // namespace

TEST_CASE("golden fixture parses and re-serializes bit-exactly") {
  const SensorRecording rec = parse_recording(kFixtures / "rec_zero", "s01");

  CHECK(rec.subject_id == "s01");
  REQUIRE(rec.hf.size() == 3);
  CHECK(rec.hf[0].t == 0.0);
  CHECK(rec.hf[2].value == 33.125);
  REQUIRE(rec.rr.size() == 3);
  CHECK(rec.rr[1].value == 812.5);
  REQUIRE(rec.activities.size() == 2);
  CHECK(rec.activities[1].label == ActivityLabel::Walking);

  testsupport::TempDir out("roundtrip");
  write_recording(rec, out.path());
  for (const char* name : {kHfFile, kTempFile, kRrFile, kCalorimeterFile, kActivitiesFile}) {
    CHECK(read_file((out.path() / name).string()) ==
          read_file((kFixtures / "rec_zero" / name).string()));
  }
}

TEST_CASE("streams starting at t=100 are re-based by -100") {
  const SensorRecording rec = parse_recording(kFixtures / "rec_offset", "s01");
  CHECK(rec.hf[0].t == 0.0);
  CHECK(rec.hf[1].t == 100.05 - 100.0);
  CHECK(rec.hf[1].t == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(rec.rr[0].t == 100.5 - 100.0);
  CHECK(rec.activities[0].start_s == 0.0);
  CHECK(rec.activities[1].end_s == 700.0 - 100.0);

  // Re-basing preserves inter-sample intervals exactly.
  const SensorRecording zero = parse_recording(kFixtures / "rec_zero", "s01");
  for (std::size_t i = 1; i < rec.hf.size(); ++i)
    CHECK(rec.hf[i].t - rec.hf[i - 1].t ==
          doctest::Approx(zero.hf[i].t - zero.hf[i - 1].t).epsilon(1e-12));
  // Values are untouched by re-basing.
  for (std::size_t i = 0; i < rec.hf.size(); ++i) CHECK(rec.hf[i].value == zero.hf[i].value);
}

TEST_CASE("parse is deterministic") {
  const SensorRecording a = parse_recording(kFixtures / "rec_zero", "s01");
  const SensorRecording b = parse_recording(kFixtures / "rec_zero", "s01");
  CHECK(a == b);
}

TEST_CASE("error cases trigger their named errors") {
  testsupport::TempDir dir("ingest_err");
  write_valid(dir.path());

  SUBCASE("missing file") {
    fs::remove(dir.path() / kTempFile);
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), MissingFile);
  }

  SUBCASE("malformed row: non-numeric field") {
    write_file((dir.path() / kHfFile).string(),
               "timestamp_s,heat_flux_w_m2\n0,30\n0.05,oops\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), MalformedRow);
  }

  SUBCASE("malformed row: wrong column count") {
    write_file((dir.path() / kHfFile).string(), "timestamp_s,heat_flux_w_m2\n0,30,1\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), MalformedRow);
  }

  SUBCASE("malformed row: non-positive rr") {
    write_file((dir.path() / kRrFile).string(), "beat_time_s,rr_ms\n0.5,0\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), MalformedRow);
  }

  SUBCASE("malformed row: unknown activity") {
    write_file((dir.path() / kActivitiesFile).string(),
               "start_s,end_s,activity\n0,300,rowing\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), MalformedRow);
  }

  SUBCASE("non-monotone time names the offending line") {
    write_file((dir.path() / kHfFile).string(),
               "timestamp_s,heat_flux_w_m2\n0,30\n0.05,31\n0.1,32\n0.1,33\n");
    try {
      parse_recording(dir.path(), "x");
      FAIL("expected NonMonotoneTime");
    } catch (const NonMonotoneTime& e) {
      CHECK(e.line() == 5);
    }
  }

  SUBCASE("backwards activity interval") {
    write_file((dir.path() / kActivitiesFile).string(),
               "start_s,end_s,activity\n300,300,sitting\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), NonMonotoneTime);
  }

  SUBCASE("overlapping activity intervals") {
    write_file((dir.path() / kActivitiesFile).string(),
               "start_s,end_s,activity\n0,300,sitting\n200,400,walking\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), NonMonotoneTime);
  }

  SUBCASE("empty stream") {
    write_file((dir.path() / kCalorimeterFile).string(), "breath_time_s,ee_w\n");
    CHECK_THROWS_AS(parse_recording(dir.path(), "x"), EmptyStream);
  }
}

TEST_CASE("validate_rates diagnostics") {
  SensorRecording rec;
  rec.subject_id = "x";

  SUBCASE("exact 20 Hz stream: in band, no gaps") {
    for (int k = 0; k < 200; ++k) rec.hf.push_back({k / 20.0, 1.0});
    for (int k = 0; k < 200; ++k) rec.temp.push_back({k / 20.0, 1.0});
    const ValidationSummary s = validate_rates(rec);
    REQUIRE(s.streams.size() == 2);
    CHECK(s.streams[0].stream == "hf");
    CHECK(s.streams[0].mean_interval_s == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s.streams[0].gap_count == 0);
    CHECK(s.streams[0].within_20hz_band);
  }

  SUBCASE("a one second hole counts as one gap") {
    for (int k = 0; k < 100; ++k) rec.hf.push_back({k / 20.0, 1.0});
    for (int k = 0; k < 100; ++k) rec.hf.push_back({100.0 / 20.0 + 1.0 + k / 20.0, 1.0});
    rec.temp = rec.hf;
    const ValidationSummary s = validate_rates(rec);
    CHECK(s.streams[0].gap_count == 1);
  }

  SUBCASE("10 Hz stream flagged out of band") {
    for (int k = 0; k < 100; ++k) rec.hf.push_back({k / 10.0, 1.0});
    rec.temp = rec.hf;
    const ValidationSummary s = validate_rates(rec);
    CHECK_FALSE(s.streams[0].within_20hz_band);
  }
}
