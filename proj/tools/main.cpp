#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"
#include "hfee/evaluate.hpp"
#include "hfee/features.hpp"
#include "hfee/parallel.hpp"
#include "hfee/recording.hpp"
#include "hfee/regress.hpp"
#include "hfee/subjects.hpp"
#include "hfee/svg_boxplot.hpp"
#include "hfee/synth.hpp"

namespace fs = std::filesystem;
using namespace hfee;

namespace {

struct Cohort {
  std::vector<SubjectProfile> profiles;
  std::vector<SensorRecording> recordings;
};

Cohort load_cohort(const fs::path& data_root) {
  Cohort c;
  c.profiles = load_subjects_csv(data_root / kSubjectsFile);
  c.recordings.resize(c.profiles.size());
  parallel_for_index(c.profiles.size(), [&](std::size_t i) {
    const std::string& id = c.profiles[i].subject_id;
    c.recordings[i] = parse_recording(data_root / "subjects" / id, id);
  });
  return c;
}

std::vector<FeatureTable> featurize(const Cohort& c) {
  std::vector<FeatureTable> tables(c.recordings.size());
  parallel_for_index(c.recordings.size(), [&](std::size_t i) {
    tables[i] = build_feature_table(c.recordings[i]);
  });
  return tables;
}

std::vector<Scenario> expand_scenarios(const std::string& flag) {
  if (flag == "all") return {kAllScenarios.begin(), kAllScenarios.end()};
  return {*parse_scenario(flag)};
}

std::vector<Subset> expand_subsets(const std::string& flag) {
  if (flag == "both") return {kAllSubsets.begin(), kAllSubsets.end()};
  return {*parse_subset(flag)};
}

std::string report_filename(Scenario sc, Subset sub) {
  return "report_" + std::string(scenario_name(sc)) + "_" + std::string(subset_name(sub)) +
         ".json";
}

std::string group_label(Scenario sc, Subset sub) {
  return std::string(scenario_name(sc)) + "/" + std::string(subset_name(sub));
}

int cmd_synth(const fs::path& data_root, std::uint64_t seed, int subjects) {
  if (subjects < 3)
    throw Error("synth: need at least 3 subjects so every LOOCV fold has 2 training subjects");
  CohortSpec spec;
  spec.n_subjects = subjects;
  spec.seed = seed;
  write_cohort(spec, data_root);
  std::printf("wrote %d subjects under %s\n", subjects, data_root.string().c_str());
  return 0;
}

int cmd_ingest_check(const fs::path& data_root) {
  const Cohort c = load_cohort(data_root);
  std::vector<ValidationSummary> summaries(c.recordings.size());
  parallel_for_index(c.recordings.size(), [&](std::size_t i) {
    summaries[i] = validate_rates(c.recordings[i]);
  });
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    std::printf("%s\n", c.profiles[i].subject_id.c_str());
    for (const StreamRateStats& st : summaries[i].streams) {
      std::printf("  %-6s %8zu samples  mean interval %.4f s  gaps %zu  %s\n", st.stream.c_str(),
                  st.samples, st.mean_interval_s, st.gap_count,
                  st.within_20hz_band ? "20 Hz" : "OFF-RATE");
    }
  }
  std::printf("%zu subjects OK\n", c.profiles.size());
  return 0;
}

int cmd_features(const fs::path& data_root, const fs::path& out) {
  const Cohort c = load_cohort(data_root);
  const std::vector<FeatureTable> tables = featurize(c);
  for (const FeatureTable& t : tables) {
    write_feature_csv(t, out / "features" / (t.subject_id + ".csv"));
    std::printf("%s: %zu rows\n", t.subject_id.c_str(), t.rows.size());
  }
  return 0;
}

int cmd_crossval(const fs::path& data_root, const fs::path& out, const std::string& scenario_flag,
                 const std::string& subset_flag, bool emit_svg) {
  const Cohort c = load_cohort(data_root);
  const std::vector<FeatureTable> tables = featurize(c);

  std::vector<BoxGroup> groups;
  for (const Subset sub : expand_subsets(subset_flag)) {
    for (const Scenario sc : expand_scenarios(scenario_flag)) {
      CvConfig cfg;
      cfg.scenario = sc;
      cfg.subset = sub;
      const CvReport report = run_loocv(tables, c.profiles, cfg);
      const fs::path path = out / report_filename(sc, sub);
      write_file(path.string(), report_to_json(report));
      groups.push_back({group_label(sc, sub), report.box});
      std::printf("%-9s median %7.4f  mean %7.4f  failed folds %zu  -> %s\n",
                  group_label(sc, sub).c_str(), report.box.median, report.box.mean,
                  report.failed_folds.size(), path.string().c_str());
    }
  }
  if (emit_svg) {
    const fs::path path = out / "boxplot.svg";
    write_file(path.string(), render_boxplot_svg(groups));
    std::printf("figure -> %s\n", path.string().c_str());
  }
  return 0;
}

int cmd_report(const fs::path& out, const std::string& scenario_flag,
               const std::string& subset_flag, bool emit_svg) {
  std::vector<BoxGroup> groups;
  std::printf("%-9s %5s %8s %8s %8s %8s %6s\n", "group", "n", "median", "mean", "q1", "q3",
              "fails");
  for (const Subset sub : expand_subsets(subset_flag)) {
    for (const Scenario sc : expand_scenarios(scenario_flag)) {
      const fs::path path = out / report_filename(sc, sub);
      if (!fs::exists(path)) continue;
      const CvReport report = report_from_json(read_file(path.string()));
      groups.push_back({group_label(sc, sub), report.box});
      std::printf("%-9s %5zu %8.4f %8.4f %8.4f %8.4f %6zu\n", group_label(sc, sub).c_str(),
                  report.per_subject_r2.size(), report.box.median, report.box.mean, report.box.q1,
                  report.box.q3, report.failed_folds.size());
    }
  }
  if (groups.empty()) throw MissingReports("no reports found in " + out.string());
  if (emit_svg) {
    const fs::path path = out / "boxplot.svg";
    write_file(path.string(), render_boxplot_svg(groups));
    std::printf("figure -> %s\n", path.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-flux augmented energy expenditure estimation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read option defaults from a key=value file");

  std::string data_root = "data";
  std::string out = "out";
  std::uint64_t seed = 42;
  int subjects = 15;
  std::string scenario_flag = "all";
  std::string subset_flag = "both";
  bool emit_svg = false;

  const auto scenario_check = CLI::IsMember({"hr", "hrhf", "hf", "all"});
  const auto subset_check = CLI::IsMember({"all", "low", "both"});

  CLI::App* synth = app.add_subcommand("synth", "Generate a seeded synthetic cohort");
  synth->add_option("--data-root", data_root, "Cohort directory to create");
  synth->add_option("--seed", seed, "Root seed; fixes the whole cohort");
  synth->add_option("--subjects", subjects, "Number of subjects");

  CLI::App* ingest = app.add_subcommand("ingest-check", "Parse a cohort and report rate stats");
  ingest->add_option("--data-root", data_root, "Cohort directory");

  CLI::App* features = app.add_subcommand("features", "Write 30 s feature tables per subject");
  features->add_option("--data-root", data_root, "Cohort directory");
  features->add_option("--out", out, "Output directory");

  CLI::App* crossval =
      app.add_subcommand("crossval", "Leave-one-subject-out cross-validation reports");
  crossval->add_option("--data-root", data_root, "Cohort directory");
  crossval->add_option("--out", out, "Output directory");
  crossval->add_option("--scenario", scenario_flag, "Predictor scenario")->check(scenario_check);
  crossval->add_option("--subset", subset_flag, "Row subset")->check(subset_check);
  crossval->add_flag("--emit-svg", emit_svg, "Also write a box-plot figure");

  CLI::App* report = app.add_subcommand("report", "Summarize existing reports");
  report->add_option("--out", out, "Directory holding report JSON files");
  report->add_option("--scenario", scenario_flag, "Predictor scenario")->check(scenario_check);
  report->add_option("--subset", subset_flag, "Row subset")->check(subset_check);
  report->add_flag("--emit-svg", emit_svg, "Also write a box-plot figure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(data_root, seed, subjects);
    if (ingest->parsed()) return cmd_ingest_check(data_root);
    if (features->parsed()) return cmd_features(data_root, out);
    if (crossval->parsed())
      return cmd_crossval(data_root, out, scenario_flag, subset_flag, emit_svg);
    if (report->parsed()) return cmd_report(out, scenario_flag, subset_flag, emit_svg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
