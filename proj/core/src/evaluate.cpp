#include "hfee/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <nlohmann/json.hpp>

#include "hfee/errors.hpp"
#include "hfee/parallel.hpp"

namespace hfee {

std::string_view subset_name(Subset subset) {
  return subset == Subset::All ? "all" : "low";
}

std::optional<Subset> parse_subset(std::string_view name) {
  if (name == "all") return Subset::All;
  if (name == "low") return Subset::LowIntensity;
  return std::nullopt;
}

FeatureTable filter_subset(const FeatureTable& table, Subset subset) {
  if (subset == Subset::All) return table;
  FeatureTable out;
  out.subject_id = table.subject_id;
  for (const FeatureRow& row : table.rows)
    if (is_low_intensity(row.activity)) out.rows.push_back(row);
  return out;
}

double r_squared(std::span<const double> y, std::span<const double> y_hat) {
  if (y.empty()) throw Error("r_squared: empty input");
  if (y.size() != y_hat.size()) throw Error("r_squared: length mismatch");

  const auto n = static_cast<double>(y.size());
  double mean = 0.0;
  for (const double v : y) mean += v;
  mean /= n;

  double ss_res = 0.0;
  double ss_base = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - y_hat[i];
    const double b = y[i] - mean;
    ss_res += r * r;
    ss_base += b * b;
  }
  if (ss_base == 0.0)
    throw ConstantTruth("r_squared: constant ground truth, baseline variance is zero");
  return 1.0 - (ss_res / n) / (ss_base / n);
}

namespace {

/// Quartile by linear interpolation of order statistics on sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw Error("box_stats: no values");
  std::sort(values.begin(), values.end());

  BoxStats box;
  double sum = 0.0;
  for (const double v : values) sum += v;
  box.mean = sum / static_cast<double>(values.size());
  box.q1 = quantile_sorted(values, 0.25);
  box.median = quantile_sorted(values, 0.50);
  box.q3 = quantile_sorted(values, 0.75);

  const double iqr = box.q3 - box.q1;
  const double lo_fence = box.q1 - 1.5 * iqr;
  const double hi_fence = box.q3 + 1.5 * iqr;

  box.whisker_low = box.q1;
  box.whisker_high = box.q3;
  bool have_low = false;
  bool have_high = false;
  for (const double v : values) {
    if (v < lo_fence || v > hi_fence) {
      box.outliers.push_back(v);
      continue;
    }
    if (!have_low) {
      box.whisker_low = v;
      have_low = true;
    }
    box.whisker_high = v;
    have_high = true;
  }
  (void)have_high;
  return box;
}

CvReport run_loocv(const std::vector<FeatureTable>& tables,
                   const std::vector<SubjectProfile>& profiles, const CvConfig& config) {
  if (tables.size() < 3)
    throw TooFewSubjects("leave-one-subject-out needs at least 3 subjects, got " +
                         std::to_string(tables.size()));

  std::map<std::string, const SubjectProfile*> profile_by_id;
  for (const SubjectProfile& p : profiles) profile_by_id[p.subject_id] = &p;

  // Deterministic fold order regardless of input order.
  std::vector<const FeatureTable*> ordered;
  ordered.reserve(tables.size());
  for (const FeatureTable& t : tables) {
    if (!profile_by_id.contains(t.subject_id))
      throw MissingProjection("no profile for subject '" + t.subject_id + "'");
    ordered.push_back(&t);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const FeatureTable* a, const FeatureTable* b) {
              return a->subject_id < b->subject_id;
            });

  std::vector<FeatureTable> filtered;
  filtered.reserve(ordered.size());
  for (const FeatureTable* t : ordered) filtered.push_back(filter_subset(*t, config.subset));

  const std::size_t n_subjects = ordered.size();
  std::vector<std::optional<FoldResult>> results(n_subjects);
  std::vector<std::optional<FoldFailure>> failures(n_subjects);

  parallel_for_index(n_subjects, [&](std::size_t k) {
    const std::string& held_out_id = ordered[k]->subject_id;
    try {
      std::vector<SubjectProfile> train_profiles;
      std::vector<FeatureTable> train_tables;
      train_profiles.reserve(n_subjects - 1);
      train_tables.reserve(n_subjects - 1);
      for (std::size_t i = 0; i < n_subjects; ++i) {
        if (i == k) continue;
        train_profiles.push_back(*profile_by_id.at(ordered[i]->subject_id));
        train_tables.push_back(filtered[i]);
      }

      // The projector sees training subjects only; it then projects
      // everyone, held-out subject included.
      const PcaProjector projector = fit_projector(train_profiles);
      std::map<std::string, double> x_proj;
      for (const auto& [id, profile] : profile_by_id) x_proj[id] = project(projector, *profile);

      const Design train = assemble_design(train_tables, x_proj, config.scenario);
      const ModelFit fit = fit_ols(train.H, train.y, config.scenario);

      if (filtered[k].rows.empty())
        throw SubsetEmpty("subject '" + held_out_id + "' has no rows in subset '" +
                          std::string(subset_name(config.subset)) + "'");
      const Design test = assemble_design({filtered[k]}, x_proj, config.scenario);
      const Eigen::VectorXd y_hat = predict(fit, test.H);

      FoldResult fold;
      fold.subject_id = held_out_id;
      fold.rows_evaluated = static_cast<std::size_t>(test.y.size());
      fold.r2 = r_squared({test.y.data(), static_cast<std::size_t>(test.y.size())},
                          {y_hat.data(), static_cast<std::size_t>(y_hat.size())});
      fold.fit = fit;
      fold.projector = projector;
      results[k] = std::move(fold);
    } catch (const Error& e) {
      failures[k] = FoldFailure{held_out_id, e.what()};
    }
  });

  CvReport report;
  report.config = config;
  std::vector<double> r2_values;
  for (std::size_t k = 0; k < n_subjects; ++k) {
    if (results[k]) {
      report.per_subject_r2[results[k]->subject_id] = results[k]->r2;
      r2_values.push_back(results[k]->r2);
      report.folds.push_back(std::move(*results[k]));
    } else if (failures[k]) {
      report.failed_folds.push_back(std::move(*failures[k]));
    }
  }
  if (r2_values.empty()) throw Error("every cross-validation fold failed");
  report.box = box_stats(std::move(r2_values));
  return report;
}

std::string report_to_json(const CvReport& report) {
  nlohmann::json doc;
  doc["config"] = {{"scenario", std::string(scenario_name(report.config.scenario))},
                   {"subset", std::string(subset_name(report.config.subset))}};
  doc["per_subject_r2"] = report.per_subject_r2;
  doc["box"] = {{"median", report.box.median},
                {"mean", report.box.mean},
                {"q1", report.box.q1},
                {"q3", report.box.q3},
                {"whisker_low", report.box.whisker_low},
                {"whisker_high", report.box.whisker_high},
                {"outliers", report.box.outliers}};
  doc["failed_folds"] = nlohmann::json::array();
  for (const FoldFailure& f : report.failed_folds)
    doc["failed_folds"].push_back({{"subject_id", f.subject_id}, {"error", f.error}});
  return doc.dump(2) + "\n";
}

CvReport report_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  CvReport report;

  const auto scenario = parse_scenario(doc.at("config").at("scenario").get<std::string>());
  const auto subset = parse_subset(doc.at("config").at("subset").get<std::string>());
  if (!scenario || !subset) throw Error("unknown scenario/subset in report JSON");
  report.config = {*scenario, *subset};

  report.per_subject_r2 =
      doc.at("per_subject_r2").get<std::map<std::string, double>>();

  const auto& box = doc.at("box");
  report.box.median = box.at("median").get<double>();
  report.box.mean = box.at("mean").get<double>();
  report.box.q1 = box.at("q1").get<double>();
  report.box.q3 = box.at("q3").get<double>();
  report.box.whisker_low = box.at("whisker_low").get<double>();
  report.box.whisker_high = box.at("whisker_high").get<double>();
  report.box.outliers = box.at("outliers").get<std::vector<double>>();

  for (const auto& f : doc.at("failed_folds"))
    report.failed_folds.push_back(
        {f.at("subject_id").get<std::string>(), f.at("error").get<std::string>()});
  return report;
}

}  // namespace hfee
