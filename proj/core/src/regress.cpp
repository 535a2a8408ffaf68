#include "hfee/regress.hpp"

#include <Eigen/SVD>

#include <nlohmann/json.hpp>

#include "hfee/errors.hpp"

namespace hfee {

namespace {

constexpr double kRankTolerance = 1e-10;  // relative to the largest singular value

double column_value(const std::string& name, const FeatureRow& row, double x_proj) {
  if (name == "intercept") return 1.0;
  if (name == "hr") return row.hr_bpm;
  if (name == "hf") return row.hf;
  if (name == "hf_med_short") return row.hf_med_short;
  if (name == "hf_med_long") return row.hf_med_long;
  if (name == "temp") return row.temp;
  if (name == "temp_med_short") return row.temp_med_short;
  if (name == "temp_med_long") return row.temp_med_long;
  if (name == "x_proj") return x_proj;
  throw SchemaMismatch("unknown design column '" + name + "'");
}

}  // namespace

std::vector<std::string> scenario_schema(Scenario scenario) {
  switch (scenario) {
    case Scenario::Hr:
      return {"intercept", "hr", "x_proj"};
    case Scenario::HrHf:
      return {"intercept", "hr",   "hf",           "hf_med_short", "hf_med_long",
              "temp",      "temp_med_short", "temp_med_long", "x_proj"};
    case Scenario::Hf:
      return {"intercept", "hf",           "hf_med_short",  "hf_med_long",
              "temp",      "temp_med_short", "temp_med_long", "x_proj"};
  }
  throw SchemaMismatch("invalid scenario");
}

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::Hr: return "hr";
    case Scenario::HrHf: return "hrhf";
    case Scenario::Hf: return "hf";
  }
  return "invalid";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const Scenario s : kAllScenarios)
    if (scenario_name(s) == name) return s;
  return std::nullopt;
}

Design assemble_design(const std::vector<FeatureTable>& tables,
                       const std::map<std::string, double>& x_proj_by_subject,
                       Scenario scenario) {
  const auto schema = scenario_schema(scenario);
  const auto p = static_cast<Eigen::Index>(schema.size());

  Eigen::Index n = 0;
  for (const FeatureTable& t : tables) n += static_cast<Eigen::Index>(t.rows.size());

  Design d;
  d.H.resize(n, p);
  d.y.resize(n);

  Eigen::Index i = 0;
  for (const FeatureTable& t : tables) {
    const auto it = x_proj_by_subject.find(t.subject_id);
    if (it == x_proj_by_subject.end())
      throw MissingProjection("no x_proj for subject '" + t.subject_id + "'");
    const double x_proj = it->second;
    for (const FeatureRow& row : t.rows) {
      for (Eigen::Index j = 0; j < p; ++j)
        d.H(i, j) = column_value(schema[static_cast<std::size_t>(j)], row, x_proj);
      d.y(i) = row.ee_w;
      ++i;
    }
  }
  return d;
}

ModelFit fit_ols(const Eigen::MatrixXd& H, const Eigen::VectorXd& y, Scenario scenario) {
  const Eigen::Index n = H.rows();
  const Eigen::Index p = H.cols();
  if (y.size() != n) throw SchemaMismatch("y length does not match H rows");
  if (n < p)
    throw TooFewRows("need at least " + std::to_string(p) + " rows to fit " + std::to_string(p) +
                     " parameters, got " + std::to_string(n));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTolerance * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++rank;
  if (rank < p)
    throw RankDeficient("design matrix has effective rank " + std::to_string(rank) + " < " +
                        std::to_string(p));

  ModelFit fit;
  fit.scenario = scenario;
  fit.schema = scenario_schema(scenario);
  if (static_cast<Eigen::Index>(fit.schema.size()) != p) {
    // Free-form design: keep the theta/schema length invariant with
    // positional column names.
    fit.schema.clear();
    for (Eigen::Index j = 0; j < p; ++j) fit.schema.push_back("c" + std::to_string(j));
  }
  fit.theta = svd.solve(y);
  fit.n_rows = static_cast<std::size_t>(n);
  fit.residual_mean = (y - H * fit.theta).mean();
  return fit;
}

Eigen::VectorXd predict(const ModelFit& fit, const Eigen::MatrixXd& H) {
  if (H.cols() != fit.theta.size())
    throw SchemaMismatch("design has " + std::to_string(H.cols()) + " columns, fit expects " +
                         std::to_string(fit.theta.size()));
  return H * fit.theta;
}

std::string model_fit_to_json(const ModelFit& fit) {
  nlohmann::json doc;
  doc["scenario"] = std::string(scenario_name(fit.scenario));
  doc["schema"] = fit.schema;
  doc["theta"] = std::vector<double>(fit.theta.data(), fit.theta.data() + fit.theta.size());
  doc["n_rows"] = fit.n_rows;
  doc["residual_mean"] = fit.residual_mean;
  return doc.dump();
}

ModelFit model_fit_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  ModelFit fit;
  const auto scenario = parse_scenario(doc.at("scenario").get<std::string>());
  if (!scenario) throw SchemaMismatch("unknown scenario in fit JSON");
  fit.scenario = *scenario;
  fit.schema = doc.at("schema").get<std::vector<std::string>>();
  const auto theta = doc.at("theta").get<std::vector<double>>();
  if (theta.size() != fit.schema.size())
    throw SchemaMismatch("theta length does not match schema in fit JSON");
  fit.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                                static_cast<Eigen::Index>(theta.size()));
  fit.n_rows = doc.at("n_rows").get<std::size_t>();
  fit.residual_mean = doc.at("residual_mean").get<double>();
  return fit;
}

}  // namespace hfee
