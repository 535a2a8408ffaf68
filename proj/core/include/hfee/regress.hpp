#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "hfee/features.hpp"

namespace hfee {

/// Predictor scenarios. Every design matrix carries a leading intercept
/// column of ones on top of the scenario's predictors.
enum class Scenario { Hr, HrHf, Hf };

inline constexpr std::array<Scenario, 3> kAllScenarios = {Scenario::Hr, Scenario::HrHf,
                                                          Scenario::Hf};

/// Ordered design-matrix column names, intercept first.
///   Hr:   intercept, hr, x_proj
///   HrHf: intercept, hr, hf, hf_med_short, hf_med_long, temp,
///         temp_med_short, temp_med_long, x_proj
///   Hf:   HrHf minus hr
std::vector<std::string> scenario_schema(Scenario scenario);

std::string_view scenario_name(Scenario scenario);            // "hr", "hrhf", "hf"
std::optional<Scenario> parse_scenario(std::string_view name);

struct Design {
  Eigen::MatrixXd H;  // n x p, columns follow scenario_schema
  Eigen::VectorXd y;  // ee_w per row
};

/// Stacks all rows of the given tables in order. Throws
/// MissingProjection when a table's subject has no x_proj entry.
Design assemble_design(const std::vector<FeatureTable>& tables,
                       const std::map<std::string, double>& x_proj_by_subject,
                       Scenario scenario);

struct ModelFit {
  Scenario scenario = Scenario::Hr;
  std::vector<std::string> schema;
  Eigen::VectorXd theta;
  std::size_t n_rows = 0;
  double residual_mean = 0.0;  // training-sample residual mean diagnostic
};

/// Least-squares fit through a singular value decomposition. The result
/// agrees with the normal-equations pseudoinverse (H^T H)^-1 H^T y to
/// 1e-8 relative on well-conditioned inputs; the SVD route stays stable
/// when H^T H would not. Throws TooFewRows (n < p) and RankDeficient
/// (effective rank < p at tolerance 1e-10 * largest singular value).
ModelFit fit_ols(const Eigen::MatrixXd& H, const Eigen::VectorXd& y, Scenario scenario);

/// y_hat = H theta. Throws SchemaMismatch when column counts differ.
Eigen::VectorXd predict(const ModelFit& fit, const Eigen::MatrixXd& H);

/// Full-precision JSON round-trip of a fit.
std::string model_fit_to_json(const ModelFit& fit);
ModelFit model_fit_from_json(const std::string& text);

}  // namespace hfee
