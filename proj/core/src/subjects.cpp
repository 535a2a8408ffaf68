#include "hfee/subjects.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "hfee/csv.hpp"
#include "hfee/errors.hpp"

namespace hfee {

std::array<double, kProfileFeatures> profile_features(const SubjectProfile& p) {
  return {p.age_y, p.gender == Gender::Female ? 1.0 : 0.0, p.height_cm, p.weight_kg,
          static_cast<double>(p.activity_level)};
}

PcaProjector fit_projector(std::span<const SubjectProfile> profiles) {
  const std::size_t n = profiles.size();
  if (n < 2)
    throw TooFewSubjects("PCA projection needs at least 2 profiles, got " + std::to_string(n));

  Eigen::MatrixXd x(n, kProfileFeatures);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = profile_features(profiles[i]);
    for (std::size_t j = 0; j < kProfileFeatures; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[j];
  }

  PcaProjector proj;
  for (std::size_t j = 0; j < kProfileFeatures; ++j) {
    const auto col = x.col(static_cast<Eigen::Index>(j));
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (!(sd > 0.0))
      throw DegenerateFeature("feature " + std::to_string(j) +
                              " is constant across profiles; standardization undefined");
    proj.means[j] = mean;
    proj.scales[j] = sd;
    x.col(static_cast<Eigen::Index>(j)) = (col.array() - mean) / sd;
  }

  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition failed");

  // Eigenvalues come out ascending; the leading component is last.
  Eigen::VectorXd lead = eig.eigenvectors().col(kProfileFeatures - 1);
  lead.normalize();

  // Sign convention: non-negative weight coordinate; fall back to the
  // first nonzero coordinate so the fit is deterministic either way.
  double pivot = lead(3);
  if (pivot == 0.0) {
    for (Eigen::Index j = 0; j < lead.size(); ++j) {
      if (lead(j) != 0.0) {
        pivot = lead(j);
        break;
      }
    }
  }
  if (pivot < 0.0) lead = -lead;

  for (std::size_t j = 0; j < kProfileFeatures; ++j)
    proj.loading[j] = lead(static_cast<Eigen::Index>(j));
  return proj;
}

double project(const PcaProjector& projector, const SubjectProfile& profile) {
  const auto f = profile_features(profile);
  double dot = 0.0;
  for (std::size_t j = 0; j < kProfileFeatures; ++j)
    dot += projector.loading[j] * (f[j] - projector.means[j]) / projector.scales[j];
  return dot;
}

std::string projector_to_json(const PcaProjector& projector) {
  nlohmann::json doc;
  doc["means"] = projector.means;
  doc["scales"] = projector.scales;
  doc["loading"] = projector.loading;
  return doc.dump();
}

std::vector<SubjectProfile> load_subjects_csv(const std::filesystem::path& path) {
  std::vector<SubjectProfile> profiles;
  std::set<std::string> seen;
  const std::string file = path.string();
  read_csv(file, "subject_id,age_y,gender,height_cm,weight_kg,activity_level", 6,
           [&](std::size_t line, const std::vector<std::string_view>& f) {
             SubjectProfile p;
             p.subject_id = std::string(f[0]);
             if (p.subject_id.empty()) throw MalformedRow(file, line, "empty subject_id");
             if (!seen.insert(p.subject_id).second)
               throw MalformedRow(file, line, "duplicate subject_id '" + p.subject_id + "'");

             const auto age = parse_double(f[1]);
             if (!age || !(*age > 0.0)) throw MalformedRow(file, line, "age_y must be positive");
             p.age_y = *age;

             if (f[2] == "M")
               p.gender = Gender::Male;
             else if (f[2] == "F")
               p.gender = Gender::Female;
             else
               throw MalformedRow(file, line, "gender must be M or F");

             const auto height = parse_double(f[3]);
             if (!height || !(*height > 0.0))
               throw MalformedRow(file, line, "height_cm must be positive");
             p.height_cm = *height;

             const auto weight = parse_double(f[4]);
             if (!weight || !(*weight > 0.0))
               throw MalformedRow(file, line, "weight_kg must be positive");
             p.weight_kg = *weight;

             int level = 0;
             const auto res = std::from_chars(f[5].data(), f[5].data() + f[5].size(), level);
             if (res.ec != std::errc() || res.ptr != f[5].data() + f[5].size() || level < 1 ||
                 level > 10)
               throw MalformedRow(file, line, "activity_level must be an integer in 1..10");
             p.activity_level = level;

             profiles.push_back(std::move(p));
           });
  return profiles;
}

void write_subjects_csv(std::span<const SubjectProfile> profiles,
                        const std::filesystem::path& path) {
  std::string buf = "subject_id,age_y,gender,height_cm,weight_kg,activity_level\n";
  for (const SubjectProfile& p : profiles) {
    buf += p.subject_id;
    buf.push_back(',');
    buf += format_double(p.age_y);
    buf.push_back(',');
    buf += p.gender == Gender::Male ? 'M' : 'F';
    buf.push_back(',');
    buf += format_double(p.height_cm);
    buf.push_back(',');
    buf += format_double(p.weight_kg);
    buf.push_back(',');
    buf += std::to_string(p.activity_level);
    buf.push_back('\n');
  }
  write_file(path.string(), buf);
}

}  // namespace hfee
