#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hfee {

enum class Gender { Male, Female };

/// The five background variables the projection is built from, in the
/// fixed order (age, gender, height, weight, activity_level).
struct SubjectProfile {
  std::string subject_id;
  double age_y = 0.0;
  Gender gender = Gender::Male;
  double height_cm = 0.0;
  double weight_kg = 0.0;
  int activity_level = 1;  // 1..10

  friend bool operator==(const SubjectProfile&, const SubjectProfile&) = default;
};

inline constexpr std::size_t kProfileFeatures = 5;

/// Numeric feature vector: gender encoded male -> 0, female -> 1.
std::array<double, kProfileFeatures> profile_features(const SubjectProfile& p);

/// First principal component of the z-scored background variables.
/// `loading` is unit length with a non-negative weight coordinate, which
/// makes the fit deterministic under any input order.
struct PcaProjector {
  std::array<double, kProfileFeatures> means{};
  std::array<double, kProfileFeatures> scales{};
  std::array<double, kProfileFeatures> loading{};
};

/// Fits means/scales on the given profiles (population standard
/// deviation) and takes the leading eigenvector of the standardized
/// covariance. Throws TooFewSubjects (< 2) and DegenerateFeature (a
/// feature with zero variance, standardization undefined).
PcaProjector fit_projector(std::span<const SubjectProfile> profiles);

/// x_proj = loading . ((features - means) / scales)
double project(const PcaProjector& projector, const SubjectProfile& profile);

/// Full-precision JSON round-trip, used by the leakage checks.
std::string projector_to_json(const PcaProjector& projector);

inline constexpr const char* kSubjectsFile = "subjects.csv";

/// subjects.csv, header subject_id,age_y,gender,height_cm,weight_kg,activity_level
/// with gender in {M,F}. Throws MissingFile, MalformedRow, EmptyStream.
std::vector<SubjectProfile> load_subjects_csv(const std::filesystem::path& path);
void write_subjects_csv(std::span<const SubjectProfile> profiles,
                        const std::filesystem::path& path);

}  // namespace hfee
