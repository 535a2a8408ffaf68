#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace hfee {

/// The five exercise classes a protocol is built from.
enum class ActivityLabel {
  Sitting,
  Standing,
  Walking,
  Cycling,
  ArmErgometry,
};

inline constexpr std::array<ActivityLabel, 5> kAllActivities = {
    ActivityLabel::Sitting,   ActivityLabel::Standing,
    ActivityLabel::Walking,   ActivityLabel::Cycling,
    ActivityLabel::ArmErgometry,
};

/// Sitting, standing and walking make up the low-intensity subset.
inline constexpr bool is_low_intensity(ActivityLabel a) {
  return a == ActivityLabel::Sitting || a == ActivityLabel::Standing ||
         a == ActivityLabel::Walking;
}

std::string_view activity_name(ActivityLabel a);

/// Returns nullopt for anything that is not one of the five names.
std::optional<ActivityLabel> parse_activity(std::string_view name);

}  // namespace hfee
