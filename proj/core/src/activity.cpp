#include "hfee/activity.hpp"

namespace hfee {

std::string_view activity_name(ActivityLabel a) {
  switch (a) {
    case ActivityLabel::Sitting: return "sitting";
    case ActivityLabel::Standing: return "standing";
    case ActivityLabel::Walking: return "walking";
    case ActivityLabel::Cycling: return "cycling";
    case ActivityLabel::ArmErgometry: return "arm_ergometry";
  }
  return "unknown";
}

std::optional<ActivityLabel> parse_activity(std::string_view name) {
  for (const ActivityLabel a : kAllActivities)
    if (activity_name(a) == name) return a;
  return std::nullopt;
}

}  // namespace hfee
