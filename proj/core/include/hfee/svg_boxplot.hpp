#pragma once

#include <string>
#include <vector>

#include "hfee/evaluate.hpp"

namespace hfee {

struct BoxGroup {
  std::string label;
  BoxStats stats;
};

/// Static SVG figure: one box per group with median line, whiskers, mean
/// dot and "+" outlier marks. Outliers below -0.5 are compressed into a
/// band between two gray horizontal lines under the main axis so a few
/// catastrophic folds cannot flatten the rest of the figure.
std::string render_boxplot_svg(const std::vector<BoxGroup>& groups);

}  // namespace hfee
