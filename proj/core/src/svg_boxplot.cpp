#include "hfee/svg_boxplot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "hfee/errors.hpp"

namespace hfee {

namespace {

constexpr double kCompressBelow = -0.5;  // outliers under this go into the band

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

void line(std::string& s, double x1, double y1, double x2, double y2, const char* style) {
  s += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
       fmt(y2) + "\" " + style + "/>\n";
}

void plus_mark(std::string& s, double x, double y) {
  line(s, x - 4, y, x + 4, y, "stroke=\"#cc2222\" stroke-width=\"1.4\"");
  line(s, x, y - 4, x, y + 4, "stroke=\"#cc2222\" stroke-width=\"1.4\"");
}

}  // namespace

std::string render_boxplot_svg(const std::vector<BoxGroup>& groups) {
  if (groups.empty()) throw Error("render_boxplot_svg: no groups");

  // Everything that has to stay on the main axis decides its lower end.
  double lo = kCompressBelow;
  bool compressed = false;
  double compress_min = kCompressBelow;
  for (const BoxGroup& g : groups) {
    lo = std::min({lo, g.stats.whisker_low, g.stats.mean});
    for (const double v : g.stats.outliers) {
      if (v < kCompressBelow) {
        compressed = true;
        compress_min = std::min(compress_min, v);
      } else {
        lo = std::min(lo, v);
      }
    }
  }
  lo = std::floor(lo * 4.0) / 4.0;  // snap to the 0.25 tick grid
  const double hi = 1.0;

  const double margin_left = 64;
  const double margin_top = 24;
  const double group_w = 92;
  const double box_w = 46;
  const double main_h = 320;
  const double band_gap = 18;
  const double band_h = compressed ? 56 : 0;
  const double label_h = 36;
  const double width = margin_left + group_w * static_cast<double>(groups.size()) + 24;
  const double band_top = margin_top + main_h + band_gap;
  const double height = band_top + band_h + label_h;

  const auto y_of = [&](double v) {
    return margin_top + (hi - v) / (hi - lo) * main_h;
  };
  const auto y_band = [&](double v) {
    if (compress_min >= kCompressBelow) return band_top + band_h / 2.0;
    const double f = (kCompressBelow - v) / (kCompressBelow - compress_min);
    return band_top + f * band_h;
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
       fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axis, ticks every 0.25, light gridline at zero.
  const double axis_x = margin_left - 10;
  line(s, axis_x, y_of(hi), axis_x, y_of(lo), "stroke=\"#222222\" stroke-width=\"1\"");
  for (double v = lo; v <= hi + 1e-9; v += 0.25) {
    const double y = y_of(v);
    line(s, axis_x - 4, y, axis_x, y, "stroke=\"#222222\" stroke-width=\"1\"");
    s += "<text x=\"" + fmt(axis_x - 8) + "\" y=\"" + fmt(y + 3.5) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(v) +
         "</text>\n";
  }
  line(s, axis_x, y_of(0.0), width - 12, y_of(0.0),
       "stroke=\"#bbbbbb\" stroke-width=\"0.8\" stroke-dasharray=\"3,3\"");

  if (compressed) {
    // Gray rails bounding the compressed-outlier band.
    line(s, axis_x, band_top, width - 12, band_top, "stroke=\"#999999\" stroke-width=\"1\"");
    line(s, axis_x, band_top + band_h, width - 12, band_top + band_h,
         "stroke=\"#999999\" stroke-width=\"1\"");
    s += "<text x=\"" + fmt(axis_x - 8) + "\" y=\"" + fmt(band_top + band_h / 2.0 + 3.5) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">&lt; " +
         fmt(kCompressBelow) + "</text>\n";
  }

  for (std::size_t i = 0; i < groups.size(); ++i) {
    const BoxStats& b = groups[i].stats;
    const double cx = margin_left + group_w * (static_cast<double>(i) + 0.5);
    const double xl = cx - box_w / 2.0;
    const double xr = cx + box_w / 2.0;

    // Whiskers with caps, then the box over them.
    line(s, cx, y_of(b.q3), cx, y_of(b.whisker_high),
         "stroke=\"#222222\" stroke-width=\"1\" stroke-dasharray=\"4,3\"");
    line(s, cx, y_of(b.q1), cx, y_of(b.whisker_low),
         "stroke=\"#222222\" stroke-width=\"1\" stroke-dasharray=\"4,3\"");
    line(s, cx - box_w / 4.0, y_of(b.whisker_high), cx + box_w / 4.0, y_of(b.whisker_high),
         "stroke=\"#222222\" stroke-width=\"1\"");
    line(s, cx - box_w / 4.0, y_of(b.whisker_low), cx + box_w / 4.0, y_of(b.whisker_low),
         "stroke=\"#222222\" stroke-width=\"1\"");
    s += "<rect x=\"" + fmt(xl) + "\" y=\"" + fmt(y_of(b.q3)) + "\" width=\"" + fmt(box_w) +
         "\" height=\"" + fmt(y_of(b.q1) - y_of(b.q3)) +
         "\" fill=\"#eef3fb\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    line(s, xl, y_of(b.median), xr, y_of(b.median), "stroke=\"#cc2222\" stroke-width=\"1.6\"");
    s += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(y_of(b.mean)) +
         "\" r=\"3\" fill=\"#111111\"/>\n";

    for (const double v : b.outliers) {
      if (v < kCompressBelow)
        plus_mark(s, cx, y_band(v));
      else
        plus_mark(s, cx, y_of(v));
    }

    s += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         groups[i].label + "</text>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace hfee
