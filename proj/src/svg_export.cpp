#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "cmopla/csv.hpp"
#include "cmopla/pipeline.hpp"

namespace cmopla {
namespace {

// Plot constants. Changing any of these changes every SVG byte-for-byte.
constexpr double kCanvasWidth = 900.0;
constexpr double kCanvasHeight = 700.0;
constexpr double kAxisPadding = 0.05;  // fraction of the data range added on each side
constexpr double kPlotLeft = 80.0;
constexpr double kPlotRight = 700.0;
constexpr double kPlotTop = 50.0;
constexpr double kPlotBottom = 630.0;
constexpr double kMarkerRadius = 4.0;
constexpr int kTicks = 5;
// Viridis sampled at 8 evenly spaced stops; used for ordinal counts.
constexpr const char* kViridis8[8] = {"#440154", "#46327e", "#365c8d", "#277f8e",
                                      "#1fa187", "#4ac16d", "#a0da39", "#fde725"};
// Categorical palette for source tags; cycles past 10 sources.
constexpr const char* kCategorical[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr const char* kGoodColor = "#1fa187";
constexpr const char* kBadColor = "#bbbbbb";

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axes {
  double xmin, xmax, ymin, ymax;

  static Axes fit(const InstanceSpace& space) {
    Axes a{0, 0, 0, 0};
    if (space.points.empty()) return {-1, 1, -1, 1};
    a.xmin = a.xmax = space.points.front().z1;
    a.ymin = a.ymax = space.points.front().z2;
    for (const auto& p : space.points) {
      a.xmin = std::min(a.xmin, p.z1);
      a.xmax = std::max(a.xmax, p.z1);
      a.ymin = std::min(a.ymin, p.z2);
      a.ymax = std::max(a.ymax, p.z2);
    }
    auto pad = [](double& lo, double& hi) {
      double span = hi - lo;
      if (span <= 0.0) span = 1.0;
      lo -= kAxisPadding * span;
      hi += kAxisPadding * span;
    };
    pad(a.xmin, a.xmax);
    pad(a.ymin, a.ymax);
    return a;
  }
  double px(double x) const { return kPlotLeft + (x - xmin) / (xmax - xmin) * (kPlotRight - kPlotLeft); }
  double py(double y) const { return kPlotBottom - (y - ymin) / (ymax - ymin) * (kPlotBottom - kPlotTop); }
};

class SvgDoc {
 public:
  SvgDoc(const std::string& title, const Axes& axes) : axes_(axes) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kCanvasWidth, 0) + "\" height=\"" +
            fixed(kCanvasHeight, 0) + "\" viewBox=\"0 0 " + fixed(kCanvasWidth, 0) + " " + fixed(kCanvasHeight, 0) +
            "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(kCanvasWidth / 2, 28, title, "middle", 18);
    out_ += "<rect x=\"" + fixed(kPlotLeft) + "\" y=\"" + fixed(kPlotTop) + "\" width=\"" +
            fixed(kPlotRight - kPlotLeft) + "\" height=\"" + fixed(kPlotBottom - kPlotTop) +
            "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= kTicks; ++k) {
      const double fx = axes.xmin + (axes.xmax - axes.xmin) * k / kTicks;
      const double fy = axes.ymin + (axes.ymax - axes.ymin) * k / kTicks;
      text(axes.px(fx), kPlotBottom + 18, fixed(fx), "middle", 11);
      text(kPlotLeft - 6, axes.py(fy) + 4, fixed(fy), "end", 11);
    }
    text((kPlotLeft + kPlotRight) / 2, kPlotBottom + 45, "z1", "middle", 14);
    text(kPlotLeft - 55, (kPlotTop + kPlotBottom) / 2, "z2", "middle", 14);
  }

  void text(double x, double y, const std::string& s, const char* anchor, int size) {
    out_ += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" font-family=\"sans-serif\" font-size=\"" +
            std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
  }

  void point(const SpacePoint& p, const char* color) {
    out_ += "<circle cx=\"" + fixed(axes_.px(p.z1)) + "\" cy=\"" + fixed(axes_.py(p.z2)) + "\" r=\"" +
            fixed(kMarkerRadius, 1) + "\" fill=\"" + color + "\" stroke=\"black\" stroke-width=\"0.5\"><title>" +
            escape(p.instance) + "</title></circle>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& hull, const char* color) {
    if (hull.size() < 3) return;
    out_ += "<polygon points=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (i) out_ += ' ';
      out_ += fixed(axes_.px(hull[i].first)) + "," + fixed(axes_.py(hull[i].second));
    }
    out_ += std::string("\" fill=\"") + color + "\" fill-opacity=\"0.2\" stroke=\"" + color + "\"/>\n";
  }

  void legend(std::size_t row, const char* color, const std::string& label) {
    const double y = kPlotTop + 20.0 + 22.0 * static_cast<double>(row);
    out_ += "<circle cx=\"" + fixed(kPlotRight + 30) + "\" cy=\"" + fixed(y - 4) + "\" r=\"5.0\" fill=\"" + color +
            "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    text(kPlotRight + 42, y, label, "start", 12);
  }

  void save(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot write " + path.string());
    f << out_ << "</svg>\n";
  }

 private:
  Axes axes_;
  std::string out_;
};

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return out;
}

}  // namespace

/// Andrew's monotone chain; counter-clockwise, no repeated first point.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::filesystem::path> export_space(const InstanceSpace& space, const std::filesystem::path& out_dir) {
  if (space.points.empty()) throw ArgumentError("instance space is empty");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ArgumentError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto csv_path = out_dir / "instance_space.csv";
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + csv_path.string());
    std::vector<std::string> header{"instance", "z1", "z2", "source"};
    header.insert(header.end(), space.algorithms.begin(), space.algorithms.end());
    header.push_back("good_count");
    out << csv::join(header) << '\n';
    for (const auto& p : space.points) {
      std::vector<std::string> cells{p.instance, csv::format_double(p.z1), csv::format_double(p.z2), p.source};
      for (bool g : p.good) cells.push_back(g ? "1" : "0");
      cells.push_back(std::to_string(p.good_count));
      out << csv::join(cells) << '\n';
    }
  }
  written.push_back(csv_path);

  const Axes axes = Axes::fit(space);

  {
    SvgDoc doc("Instances by source", axes);
    std::set<std::string> tags;
    for (const auto& p : space.points) tags.insert(p.source);
    std::map<std::string, const char*> color;
    std::size_t k = 0;
    for (const auto& t : tags) {
      color[t] = kCategorical[k % 10];
      doc.legend(k, color[t], t);
      ++k;
    }
    for (const auto& p : space.points) doc.point(p, color[p.source]);
    written.push_back(out_dir / "sources.svg");
    doc.save(written.back());
  }

  {
    SvgDoc doc("Number of algorithms performing well", axes);
    const std::size_t A = space.algorithms.size();
    auto bucket = [&](std::size_t count) -> std::size_t {
      if (A <= 7) return std::min<std::size_t>(count, 7);
      return static_cast<std::size_t>(std::lround(7.0 * static_cast<double>(count) / static_cast<double>(A)));
    };
    for (std::size_t c = 0; c <= std::min<std::size_t>(A, 7); ++c) {
      doc.legend(c, kViridis8[c], A <= 7 ? std::to_string(c) : "~" + std::to_string(c * A / 7));
    }
    for (const auto& p : space.points) doc.point(p, kViridis8[bucket(p.good_count)]);
    written.push_back(out_dir / "good_count.svg");
    doc.save(written.back());
  }

  for (std::size_t a = 0; a < space.algorithms.size(); ++a) {
    SvgDoc doc(space.algorithms[a] + ": good / bad", axes);
    std::vector<std::pair<double, double>> good_pts;
    for (const auto& p : space.points) {
      if (p.good[a]) good_pts.emplace_back(p.z1, p.z2);
    }
    doc.polygon(convex_hull(good_pts), kGoodColor);
    for (const auto& p : space.points) {
      if (!p.good[a]) doc.point(p, kBadColor);
    }
    for (const auto& p : space.points) {
      if (p.good[a]) doc.point(p, kGoodColor);
    }
    doc.legend(0, kGoodColor, "good");
    doc.legend(1, kBadColor, "bad");
    written.push_back(out_dir / ("algorithm_" + file_stem(space.algorithms[a]) + ".svg"));
    doc.save(written.back());
  }
  return written;
}

}  // namespace cmopla
