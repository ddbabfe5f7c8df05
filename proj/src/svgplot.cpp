#include "valleys/svgplot.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace valleys {
namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 40.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Mapper {
  double lo0, lo1, scale;
  double px(double x) const { return kMargin + (x - lo0) * scale; }
  // SVG y axis points down.
  double py(double y, double hi1) const {
    return kMargin + (hi1 - y) * scale;
  }
};

/// Clip the line w·x = θ to the domain rectangle; empty when it misses.
std::vector<std::pair<double, double>> clip_line(const Hyperplane& h,
                                                 const DomainBox& box) {
  std::vector<std::pair<double, double>> pts;
  const double a = h.w[0], b = h.w[1], t = h.theta;
  auto push = [&](double x, double y) {
    for (const auto& p : pts) {
      if (std::abs(p.first - x) < 1e-9 && std::abs(p.second - y) < 1e-9) return;
    }
    pts.emplace_back(x, y);
  };
  // Intersections with the four box edges.
  if (std::abs(b) > 1e-12) {
    for (double x : {box.lo[0], box.hi[0]}) {
      const double y = (t - a * x) / b;
      if (y >= box.lo[1] - 1e-9 && y <= box.hi[1] + 1e-9) push(x, y);
    }
  }
  if (std::abs(a) > 1e-12) {
    for (double y : {box.lo[1], box.hi[1]}) {
      const double x = (t - b * y) / a;
      if (x >= box.lo[0] - 1e-9 && x <= box.hi[0] + 1e-9) push(x, y);
    }
  }
  return pts;
}

void draw_planes(std::ostringstream& out, const Pool& pool,
                 const DomainBox& box, const Mapper& m, bool dashed) {
  for (const auto& h : pool.planes) {
    const auto pts = clip_line(h, box);
    if (pts.size() < 2) continue;
    out << "  <line x1=\"" << m.px(pts[0].first) << "\" y1=\""
        << m.py(pts[0].second, box.hi[1]) << "\" x2=\"" << m.px(pts[1].first)
        << "\" y2=\"" << m.py(pts[1].second, box.hi[1])
        << "\" stroke=\"" << (dashed ? "#bbbbbb" : "#333333")
        << "\" stroke-width=\"1.2\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << "/>\n";
  }
}

}  // namespace

std::string render_svg_2d(const Pool& pool,
                          const std::vector<LabeledSample>& samples,
                          const DomainBox& domain, const Pool* before) {
  if (pool.dim != 2) {
    throw std::invalid_argument("render_svg_2d: plots are 2-D only");
  }
  domain.validate();
  const double edge = std::max(domain.edge(0), domain.edge(1));
  Mapper m{domain.lo[0], domain.lo[1], (kCanvas - 2 * kMargin) / edge};

  std::ostringstream out;
  const double side = kCanvas;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side
      << "\" height=\"" << side << "\" viewBox=\"0 0 " << side << ' ' << side
      << "\">\n";
  out << "  <rect x=\"" << m.px(domain.lo[0]) << "\" y=\""
      << m.py(domain.hi[1], domain.hi[1]) << "\" width=\""
      << domain.edge(0) * m.scale << "\" height=\"" << domain.edge(1) * m.scale
      << "\" fill=\"none\" stroke=\"#888888\"/>\n";
  for (const auto& s : samples) {
    const char* color =
        kPalette[static_cast<std::size_t>(s.label < 0 ? 0 : s.label) % 8];
    out << "  <circle cx=\"" << m.px(s.x[0]) << "\" cy=\""
        << m.py(s.x[1], domain.hi[1]) << "\" r=\"1.6\" fill=\"" << color
        << "\" fill-opacity=\"0.55\"/>\n";
  }
  if (before) draw_planes(out, *before, domain, m, /*dashed=*/true);
  draw_planes(out, pool, domain, m, /*dashed=*/false);
  out << "</svg>\n";
  return out.str();
}

void write_svg_2d(const std::string& path, const Pool& pool,
                  const std::vector<LabeledSample>& samples,
                  const DomainBox& domain, const Pool* before) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << render_svg_2d(pool, samples, domain, before);
}

}  // namespace valleys
