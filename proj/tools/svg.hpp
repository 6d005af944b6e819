#ifndef KREINTOPO_TOOLS_SVG_HPP
#define KREINTOPO_TOOLS_SVG_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace kreintopo::svg {

// Minimal SVG canvas mapping a data window to a fixed pixel viewport.
class Canvas {
 public:
  Canvas(double x_min, double x_max, double y_min, double y_max, int width = 640,
         int height = 640)
      : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width),
        height_(height) {
    append("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
           "\" viewBox=\"0 0 " + std::to_string(width_) + " " +
           std::to_string(height_) + "\">\n");
    append("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  }

  void axes() {
    line(x_min_, 0.0, x_max_, 0.0, "#888", 1.0, false);
    line(0.0, y_min_, 0.0, y_max_, "#888", 1.0, false);
  }

  void dotted_unit_circle() {
    std::string d;
    const int segments = 256;
    for (int i = 0; i <= segments; ++i) {
      const double a = 2.0 * 3.14159265358979323846 * i / segments;
      d += (i == 0 ? "M" : "L") + px(std::cos(a)) + "," + py(std::sin(a));
    }
    append("<path d=\"" + d +
           "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\" "
           "stroke-dasharray=\"3,4\"/>\n");
  }

  void point(double x, double y, const std::string& color = "#1f4e9c",
             double radius = 1.6) {
    append("<circle cx=\"" + px(x) + "\" cy=\"" + py(y) + "\" r=\"" +
           trim(radius) + "\" fill=\"" + color + "\"/>\n");
  }

  void polyline(const std::vector<std::pair<double, double>>& points,
                const std::string& color = "#b02a2a", double stroke = 1.4) {
    if (points.size() < 2) return;
    std::string d;
    for (size_t i = 0; i < points.size(); ++i)
      d += (i == 0 ? "M" : "L") + px(points[i].first) + "," + py(points[i].second);
    append("<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + trim(stroke) + "\"/>\n");
  }

  void line(double x0, double y0, double x1, double y1, const std::string& color,
            double stroke, bool dashed) {
    append("<line x1=\"" + px(x0) + "\" y1=\"" + py(y0) + "\" x2=\"" + px(x1) +
           "\" y2=\"" + py(y1) + "\" stroke=\"" + color + "\" stroke-width=\"" +
           trim(stroke) + "\"" + (dashed ? " stroke-dasharray=\"3,4\"" : "") +
           "/>\n");
  }

  std::string finish() {
    append("</svg>\n");
    return body_;
  }

 private:
  static std::string trim(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }
  std::string px(double x) const {
    const double margin = 40.0;
    return trim(margin + (x - x_min_) / (x_max_ - x_min_) * (width_ - 2 * margin));
  }
  std::string py(double y) const {
    const double margin = 40.0;
    return trim(height_ - margin - (y - y_min_) / (y_max_ - y_min_) * (height_ - 2 * margin));
  }
  void append(const std::string& s) { body_ += s; }

  double x_min_, x_max_, y_min_, y_max_;
  int width_, height_;
  std::string body_;
};

}  // namespace kreintopo::svg

#endif
