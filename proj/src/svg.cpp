#include "equidep/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace equidep {

void write_scatter_svg(const std::string& path, const std::vector<double>& xs,
                       const std::vector<double>& ys, const std::string& title) {
  if (xs.size() != ys.size()) throw std::invalid_argument("write_scatter_svg: length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!xs.empty()) {
    xmin = *std::min_element(xs.begin(), xs.end());
    xmax = *std::max_element(xs.begin(), xs.end());
    ymin = *std::min_element(ys.begin(), ys.end());
    ymax = *std::max_element(ys.begin(), ys.end());
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  const int size = 480;
  const int margin = 32;
  const double sx = (size - 2.0 * margin) / (xmax - xmin);
  const double sy = (size - 2.0 * margin) / (ymax - ymin);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\" font-family=\"sans-serif\">"
      << title << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size - 2 * margin
      << "\" height=\"" << size - 2 * margin << "\" fill=\"none\" stroke=\"#999\"/>\n";
  char buf[128];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double px = margin + (xs[i] - xmin) * sx;
    const double py = size - margin - (ys[i] - ymin) * sy;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"#1f77b4\"/>\n",
                  px, py);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace equidep
