#include "seqsmooth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "seqsmooth/csvio.hpp"

namespace seqsmooth {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 440;
constexpr int kMargin = 56;

const char* kPalette[] = {"#c0392b", "#27ae60", "#2980b9", "#8e44ad",
                          "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

}  // namespace

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::vector<ChartSeries>& series,
                          bool log_log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  auto tx = [&](double v) { return log_log ? std::log10(v) : v; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_log && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, tx(s.y[i]));
      ymax = std::max(ymax, tx(s.y[i]));
    }
  if (!(xmin < xmax)) xmax = xmin + 1.0;
  if (!(ymin < ymax)) ymax = ymin + 1.0;

  const double px = (kWidth - 2.0 * kMargin) / (xmax - xmin);
  const double py = (kHeight - 2.0 * kMargin) / (ymax - ymin);
  auto sx = [&](double v) { return kMargin + (tx(v) - xmin) * px; };
  auto sy = [&](double v) { return kHeight - kMargin - (tx(v) - ymin) * py; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin
      << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
      << kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";

  // Axis extent labels.
  auto label = [&](double xpix, double ypix, double value,
                   const char* anchor) {
    out << "<text x=\"" << xpix << "\" y=\"" << ypix << "\" text-anchor=\""
        << anchor << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(log_log ? std::pow(10.0, value) : value)
        << "</text>\n";
  };
  label(kMargin, kHeight - kMargin + 16.0, xmin, "middle");
  label(kWidth - kMargin, kHeight - kMargin + 16.0, xmax, "middle");
  label(kMargin - 6.0, kHeight - kMargin, ymin, "end");
  label(kMargin - 6.0, kMargin + 4.0, ymax, "end");

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_log && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
      out << format_double(sx(s.x[i])) << ',' << format_double(sy(s.y[i]))
          << ' ';
    }
    out << "\"/>\n";
    const double ly = kMargin + 16.0 * static_cast<double>(si);
    out << "<rect x=\"" << kWidth - kMargin - 130 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << kWidth - kMargin - 115 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace seqsmooth
