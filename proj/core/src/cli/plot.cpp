#include "spinbath/cli/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "spinbath/errors.hpp"

namespace spinbath::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
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

bool numeric_column(const ResultEnvelope& env, std::size_t col) {
  if (env.rows.empty()) return false;
  return std::all_of(env.rows.begin(), env.rows.end(),
                     [&](const auto& row) { return std::holds_alternative<double>(row[col]); });
}

double value(const ResultEnvelope& env, std::size_t row, std::size_t col) {
  return std::get<double>(env.rows[row][col]);
}

// Tick spacing from the 1-2-5 sequence giving roughly five intervals.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return !(lo <= hi); }
  void pad() {
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::vector<std::string> default_plot_columns(const ResultEnvelope& envelope) {
  std::vector<std::string> all;
  std::vector<std::string> abs_cols;
  for (std::size_t c = 1; c < envelope.columns.size(); ++c) {
    if (!numeric_column(envelope, c)) continue;
    all.push_back(envelope.columns[c].name);
    if (envelope.columns[c].name.rfind("abs_", 0) == 0) abs_cols.push_back(envelope.columns[c].name);
  }
  return abs_cols.empty() ? all : abs_cols;
}

std::string render_svg(const ResultEnvelope& envelope, std::vector<std::string> y_columns) {
  if (envelope.columns.size() < 2 || envelope.rows.empty()) {
    throw InvalidArgument("unplottable envelope: needs an x column, a y column and rows");
  }
  if (!numeric_column(envelope, 0)) throw InvalidArgument("unplottable envelope: x column is not numeric");
  if (y_columns.empty()) y_columns = default_plot_columns(envelope);
  if (y_columns.empty()) throw InvalidArgument("unplottable envelope: no numeric y columns");

  std::vector<std::size_t> ys;
  for (const auto& name : y_columns) {
    const std::size_t c = envelope.column_index(name);
    if (!numeric_column(envelope, c)) {
      throw InvalidArgument("unplottable envelope: column '" + name + "' is not numeric");
    }
    ys.push_back(c);
  }

  Range xr;
  Range yr;
  for (std::size_t r = 0; r < envelope.rows.size(); ++r) {
    xr.add(value(envelope, r, 0));
    for (std::size_t c : ys) yr.add(value(envelope, r, c));
  }
  if (xr.empty()) throw InvalidArgument("unplottable envelope: empty x range");
  if (yr.empty()) throw InvalidArgument("unplottable envelope: empty y range");
  xr.pad();
  yr.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
         fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " + fmt("%.0f", kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" +
         fmt("%.2f", pw) + "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const auto ticks = [&](const Range& range, bool horizontal) {
    const double step = tick_step(range.hi - range.lo);
    for (double t = std::ceil(range.lo / step) * step; t <= range.hi + 1e-9 * step; t += step) {
      const double tv = std::abs(t) < 1e-12 * step ? 0.0 : t;
      if (horizontal) {
        const double x = px(tv);
        svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" +
               fmt("%.2f", x) + "\" y2=\"" + fmt("%.2f", kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kTop + ph + 18) +
               "\" text-anchor=\"middle\">" + fmt("%.6g", tv) + "</text>\n";
      } else {
        const double y = py(tv);
        svg += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
               fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", y + 4) +
               "\" text-anchor=\"end\">" + fmt("%.6g", tv) + "</text>\n";
      }
    }
  };
  ticks(xr, true);
  ticks(yr, false);

  const auto label = [&](std::size_t c) {
    const auto& col = envelope.columns[c];
    return col.unit == "1" ? col.name : col.name + " (" + col.unit + ")";
  };
  svg += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape(label(0)) + "</text>\n";
  const std::string ylabel = ys.size() == 1 ? label(ys[0]) : std::string("value");
  svg += "<text transform=\"translate(20," + fmt("%.2f", kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n";

  for (std::size_t k = 0; k < ys.size(); ++k) {
    const char* colour = kPalette[k % kPalette.size()];
    std::string points;
    const auto flush = [&] {
      if (!points.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t r = 0; r < envelope.rows.size(); ++r) {
      const double x = value(envelope, r, 0);
      const double y = value(envelope, r, ys[k]);
      if (!std::isfinite(x) || !std::isfinite(y)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt("%.2f", px(x)) + "," + fmt("%.2f", py(y));
    }
    flush();
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 12.0;
    svg += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", ly) + "\" x2=\"" +
           fmt("%.2f", lx + 20) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + colour +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", lx + 26) + "\" y=\"" + fmt("%.2f", ly + 4) + "\">" +
           escape(envelope.columns[ys[k]].name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const ResultEnvelope& envelope, const std::filesystem::path& path,
               std::vector<std::string> y_columns) {
  const std::string svg = render_svg(envelope, std::move(y_columns));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << svg;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace spinbath::cli
