#include "littlewood/tools/region_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"
#include "littlewood/json_io.hpp"

namespace littlewood::tools {

RegionMapRow region_map_row(const ExponentPair& pair) {
  RegionMapRow row;
  row.a = pair.a;
  row.b = pair.b;
  row.region = classify_region(pair);
  if (row.region == Region::R0) return row;
  row.real_constant = *real_constant(pair).exact;
  const ConstantReport complex = complex_constant_bounds(pair);
  row.complex_lower = complex.lower;
  row.complex_upper = complex.upper;
  row.complex_exact = complex.exact;
  return row;
}

std::vector<RegionMapRow> region_map(int resolution) {
  if (resolution < 2) throw std::invalid_argument("region map resolution must be >= 2");
  std::vector<RegionMapRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) * resolution);
  const double last = resolution - 1;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const ExponentPair pair{ExtExponent::from_reciprocal(i / last),
                              ExtExponent::from_reciprocal(j / last)};
      rows.push_back(region_map_row(pair));
    }
  }
  return rows;
}

namespace {

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_cell(const std::string& text, const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(column, fmt::format("cannot parse \"{}\"", text));
  }
}

std::optional<double> parse_optional_cell(const std::string& text, const char* column) {
  if (text.empty()) return std::nullopt;
  return parse_cell(text, column);
}

ExtExponent parse_exponent_cells(const std::string& value, const std::string& inv, const char* column,
                                 const char* inv_column) {
  const double reciprocal = parse_cell(inv, inv_column);
  ExtExponent p = ExtExponent::infinity();
  try {
    p = ExtExponent::from_reciprocal(reciprocal);
  } catch (const std::invalid_argument& e) {
    throw ParseError(inv_column, e.what());
  }
  const bool consistent = p.is_infinite() ? value == "inf" : value != "inf" && parse_cell(value, column) == p.value();
  if (!consistent) throw ParseError(column, fmt::format("\"{}\" does not match {} = {}", value, inv_column, inv));
  return p;
}

}  // namespace

std::string region_map_csv(const std::vector<RegionMapRow>& rows) {
  std::string out(kRegionMapHeader);
  out += '\n';
  for (const RegionMapRow& row : rows) {
    const auto exponent = [](const ExtExponent& p) {
      return p.is_infinite() ? std::string("inf") : format_double(p.value());
    };
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", exponent(row.a), exponent(row.b),
                       format_double(row.a.reciprocal()), format_double(row.b.reciprocal()),
                       to_string(row.region), optional_cell(row.real_constant),
                       optional_cell(row.complex_lower), optional_cell(row.complex_upper),
                       optional_cell(row.complex_exact));
  }
  return out;
}

std::vector<RegionMapRow> parse_region_map_csv(std::string_view csv) {
  std::vector<RegionMapRow> rows;
  std::size_t start = 0;
  bool header = true;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(start, end - start);
    start = end + 1;
    if (header) {
      if (line != kRegionMapHeader) throw ParseError("header", "unexpected region map header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 9) throw ParseError("row", fmt::format("expected 9 columns, got {}", cells.size()));
    RegionMapRow row;
    row.a = parse_exponent_cells(cells[0], cells[2], "a", "inv_a");
    row.b = parse_exponent_cells(cells[1], cells[3], "b", "inv_b");
    row.region = parse_region(cells[4]);
    row.real_constant = parse_optional_cell(cells[5], "real_constant");
    row.complex_lower = parse_optional_cell(cells[6], "complex_lower");
    row.complex_upper = parse_optional_cell(cells[7], "complex_upper");
    row.complex_exact = parse_optional_cell(cells[8], "complex_exact");
    rows.push_back(row);
  }
  if (header) throw ParseError("header", "empty region map");
  return rows;
}

namespace {

constexpr double kPlot = 500.0;
constexpr double kLeft = 70.0;
constexpr double kTop = 30.0;

double px(double inv_a) { return kLeft + inv_a * kPlot; }
double py(double inv_b) { return kTop + (1.0 - inv_b) * kPlot; }

// Linear ramp from pale yellow (constant 1) to dark red (constant 2).
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 + t * (128 - 255)));
  const int g = static_cast<int>(std::lround(247 + t * (0 - 247)));
  const int b = static_cast<int>(std::lround(188 + t * (38 - 188)));
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

std::string constant_colour(const RegionMapRow& row) {
  if (!row.real_constant) return "#d9d9d9";
  return ramp(*row.real_constant - 1.0);
}

}  // namespace

std::string region_map_svg(const std::vector<RegionMapRow>& rows, int resolution) {
  if (resolution < 2) throw std::invalid_argument("region map resolution must be >= 2");
  const double cell = kPlot / (resolution - 1);
  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kLeft + kPlot + 130.0, kTop + kPlot + 60.0);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (const RegionMapRow& row : rows) {
    const double x0 = std::max(kLeft, px(row.a.reciprocal()) - cell / 2);
    const double x1 = std::min(kLeft + kPlot, px(row.a.reciprocal()) + cell / 2);
    const double y0 = std::max(kTop, py(row.b.reciprocal()) - cell / 2);
    const double y1 = std::min(kTop + kPlot, py(row.b.reciprocal()) + cell / 2);
    svg += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"{}\"/>\n",
                       x0, y0, x1 - x0, y1 - y0, constant_colour(row));
  }
  svg += "</g>\n";

  // Region boundaries: 1/a + 1/b = 1, 1/a = 1/2 and 1/b = 1/2 inside the admissible set.
  svg += "<g id=\"regions\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
  svg += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", px(0), py(1), px(1), py(0));
  svg += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", px(0.5), py(0.5), px(0.5), py(1));
  svg += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", px(0.5), py(0.5), px(1), py(0.5));
  svg += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\"/>\n", kLeft, kTop, kPlot, kPlot);
  svg += "</g>\n";

  // Hyperbola b = 2a/(3a - 2) for a in [1, 2], sampled in a.
  svg += "<polyline id=\"hyperbola\" stroke=\"#08519c\" stroke-width=\"2\" fill=\"none\" points=\"";
  constexpr int kSamples = 64;
  for (int s = 0; s <= kSamples; ++s) {
    const double a = 1.0 + static_cast<double>(s) / kSamples;
    const double b = 2.0 * a / (3.0 * a - 2.0);
    svg += fmt::format("{}{:.3f},{:.3f}", s == 0 ? "" : " ", px(1.0 / a), py(1.0 / b));
  }
  svg += "\"/>\n";

  svg += "<g id=\"labels\" text-anchor=\"middle\">\n";
  const auto label = [&](double x, double y, std::string_view text) {
    svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">{}</text>\n", px(x), py(y), text);
  };
  label(0.25, 0.25, "RII (constant 1)");
  label(0.25, 0.8, "RIII");
  label(0.8, 0.25, "RIV");
  label(0.7, 0.6, "RI");
  label(0.9, 0.9, "R0");
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">1/a</text>\n", kLeft + kPlot / 2, kTop + kPlot + 40);
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" transform=\"rotate(-90 {:.3f} {:.3f})\">1/b</text>\n", kLeft - 40,
                     kTop + kPlot / 2, kLeft - 40, kTop + kPlot / 2);
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">{:.2f}</text>\n", px(v), kTop + kPlot + 18, v);
    svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">{:.2f}</text>\n", kLeft - 20, py(v) + 4, v);
  }
  svg += "</g>\n";

  // Colour scale for the real constant 2^max(0, 1/a + 1/b - 1) in [1, 2].
  svg += "<g id=\"scale\">\n";
  constexpr int kSteps = 20;
  const double bar_x = kLeft + kPlot + 30;
  for (int s = 0; s < kSteps; ++s) {
    const double t = (s + 0.5) / kSteps;
    svg += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"20\" height=\"{:.3f}\" fill=\"{}\"/>\n", bar_x,
                       kTop + kPlot * (1.0 - static_cast<double>(s + 1) / kSteps), kPlot / kSteps, ramp(t));
  }
  for (const auto& [v, text] : {std::pair{1.0, "1"}, std::pair{std::sqrt(2.0), "2^(1/2)"}, std::pair{2.0, "2"}}) {
    svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">{}</text>\n", bar_x + 26, kTop + kPlot * (2.0 - v) + 4, text);
  }
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\">real constant</text>\n", bar_x, kTop - 10);
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace littlewood::tools
