#include "littlewood/tools/cli.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "littlewood/errors.hpp"
#include "littlewood/exponents.hpp"
#include "littlewood/forms.hpp"
#include "littlewood/json_io.hpp"
#include "littlewood/khinchin.hpp"
#include "littlewood/opnorm.hpp"
#include "littlewood/search.hpp"
#include "littlewood/tools/closed_form.hpp"
#include "littlewood/tools/region_map.hpp"
#include "littlewood/tools/verify.hpp"

namespace littlewood::tools {

namespace {

// An output file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& contents) {
  try {
    write_file_atomic(path, contents);
  } catch (const std::exception& e) {
    throw OutputError(e.what());
  }
}

std::string read_input(const std::string& path, const char* field) {
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw ParseError(field, e.what());
  }
}

nlohmann::json parse_json(const std::string& text, const char* field) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(field, e.what());
  }
}

double parse_double(std::string_view text, const char* field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(field, fmt::format("cannot parse \"{}\" as a number", text));
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "1,1" or "1:0.5,-2" with re:im for complex entries.
CoefficientVector parse_coefficients(const std::string& text, bool force_complex) {
  std::vector<Scalar> values;
  bool complex = force_complex;
  for (const std::string& item : split(text, ',')) {
    if (auto colon = item.find(':'); colon != std::string::npos) {
      complex = true;
      values.emplace_back(parse_double(std::string_view(item).substr(0, colon), "coeffs"),
                          parse_double(std::string_view(item).substr(colon + 1), "coeffs"));
    } else {
      values.emplace_back(parse_double(item, "coeffs"), 0.0);
    }
  }
  try {
    return CoefficientVector(complex ? Field::complex : Field::real, values);
  } catch (const std::invalid_argument& e) {
    throw ParseError("coeffs", e.what());
  }
}

std::vector<int> parse_schedule(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split(text, ',')) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError("schedule", fmt::format("cannot parse \"{}\" as an integer", item));
    }
    out.push_back(v);
  }
  return out;
}

// "1.4142135623730951 = 2^(1/2)" when a closed form matches.
std::string describe(double value) {
  const std::string digits = format_double(value);
  const auto form = closed_form(value);
  if (!form || *form == digits) return digits;
  return fmt::format("{} = {}", digits, *form);
}

void annotate(nlohmann::json& doc, const char* key, double value) {
  doc[key] = value;
  const auto form = closed_form(value);
  if (form && *form != format_double(value)) doc[std::string(key) + "_closed_form"] = *form;
}

int cmd_constant(const std::string& a_text, const std::string& b_text, const std::string& field_text,
                 std::ostream& out, std::ostream& err) {
  const ExponentPair pair{parse_exponent(a_text), parse_exponent(b_text)};
  const Field field = parse_field(field_text);
  const double sum = pair.a.reciprocal() + pair.b.reciprocal();
  if (!admissible(pair)) {
    err << fmt::format("(a, b) = ({}, {}) is not admissible: violates 1/a + 1/b ≤ 3/2 (1/a + 1/b = {})\n",
                       pair.a.to_string(), pair.b.to_string(), format_double(sum));
    return kExitInadmissible;
  }
  const ConstantReport report = constant_report(field, pair);
  out << fmt::format("pair: a = {}, b = {} (1/a + 1/b = {})\n", pair.a.to_string(), pair.b.to_string(),
                     format_double(sum));
  out << fmt::format("region: {} (boundary ties resolved RII > RIII > RIV > RI)\n", to_string(classify_region(pair)));
  out << fmt::format("field: {}\n", to_string(field));
  if (report.exact) {
    out << fmt::format("constant: {}\n", describe(*report.exact));
  } else {
    out << fmt::format("constant: unknown, bracketed by [{}, {}]\n", describe(report.lower), describe(report.upper));
  }
  out << fmt::format("provenance: {}\n", report.provenance);
  return kExitOk;
}

int cmd_region_map(int resolution, const std::string& csv_path, const std::string& svg_path, std::ostream& out) {
  if (resolution < 2) throw ParseError("resolution", "must be >= 2");
  const std::vector<RegionMapRow> rows = region_map(resolution);
  const std::string csv = region_map_csv(rows);
  if (csv_path.empty() && svg_path.empty()) {
    out << csv;
    return kExitOk;
  }
  if (!csv_path.empty()) write_output(csv_path, csv);
  if (!svg_path.empty()) write_output(svg_path, region_map_svg(rows, resolution));
  return kExitOk;
}

int cmd_verify(const std::string& suite_text, std::uint64_t seed, const std::string& config_path,
               const std::string& output_path, std::ostream& out, std::ostream& err) {
  const Suite suite = parse_suite(suite_text);
  VerifyOverrides overrides;
  if (!config_path.empty()) overrides = parse_overrides(parse_json(read_input(config_path, "config"), "config"));
  const nlohmann::json report = run_verify(suite, seed, overrides);
  const std::string text = canonical_dump(report);
  if (!output_path.empty()) write_output(output_path, text);
  out << text;
  if (report["passed"].get<bool>()) return kExitOk;
  for (const auto& check : report["checks"]) {
    if (!check["passed"].get<bool>()) {
      err << fmt::format("check failed: {} (criterion {}, margin {})\n", check["name"].get<std::string>(),
                         check["criterion"].get<int>(), format_double(check["margin"].get<double>()));
    }
  }
  return kExitCheckFailed;
}

int cmd_norm(const std::string& input, const std::string& field_text, int order, bool refine, std::ostream& out) {
  BilinearForm form = form_from_json(parse_json(read_input(input, "input"), "input"));
  const Field field = field_text.empty() ? form.field() : parse_field(field_text);
  if (field == Field::real && form.field() == Field::complex) {
    throw ParseError("field", "a complex matrix has no real operator norm; use --field complex");
  }
  if (field == Field::complex && form.field() == Field::real) {
    form = BilinearForm(Field::complex, form.rows(), form.cols(), {form.entries().begin(), form.entries().end()});
  }
  nlohmann::json doc;
  doc["field"] = to_string(field);
  doc["rows"] = form.rows();
  doc["cols"] = form.cols();
  if (field == Field::real) {
    annotate(doc, "norm", real_sup_norm(form));
  } else {
    const TorusNormBounds b = complex_norm_bounds(form, order, refine);
    doc["M"] = b.order;
    doc["refined"] = refine;
    annotate(doc, "lower", b.lower);
    annotate(doc, "upper", b.upper);
    annotate(doc, "discrete_norm", b.discrete_norm);
    annotate(doc, "r_m", b.r_m);
  }
  out << canonical_dump(doc);
  return kExitOk;
}

struct KhinchinArgs {
  std::string coeffs;
  std::string model = "rademacher";
  int order = 4;
  std::string r;
  std::string method = "quadrature";
  int nodes = 256;
  std::string schedule = "64,128,256,512";
};

int cmd_khinchin(const KhinchinArgs& args, std::ostream& out) {
  const KhinchinModel model = parse_khinchin_model(args.model);
  const CoefficientVector c = parse_coefficients(args.coeffs, model == KhinchinModel::steinhaus);
  if (model == KhinchinModel::rademacher && c.field() == Field::complex) {
    throw ParseError("coeffs", "the Rademacher model takes real coefficients");
  }
  AverageResult avg;
  nlohmann::json doc;
  doc["model"] = to_string(model);
  doc["size"] = c.size();
  switch (model) {
    case KhinchinModel::rademacher: avg = rademacher_average(c); break;
    case KhinchinModel::e_m: avg = e_m_average(c, args.order); break;
    case KhinchinModel::steinhaus:
      if (args.method == "quadrature") {
        avg = steinhaus_expectation(c, Quadrature{args.nodes});
      } else if (args.method == "em-limit" || args.method == "e_m_limit") {
        avg = steinhaus_expectation(c, EmLimit{parse_schedule(args.schedule)});
      } else {
        throw ParseError("method", fmt::format("expected quadrature or em-limit, got \"{}\"", args.method));
      }
      break;
  }
  doc["method"] = to_string(avg.method);
  doc["order"] = avg.order;
  annotate(doc, "value", avg.value);
  if (avg.error_bound) doc["error_bound"] = *avg.error_bound;
  if (!args.r.empty()) {
    const ExtExponent r = parse_exponent(args.r);
    if (c.is_zero()) throw UndefinedRatioError("ratio undefined for the zero vector");
    doc["r"] = r.to_string();
    annotate(doc, "ratio", lr_norm(c, r) / avg.value);
    if (model != KhinchinModel::steinhaus && !(r.value() < 2.0)) {
      const int m = model == KhinchinModel::rademacher ? 2 : args.order;
      annotate(doc, "ceiling", blei_ceiling(m, r));
    }
  }
  out << canonical_dump(doc);
  return kExitOk;
}

struct SearchArgs {
  std::string field = "real";
  std::string a;
  std::string b;
  std::string model;
  std::string r = "2";
  int order = 4;
  std::size_t size = 2;
  SearchConfig config;
  double budget = 0.0;
  std::string checkpoint;
};

int cmd_search(SearchArgs args, std::ostream& out, std::ostream& err) {
  if (args.budget > 0.0) args.config.budget_seconds = args.budget;
  SearchResult result;
  if (!args.model.empty()) {
    const KhinchinModel model = parse_khinchin_model(args.model);
    result = maximize_khinchin_ratio(model, args.order, parse_exponent(args.r), args.size, args.config);
  } else {
    if (args.a.empty() || args.b.empty()) throw ParseError("a", "form searches need --a and --b");
    const ExponentPair pair{parse_exponent(args.a), parse_exponent(args.b)};
    if (!admissible(pair)) {
      err << "(a, b) is not admissible: violates 1/a + 1/b ≤ 3/2\n";
      return kExitInadmissible;
    }
    result = maximize_ratio(parse_field(args.field), pair, args.config);
  }
  if (!args.checkpoint.empty()) {
    try {
      checkpoint_save(result, args.checkpoint);
    } catch (const std::exception& e) {
      throw OutputError(e.what());
    }
  }
  out << canonical_dump(to_json(result));
  if (result.ceiling_violated()) {
    err << fmt::format("ceiling violated: best_ratio {} > ceiling {}\n", format_double(result.best_ratio),
                       format_double(result.ceiling));
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constants, norms and searches for mixed-norm bilinear form inequalities", "littlewood"};
  app.require_subcommand(1);

  std::string a_text, b_text, field_text = "real";
  auto* constant = app.add_subcommand("constant", "Sharp real constant or complex bounds for (a, b)");
  constant->add_option("--a", a_text, "Inner exponent: integer, decimal, p/q or inf")->required();
  constant->add_option("--b", b_text, "Outer exponent")->required();
  constant->add_option("--field", field_text, "real or complex");

  int resolution = 101;
  std::string csv_path, svg_path;
  auto* map = app.add_subcommand("region-map", "CSV and SVG map of regions and constants over (1/a, 1/b)");
  map->add_option("--resolution", resolution, "Grid points per axis (>= 2)");
  map->add_option("--csv", csv_path, "CSV output path (stdout when neither path is given)");
  map->add_option("--svg", svg_path, "SVG output path");

  std::string suite = "fast", config_path, output_path;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks and print a JSON report");
  verify->add_option("--suite", suite, "fast or full");
  verify->add_option("--seed", seed, "Seed for random draws");
  verify->add_option("--config", config_path, "JSON overrides, e.g. {\"ceiling_scale\": {\"upper_bound\": 0.5}}");
  verify->add_option("--output", output_path, "Also write the report to this path");

  std::string input, norm_field;
  int norm_order = 16;
  bool refine = false;
  auto* norm = app.add_subcommand("norm", "Operator norm of a matrix given as JSON");
  norm->add_option("--input", input, "Matrix JSON file")->required();
  norm->add_option("--field", norm_field, "real or complex (default: the file's field)");
  norm->add_option("--M", norm_order, "Torus order for complex norms (>= 3)");
  norm->add_flag("--refine", refine, "Raise the complex lower bound by phase ascent");

  KhinchinArgs kargs;
  auto* khinchin = app.add_subcommand("khinchin", "Rademacher, E_M or Steinhaus average of a coefficient vector");
  khinchin->add_option("--coeffs", kargs.coeffs, "Comma-separated coefficients, re or re:im")->required();
  khinchin->add_option("--model", kargs.model, "rademacher, em or steinhaus");
  khinchin->add_option("--M", kargs.order, "Order M for the em model");
  khinchin->add_option("--r", kargs.r, "Also report l_r / average");
  khinchin->add_option("--method", kargs.method, "Steinhaus method: quadrature or em-limit");
  khinchin->add_option("--Q", kargs.nodes, "Quadrature nodes per angle (even, >= 4)");
  khinchin->add_option("--schedule", kargs.schedule, "Increasing M values for em-limit");

  SearchArgs sargs;
  auto* search = app.add_subcommand("search", "Hill-climbing search for extremal ratios");
  search->add_option("--field", sargs.field, "real or complex (form searches)");
  search->add_option("--a", sargs.a, "Inner exponent (form searches)");
  search->add_option("--b", sargs.b, "Outer exponent (form searches)");
  search->add_option("--model", sargs.model, "rademacher, em or steinhaus: search coefficient vectors instead");
  search->add_option("--r", sargs.r, "Exponent r for coefficient searches");
  search->add_option("--M", sargs.order, "Order M for em searches and complex form norms");
  search->add_option("--N", sargs.size, "Coefficient count for coefficient searches");
  search->add_option("--rows", sargs.config.rows, "Form rows K");
  search->add_option("--cols", sargs.config.cols, "Form columns N");
  search->add_option("--restarts", sargs.config.restarts, "Restarts");
  search->add_option("--steps", sargs.config.steps, "Steps per restart");
  search->add_option("--scale", sargs.config.scale, "Initial perturbation scale");
  search->add_option("--seed", sargs.config.seed, "Seed");
  search->add_option("--budget", sargs.budget, "Wall-clock budget in seconds (0 = none)");
  search->add_option("--Q", sargs.config.quadrature_nodes, "Largest quadrature order for Steinhaus searches");
  search->add_option("--checkpoint", sargs.checkpoint, "Write the result as a checkpoint file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (*constant) return cmd_constant(a_text, b_text, field_text, out, err);
    if (*map) return cmd_region_map(resolution, csv_path, svg_path, out);
    if (*verify) return cmd_verify(suite, seed, config_path, output_path, out, err);
    if (*norm) return cmd_norm(input, norm_field, norm_order, refine, out);
    if (*khinchin) return cmd_khinchin(kargs, out);
    if (*search) {
      sargs.config.torus_order = sargs.order;
      return cmd_search(sargs, out, err);
    }
  } catch (const OutputError& e) {
    err << "error: cannot write output: " << e.what() << '\n';
    return kExitIo;
  } catch (const AdmissibilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInadmissible;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UndefinedRatioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace littlewood::tools
