#include "littlewood/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"
#include "littlewood/json_io.hpp"
#include "littlewood/opnorm.hpp"
#include "littlewood/parallel.hpp"

namespace littlewood {

void validate(const SearchConfig& config) {
  if (config.restarts < 1) throw std::invalid_argument("search needs at least one restart");
  if (!(config.scale > 0.0)) throw std::invalid_argument("perturbation scale must be positive");
  if (config.rows < 1 || config.cols < 1) throw std::invalid_argument("search dims must be positive");
  if (config.torus_order < 3) throw std::invalid_argument("torus order must be >= 3");
}

std::string_view to_string(KhinchinModel model) {
  switch (model) {
    case KhinchinModel::rademacher: return "rademacher";
    case KhinchinModel::e_m: return "e_m";
    case KhinchinModel::steinhaus: return "steinhaus";
  }
  return "rademacher";
}

KhinchinModel parse_khinchin_model(std::string_view text) {
  if (text == "rademacher") return KhinchinModel::rademacher;
  if (text == "e_m" || text == "em") return KhinchinModel::e_m;
  if (text == "steinhaus") return KhinchinModel::steinhaus;
  throw ParseError("model", fmt::format("unknown model \"{}\"", text));
}

RatioValue evaluate_form_ratio(const FormObjective& objective, const BilinearForm& form,
                               int torus_order) {
  const double numerator = mixed_norm(form, objective.pair);
  if (objective.field == Field::real) {
    const double norm = real_sup_norm(form);
    if (norm == 0.0) throw UndefinedRatioError("form ratio: zero operator norm");
    return {numerator / norm, numerator / norm};
  }
  const TorusNormBounds bounds = complex_norm_bounds(form, torus_order, true);
  if (bounds.lower == 0.0) throw UndefinedRatioError("form ratio: zero operator norm");
  return {numerator / bounds.lower, numerator / bounds.upper};
}

double evaluate_khinchin_ratio(const KhinchinObjective& objective, const CoefficientVector& c) {
  if (c.is_zero()) throw UndefinedRatioError("khinchin ratio: zero coefficient vector");
  double average = 0.0;
  switch (objective.model) {
    case KhinchinModel::rademacher: average = rademacher_average(c).value; break;
    case KhinchinModel::e_m: average = e_m_average(c, objective.order).value; break;
    case KhinchinModel::steinhaus:
      average = steinhaus_expectation(c, Quadrature{objective.quadrature_nodes}).value;
      break;
  }
  return lr_norm(c, objective.r) / average;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kAnneal = 0.95;
constexpr double kScaleFloor = 1e-13;
constexpr double kScaleProbe = 3.0;
// Evaluation budget per Steinhaus objective call; Q is halved until Q^{N-2} fits.
constexpr std::uint64_t kSteinhausEvalBudget = 1u << 14;

struct RestartOutcome {
  double best = -1.0;
  double pessimistic = -1.0;
  std::vector<Scalar> point;
  std::vector<ImprovementEvent> events;
  bool scale_check_failed = false;
  bool ran = false;
};

// One hill-climbing run over a flat scalar vector. `evaluate` returns
// {optimistic, pessimistic} and throws UndefinedRatioError on zero denominators;
// `normalize` rescales a candidate in place.
template <class Evaluate, class Normalize, class Draw>
RestartOutcome climb(std::size_t restart, const SearchConfig& config, Field field, Evaluate&& evaluate,
                     Normalize&& normalize, Draw&& draw, std::optional<Clock::time_point> deadline) {
  RestartOutcome out;
  std::mt19937_64 rng(config.seed + restart);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<Scalar> current;
  RatioValue value;
  // Zero-denominator starts are re-drawn.
  for (std::uint64_t attempt = 0;; ++attempt) {
    current = draw(config.seed + restart + attempt * config.restarts);
    normalize(current);
    try {
      value = evaluate(current);
      break;
    } catch (const UndefinedRatioError&) {
      if (attempt > 1000) throw;
    }
  }
  out.ran = true;
  out.best = value.optimistic;
  out.pessimistic = value.pessimistic;
  out.point = current;
  out.events.push_back({restart, 0, out.best});

  std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
  double sigma = config.scale;
  std::vector<Scalar> candidate(current.size());
  for (std::size_t step = 1; step <= config.steps; ++step) {
    if (deadline && Clock::now() > *deadline) break;
    candidate = current;
    auto jitter = [&](Scalar& z) {
      const double re = sigma * normal(rng);
      const double im = field == Field::complex ? sigma * normal(rng) : 0.0;
      z += Scalar(re, im);
    };
    // Alternate whole-vector and single-coordinate moves.
    if (step % 2 == 1) {
      for (Scalar& z : candidate) jitter(z);
    } else {
      jitter(candidate[pick(rng)]);
    }
    normalize(candidate);
    bool improved = false;
    try {
      const RatioValue trial = evaluate(candidate);
      if (trial.optimistic > out.best) {
        out.best = trial.optimistic;
        out.pessimistic = trial.pessimistic;
        current = candidate;
        improved = true;
      }
    } catch (const UndefinedRatioError&) {
    }
    if (improved) {
      out.events.push_back({restart, step, out.best});
      sigma = config.scale;
    } else {
      sigma *= kAnneal;
      if (sigma < kScaleFloor) sigma = config.scale;
    }
  }
  out.point = current;

  std::vector<Scalar> probe = current;
  for (Scalar& z : probe) z *= kScaleProbe;
  try {
    const double scaled = evaluate(probe).optimistic;
    out.scale_check_failed = std::fabs(scaled - out.best) > 1e-12 * std::fabs(out.best);
  } catch (const UndefinedRatioError&) {
    out.scale_check_failed = true;
  }
  return out;
}

template <class MakeWitness>
void merge_restarts(std::vector<RestartOutcome>& outcomes, SearchResult& result, MakeWitness&& make) {
  double best = -1.0;
  for (const RestartOutcome& o : outcomes) {
    if (!o.ran) continue;
    ++result.restarts_run;
    if (o.scale_check_failed) ++result.scale_check_failures;
    for (const ImprovementEvent& e : o.events) {
      if (e.ratio > best) {
        best = e.ratio;
        result.improved_at.push_back(e);
      }
    }
    if (o.best > result.best_ratio || result.restarts_run == 1) {
      result.best_ratio = o.best;
      result.pessimistic_ratio = o.pessimistic;
      result.witness = make(o.point);
    }
  }
}

template <class Climb>
std::vector<RestartOutcome> run_restarts(const SearchConfig& config, Climb&& one) {
  std::optional<Clock::time_point> deadline;
  if (config.budget_seconds) {
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(*config.budget_seconds));
  }
  std::vector<RestartOutcome> outcomes(config.restarts);
  for_each_block(config.restarts, 1, [&](std::uint64_t r, std::uint64_t, std::uint64_t) {
    if (deadline && Clock::now() > *deadline) return;
    outcomes[r] = one(static_cast<std::size_t>(r), deadline);
  });
  return outcomes;
}

}  // namespace

SearchResult maximize_ratio(Field field, const ExponentPair& pair, const SearchConfig& config) {
  validate(config);
  const ConstantReport constant = constant_report(field, pair);  // throws when inadmissible
  const FormObjective objective{field, pair};
  const std::size_t rows = config.rows;
  const std::size_t cols = config.cols;

  auto evaluate = [&](const std::vector<Scalar>& x) {
    return evaluate_form_ratio(objective, BilinearForm(field, rows, cols, x), config.torus_order);
  };
  auto normalize = [](std::vector<Scalar>& x) {
    double peak = 0.0;
    for (const Scalar& z : x) peak = std::max(peak, std::abs(z));
    if (peak > 0.0) {
      for (Scalar& z : x) z /= peak;
    }
  };
  auto draw = [&](std::uint64_t seed) {
    const BilinearForm f = random_form(field, rows, cols, Distribution::gaussian, seed);
    return std::vector<Scalar>(f.entries().begin(), f.entries().end());
  };
  auto outcomes = run_restarts(config, [&](std::size_t r, std::optional<Clock::time_point> deadline) {
    return climb(r, config, field, evaluate, normalize, draw, deadline);
  });

  SearchResult result;
  result.objective = objective;
  result.config = config;
  result.ceiling = constant.upper;
  if (field == Field::real) {
    result.ceiling_provenance =
        "sharp real constant 2^max(0,1/a+1/b-1); ratio denominator is the exact real operator norm";
  } else {
    result.ceiling_provenance = fmt::format(
        "{}; ratio denominator is the refined lower bound on the complex norm (M = {}), "
        "so best_ratio over-estimates; pessimistic_ratio uses the certified upper bound",
        constant.exact ? "exact complex constant" : "complex upper bound (4/pi)^max(0,1/a+1/b-1)",
        config.torus_order);
  }
  merge_restarts(outcomes, result, [&](const std::vector<Scalar>& x) {
    return Witness(BilinearForm(field, rows, cols, x));
  });
  return result;
}

std::vector<SearchResult> sweep_dimensions(Field field, const ExponentPair& pair,
                                           const SearchConfig& config) {
  std::vector<SearchResult> out;
  for (std::size_t k = 1; k <= config.rows; ++k) {
    for (std::size_t n = 1; n <= config.cols; ++n) {
      SearchConfig shaped = config;
      shaped.rows = k;
      shaped.cols = n;
      out.push_back(maximize_ratio(field, pair, shaped));
    }
  }
  return out;
}

SearchResult maximize_khinchin_ratio(KhinchinModel model, int order, const ExtExponent& r,
                                     std::size_t size, const SearchConfig& config) {
  validate(config);
  if (!r.is_infinite() && r.value() < 2.0) {
    throw std::invalid_argument(fmt::format("r must lie in [2, inf], got {}", r.to_string()));
  }
  if (size < 1) throw std::invalid_argument("coefficient search needs N >= 1");
  if (model == KhinchinModel::e_m && order < 2) {
    throw std::invalid_argument(fmt::format("E_M needs M >= 2, got {}", order));
  }
  KhinchinObjective objective{model, model == KhinchinModel::e_m ? order : 0, r, size, 0};
  // E_2 is the Rademacher average, whose sharp ceiling is stated for real scalars.
  const bool real_model = model == KhinchinModel::rademacher || (model == KhinchinModel::e_m && order == 2);
  const Field field = real_model ? Field::real : Field::complex;

  SearchResult result;
  result.config = config;
  switch (model) {
    case KhinchinModel::rademacher:
      result.ceiling = std::exp2(r.reciprocal());
      result.ceiling_provenance = "sharp Rademacher ceiling 2^(1/r), attained by (1, 1)";
      break;
    case KhinchinModel::e_m:
      result.ceiling = blei_ceiling(order, r);
      result.ceiling_provenance =
          order == 2 ? "E_2 is the Rademacher average; sharp ceiling 2^(1/r)"
                     : fmt::format("Blei-Khinchine ceiling (4/pi)^(1/r) / R_M with M = {}; not known to be sharp",
                                   order);
      break;
    case KhinchinModel::steinhaus: {
      int nodes = std::max(4, config.quadrature_nodes - config.quadrature_nodes % 2);
      auto cost = [&](int q) {
        double c = 1.0;
        for (std::size_t i = 2; i < size; ++i) c *= q;
        return c;
      };
      while (nodes > 4 && cost(nodes) > static_cast<double>(kSteinhausEvalBudget)) nodes /= 2;
      nodes = std::max(4, nodes - nodes % 2);
      objective.quadrature_nodes = nodes;
      const bool sharp = !r.is_infinite() && r.value() == 2.0;
      result.ceiling = sharp ? kTwoOverSqrtPi : std::pow(kFourOverPi, r.reciprocal());
      result.ceiling_provenance =
          sharp ? fmt::format("exact Steinhaus constant 2/sqrt(pi) at r = 2; quadrature Q = {}", nodes)
                : fmt::format("upper bound (4/pi)^(1/r) on the Steinhaus constant, not sharp; exploratory; "
                              "quadrature Q = {}",
                              nodes);
      break;
    }
  }
  result.objective = objective;

  auto evaluate = [&](const std::vector<Scalar>& x) {
    const double v = evaluate_khinchin_ratio(objective, CoefficientVector(field, x));
    return RatioValue{v, v};
  };
  auto normalize = [&](std::vector<Scalar>& x) {
    const double norm = lr_norm(CoefficientVector(Field::complex, x), r);
    if (norm > 0.0) {
      for (Scalar& z : x) z /= norm;
    }
  };
  auto draw = [&](std::uint64_t seed) {
    const BilinearForm f = random_form(field, 1, size, Distribution::gaussian, seed);
    return std::vector<Scalar>(f.entries().begin(), f.entries().end());
  };
  auto outcomes = run_restarts(config, [&](std::size_t rr, std::optional<Clock::time_point> deadline) {
    return climb(rr, config, field, evaluate, normalize, draw, deadline);
  });
  merge_restarts(outcomes, result, [&](const std::vector<Scalar>& x) {
    return Witness(CoefficientVector(field, x));
  });
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const CoefficientVector& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (const Scalar& z : c.values()) {
    if (c.field() == Field::real) {
      entries.push_back(nlohmann::json::array({z.real()}));
    } else {
      entries.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
  }
  return {{"field", std::string(to_string(c.field()))}, {"size", c.size()}, {"entries", std::move(entries)}};
}

CoefficientVector coefficients_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("coefficients", "expected a JSON object");
  if (!doc.contains("field") || !doc.at("field").is_string()) throw ParseError("field", "missing or not a string");
  const Field field = parse_field(doc.at("field").get<std::string>());
  if (!doc.contains("size") || !doc.at("size").is_number_unsigned()) {
    throw ParseError("size", "missing or not a non-negative integer");
  }
  const std::size_t size = doc.at("size").get<std::size_t>();
  if (!doc.contains("entries") || !doc.at("entries").is_array() || doc.at("entries").size() != size ||
      size == 0) {
    throw ParseError("entries", fmt::format("expected an array of {} entries", size));
  }
  std::vector<Scalar> values;
  for (std::size_t i = 0; i < size; ++i) {
    const auto& item = doc.at("entries")[i];
    const std::string where = fmt::format("entries[{}]", i);
    const std::size_t want = field == Field::complex ? 2 : 1;
    if (!item.is_array() || item.size() != want) {
      throw ParseError(where, field == Field::complex ? "expected [re, im]" : "expected [re]");
    }
    for (const auto& part : item) {
      if (!part.is_number()) throw ParseError(where, "must be numeric");
    }
    values.emplace_back(item[0].get<double>(), want == 2 ? item[1].get<double>() : 0.0);
  }
  return CoefficientVector(field, std::move(values));
}

namespace {

nlohmann::json config_to_json(const SearchConfig& c) {
  nlohmann::json out = {{"restarts", c.restarts},
                        {"steps", c.steps},
                        {"scale", c.scale},
                        {"seed", c.seed},
                        {"rows", c.rows},
                        {"cols", c.cols},
                        {"torus_order", c.torus_order},
                        {"quadrature_nodes", c.quadrature_nodes}};
  out["budget_seconds"] = c.budget_seconds ? nlohmann::json(*c.budget_seconds) : nlohmann::json(nullptr);
  return out;
}

const nlohmann::json& require(const nlohmann::json& doc, const std::string& key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(key, "missing");
  return doc.at(key);
}

double require_number(const nlohmann::json& doc, const std::string& key) {
  const auto& v = require(doc, key);
  if (!v.is_number()) throw ParseError(key, "must be a number");
  return v.get<double>();
}

std::uint64_t require_unsigned(const nlohmann::json& doc, const std::string& key) {
  const auto& v = require(doc, key);
  if (!v.is_number_unsigned()) throw ParseError(key, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

int require_int(const nlohmann::json& doc, const std::string& key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) throw ParseError(key, "must be an integer");
  return v.get<int>();
}

std::string require_string(const nlohmann::json& doc, const std::string& key) {
  const auto& v = require(doc, key);
  if (!v.is_string()) throw ParseError(key, "must be a string");
  return v.get<std::string>();
}

ExtExponent require_exponent(const nlohmann::json& doc, const std::string& key) {
  try {
    return parse_exponent(require_string(doc, key));
  } catch (const ParseError& e) {
    throw ParseError(key, e.what());
  }
}

SearchConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("config", "expected an object");
  SearchConfig c;
  c.restarts = require_unsigned(doc, "restarts");
  c.steps = require_unsigned(doc, "steps");
  c.scale = require_number(doc, "scale");
  c.seed = require_unsigned(doc, "seed");
  c.rows = require_unsigned(doc, "rows");
  c.cols = require_unsigned(doc, "cols");
  c.torus_order = require_int(doc, "torus_order");
  c.quadrature_nodes = require_int(doc, "quadrature_nodes");
  const auto& budget = require(doc, "budget_seconds");
  if (budget.is_null()) {
    c.budget_seconds.reset();
  } else if (budget.is_number()) {
    c.budget_seconds = budget.get<double>();
  } else {
    throw ParseError("budget_seconds", "must be a number or null");
  }
  return c;
}

constexpr int kCheckpointVersion = 1;

}  // namespace

nlohmann::json to_json(const SearchResult& result) {
  nlohmann::json doc;
  doc["version"] = kCheckpointVersion;
  doc["config"] = config_to_json(result.config);
  doc["best_ratio"] = result.best_ratio;
  doc["pessimistic_ratio"] = result.pessimistic_ratio;
  doc["ceiling"] = result.ceiling;
  doc["ceiling_provenance"] = result.ceiling_provenance;
  doc["restarts_run"] = result.restarts_run;
  doc["scale_check_failures"] = result.scale_check_failures;
  nlohmann::json events = nlohmann::json::array();
  for (const ImprovementEvent& e : result.improved_at) {
    events.push_back({{"restart", e.restart}, {"step", e.step}, {"ratio", e.ratio}});
  }
  doc["improved_at"] = std::move(events);
  if (const auto* form = std::get_if<FormObjective>(&result.objective)) {
    doc["objective"] = {{"kind", "form"},
                        {"field", std::string(to_string(form->field))},
                        {"a", form->pair.a.to_string()},
                        {"b", form->pair.b.to_string()}};
  } else {
    const auto& k = std::get<KhinchinObjective>(result.objective);
    doc["objective"] = {{"kind", "khinchin"},
                        {"model", std::string(to_string(k.model))},
                        {"order", k.order},
                        {"r", k.r.to_string()},
                        {"size", k.size},
                        {"quadrature_nodes", k.quadrature_nodes}};
  }
  if (const auto* form = std::get_if<BilinearForm>(&result.witness)) {
    doc["witness"] = to_json(*form);
  } else {
    doc["witness"] = to_json(std::get<CoefficientVector>(result.witness));
  }
  return doc;
}

SearchResult search_result_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("checkpoint", "expected a JSON object");
  if (require_int(doc, "version") != kCheckpointVersion) {
    throw ParseError("version", fmt::format("unsupported checkpoint version (expected {})", kCheckpointVersion));
  }
  SearchResult result;
  try {
    result.config = config_from_json(require(doc, "config"));
  } catch (const ParseError& e) {
    throw ParseError("config." + e.field(), e.what());
  }
  result.best_ratio = require_number(doc, "best_ratio");
  result.pessimistic_ratio = require_number(doc, "pessimistic_ratio");
  result.ceiling = require_number(doc, "ceiling");
  result.ceiling_provenance = require_string(doc, "ceiling_provenance");
  result.restarts_run = require_unsigned(doc, "restarts_run");
  result.scale_check_failures = require_unsigned(doc, "scale_check_failures");
  const auto& events = require(doc, "improved_at");
  if (!events.is_array()) throw ParseError("improved_at", "must be an array");
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      result.improved_at.push_back({require_unsigned(events[i], "restart"), require_unsigned(events[i], "step"),
                                    require_number(events[i], "ratio")});
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("improved_at[{}].{}", i, e.field()), e.what());
    }
  }
  const auto& objective = require(doc, "objective");
  const std::string kind = [&] {
    try {
      return require_string(objective, "kind");
    } catch (const ParseError& e) {
      throw ParseError("objective." + e.field(), e.what());
    }
  }();
  try {
    if (kind == "form") {
      result.objective = FormObjective{parse_field(require_string(objective, "field")),
                                       {require_exponent(objective, "a"), require_exponent(objective, "b")}};
      result.witness = form_from_json(require(doc, "witness"));
    } else if (kind == "khinchin") {
      KhinchinObjective k;
      k.model = parse_khinchin_model(require_string(objective, "model"));
      k.order = require_int(objective, "order");
      k.r = require_exponent(objective, "r");
      k.size = require_unsigned(objective, "size");
      k.quadrature_nodes = require_int(objective, "quadrature_nodes");
      result.objective = k;
      result.witness = coefficients_from_json(require(doc, "witness"));
    } else {
      throw ParseError("kind", fmt::format("unknown objective kind \"{}\"", kind));
    }
  } catch (const ParseError& e) {
    const bool witness_field = e.field() == "witness" || e.field().rfind("entries", 0) == 0 ||
                               e.field() == "rows" || e.field() == "cols" || e.field() == "size";
    if (witness_field && e.field() != "witness") throw ParseError("witness." + e.field(), e.what());
    if (e.field() == "witness") throw;
    throw ParseError("objective." + e.field(), e.what());
  }
  return result;
}

void checkpoint_save(const SearchResult& result, const std::filesystem::path& path) {
  write_file_atomic(path, canonical_dump(to_json(result)));
}

SearchResult checkpoint_load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("checkpoint", fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()));
  }
  return search_result_from_json(doc);
}

}  // namespace littlewood
