#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "littlewood/exponents.hpp"
#include "littlewood/forms.hpp"
#include "littlewood/khinchin.hpp"

namespace littlewood {

struct SearchConfig {
  std::size_t restarts = 20;
  std::size_t steps = 20000;
  double scale = 0.5;
  std::uint64_t seed = 1;
  std::size_t rows = 2;  // K for forms; unused by coefficient searches
  std::size_t cols = 2;  // N
  std::optional<double> budget_seconds;
  int torus_order = 16;         // grid order M for complex operator norms
  int quadrature_nodes = 256;   // upper bound on Q for Steinhaus objectives

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// Throws std::invalid_argument unless restarts >= 1 and scale > 0.
void validate(const SearchConfig& config);

/// Ratio mixed_norm(A, (a, b)) / ||A|| over forms in the given field.
struct FormObjective {
  Field field = Field::real;
  ExponentPair pair{ExtExponent(2.0), ExtExponent(2.0)};

  friend bool operator==(const FormObjective&, const FormObjective&) = default;
};

enum class KhinchinModel { rademacher, e_m, steinhaus };
std::string_view to_string(KhinchinModel model);
KhinchinModel parse_khinchin_model(std::string_view text);

/// Ratio l_r(a) / average(a) for the chosen model.
struct KhinchinObjective {
  KhinchinModel model = KhinchinModel::rademacher;
  int order = 2;              // M for the e_m model
  ExtExponent r = ExtExponent(2.0);
  std::size_t size = 2;       // N
  int quadrature_nodes = 0;   // Q actually used by the steinhaus model

  friend bool operator==(const KhinchinObjective&, const KhinchinObjective&) = default;
};

using SearchObjective = std::variant<FormObjective, KhinchinObjective>;
using Witness = std::variant<BilinearForm, CoefficientVector>;

struct ImprovementEvent {
  std::size_t restart = 0;
  std::size_t step = 0;
  double ratio = 0.0;

  friend bool operator==(const ImprovementEvent&, const ImprovementEvent&) = default;
};

struct SearchResult {
  SearchObjective objective;
  SearchConfig config;
  /// For complex forms the denominator is the certified lower bound on the
  /// norm, so this over-estimates the true ratio.
  double best_ratio = 0.0;
  /// Complex forms: ratio against the certified upper bound on the norm, a
  /// valid lower bound on the constant. Equals best_ratio otherwise.
  double pessimistic_ratio = 0.0;
  Witness witness = BilinearForm::zero(Field::real, 1, 1);
  double ceiling = 0.0;
  std::string ceiling_provenance;
  std::size_t restarts_run = 0;
  std::vector<ImprovementEvent> improved_at;
  std::size_t scale_check_failures = 0;

  bool ceiling_violated(double tolerance = 1e-9) const { return best_ratio > ceiling + tolerance; }

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

struct RatioValue {
  double optimistic = 0.0;
  double pessimistic = 0.0;
};

/// Throws UndefinedRatioError when the denominator vanishes.
RatioValue evaluate_form_ratio(const FormObjective& objective, const BilinearForm& form,
                               int torus_order);
double evaluate_khinchin_ratio(const KhinchinObjective& objective, const CoefficientVector& c);

/// Hill climbing with Gaussian perturbations, restarted from random forms.
/// Throws AdmissibilityError for inadmissible pairs.
SearchResult maximize_ratio(Field field, const ExponentPair& pair, const SearchConfig& config);

/// Runs maximize_ratio for every shape k x n with k <= rows, n <= cols.
std::vector<SearchResult> sweep_dimensions(Field field, const ExponentPair& pair,
                                           const SearchConfig& config);

/// Same scheme over coefficient vectors of length N, normalized to unit l_r.
SearchResult maximize_khinchin_ratio(KhinchinModel model, int order, const ExtExponent& r,
                                     std::size_t size, const SearchConfig& config);

nlohmann::json to_json(const SearchResult& result);
/// Throws ParseError naming the offending field.
SearchResult search_result_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const CoefficientVector& c);
CoefficientVector coefficients_from_json(const nlohmann::json& doc);

/// Canonical JSON, written atomically (write then rename).
void checkpoint_save(const SearchResult& result, const std::filesystem::path& path);
/// Throws ParseError on malformed content.
SearchResult checkpoint_load(const std::filesystem::path& path);

}  // namespace littlewood
