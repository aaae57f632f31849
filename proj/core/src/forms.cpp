#include "littlewood/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"

namespace littlewood {

BilinearForm::BilinearForm(Field field, std::size_t rows, std::size_t cols,
                           std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument(fmt::format("form shape must be positive, got {}x{}", rows_, cols_));
  }
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument(fmt::format("form {}x{} needs {} entries, got {}", rows_, cols_,
                                            rows_ * cols_, entries_.size()));
  }
  for (const Scalar& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("form entries must be finite");
    }
    if (field_ == Field::real && z.imag() != 0.0) {
      throw std::invalid_argument("real-tagged form has a nonzero imaginary part");
    }
  }
}

BilinearForm BilinearForm::real(std::size_t rows, std::size_t cols,
                                const std::vector<double>& entries) {
  return BilinearForm(Field::real, rows, cols, std::vector<Scalar>(entries.begin(), entries.end()));
}

BilinearForm BilinearForm::zero(Field field, std::size_t rows, std::size_t cols) {
  return BilinearForm(field, rows, cols, std::vector<Scalar>(rows * cols));
}

double BilinearForm::max_abs() const noexcept {
  double m = 0.0;
  for (const Scalar& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

BilinearForm BilinearForm::scaled(Scalar c) const {
  if (field_ == Field::real && c.imag() != 0.0) {
    throw std::invalid_argument("cannot scale a real form by a non-real factor");
  }
  std::vector<Scalar> out(entries_);
  for (Scalar& z : out) z *= c;
  return BilinearForm(field_, rows_, cols_, std::move(out));
}

namespace {

// Neumaier-compensated accumulation in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

// l_p norm of non-negative magnitudes, scaled by the maximum to stay in range.
template <class Range>
double lp_of_magnitudes(const Range& magnitudes, const ExtExponent& p) {
  double peak = 0.0;
  for (double v : magnitudes) peak = std::max(peak, v);
  if (p.is_infinite() || peak == 0.0) return peak;
  const double exponent = p.value();
  CompensatedSum sum;
  for (double v : magnitudes) {
    if (v != 0.0) sum.add(std::pow(v / peak, exponent));
  }
  return peak * std::pow(static_cast<double>(sum.value()), 1.0 / exponent);
}

}  // namespace

double mixed_norm(const BilinearForm& form, const ExponentPair& pair) {
  std::vector<double> row_norms(form.rows());
  std::vector<double> magnitudes(form.cols());
  for (std::size_t k = 0; k < form.rows(); ++k) {
    auto row = form.row(k);
    std::transform(row.begin(), row.end(), magnitudes.begin(),
                   [](const Scalar& z) { return std::abs(z); });
    row_norms[k] = lp_of_magnitudes(magnitudes, pair.a);
  }
  return lp_of_magnitudes(row_norms, pair.b);
}

BilinearForm transpose(const BilinearForm& form) {
  std::vector<Scalar> out(form.rows() * form.cols());
  for (std::size_t k = 0; k < form.rows(); ++k) {
    for (std::size_t j = 0; j < form.cols(); ++j) out[j * form.rows() + k] = form(k, j);
  }
  return BilinearForm(form.field(), form.cols(), form.rows(), std::move(out));
}

BilinearForm witness_a0(Field field) {
  return BilinearForm(field, 2, 2, {1.0, 1.0, 1.0, -1.0});
}

BilinearForm single_entry(Field field, std::size_t rows, std::size_t cols) {
  std::vector<Scalar> out(rows * cols);
  out.at(0) = 1.0;
  return BilinearForm(field, rows, cols, std::move(out));
}

std::string_view to_string(Distribution distribution) {
  switch (distribution) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::sign: return "sign";
    case Distribution::sparse_sign: return "sparse-sign";
  }
  return "gaussian";
}

Distribution parse_distribution(std::string_view text) {
  if (text == "gaussian") return Distribution::gaussian;
  if (text == "sign") return Distribution::sign;
  if (text == "sparse-sign" || text == "sparse_sign") return Distribution::sparse_sign;
  throw ParseError("distribution", fmt::format("unknown distribution \"{}\"", text));
}

BilinearForm random_form(Field field, std::size_t rows, std::size_t cols,
                         Distribution distribution, std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument(fmt::format("random form shape must be positive, got {}x{}", rows, cols));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> quarter(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  static constexpr Scalar kFourthRoots[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

  std::vector<Scalar> entries(rows * cols);
  for (Scalar& z : entries) {
    switch (distribution) {
      case Distribution::gaussian:
        if (field == Field::real) {
          z = normal(rng);
        } else {
          const double re = normal(rng);
          z = Scalar(re, normal(rng));
        }
        break;
      case Distribution::sign:
      case Distribution::sparse_sign:
        if (distribution == Distribution::sparse_sign && coin(rng) == 0) {
          z = 0.0;
        } else if (field == Field::real) {
          z = coin(rng) == 0 ? 1.0 : -1.0;
        } else {
          z = kFourthRoots[quarter(rng)];
        }
        break;
    }
  }
  return BilinearForm(field, rows, cols, std::move(entries));
}

nlohmann::json to_json(const BilinearForm& form) {
  nlohmann::json entries = nlohmann::json::array();
  for (const Scalar& z : form.entries()) {
    if (form.field() == Field::real) {
      entries.push_back(nlohmann::json::array({z.real()}));
    } else {
      entries.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
  }
  return {{"field", std::string(to_string(form.field()))},
          {"rows", form.rows()},
          {"cols", form.cols()},
          {"entries", std::move(entries)}};
}

namespace {

std::size_t read_dimension(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(key, "missing");
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw ParseError(key, "must be a positive integer");
  }
  return v.get<std::size_t>();
}

double read_component(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "must be a number");
  return v.get<double>();
}

}  // namespace

BilinearForm form_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("form", "expected a JSON object");
  if (!doc.contains("field") || !doc.at("field").is_string()) {
    throw ParseError("field", "missing or not a string");
  }
  const Field field = parse_field(doc.at("field").get<std::string>());
  const std::size_t rows = read_dimension(doc, "rows");
  const std::size_t cols = read_dimension(doc, "cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw ParseError("entries", "missing or not an array");
  }
  const auto& items = doc.at("entries");
  if (items.size() != rows * cols) {
    throw ParseError("entries", fmt::format("expected {} entries, got {}", rows * cols, items.size()));
  }
  std::vector<Scalar> entries;
  entries.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const std::string where = fmt::format("entries[{}]", i);
    if (!item.is_array()) throw ParseError(where, "expected an array");
    if (field == Field::complex) {
      if (item.size() != 2) throw ParseError(where, "complex entries must be [re, im]");
      entries.emplace_back(read_component(item[0], where), read_component(item[1], where));
    } else {
      if (item.size() != 1) throw ParseError(where, "real entries must be [re]; imaginary parts are forbidden");
      entries.emplace_back(read_component(item[0], where), 0.0);
    }
    if (!std::isfinite(entries.back().real()) || !std::isfinite(entries.back().imag())) {
      throw ParseError(where, "must be finite");
    }
  }
  return BilinearForm(field, rows, cols, std::move(entries));
}

}  // namespace littlewood
