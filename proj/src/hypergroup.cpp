#include "drg/hypergroup.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace drg {

FiniteMeasure FiniteMeasure::point(std::size_t k) {
  FiniteMeasure m;
  m.add(k, Rational(1));
  return m;
}

void FiniteMeasure::add(std::size_t k, const Rational& w) {
  if (w == 0) return;
  auto [it, inserted] = weights_.try_emplace(k, w);
  if (!inserted) {
    it->second += w;
    if (it->second == 0) weights_.erase(it);
  }
}

Rational FiniteMeasure::at(std::size_t k) const {
  auto it = weights_.find(k);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational FiniteMeasure::mass() const {
  Rational s = 0;
  for (const auto& [k, w] : weights_) s += w;
  return s;
}

std::size_t FiniteMeasure::min_index() const {
  return weights_.empty() ? 0 : weights_.begin()->first;
}

std::size_t FiniteMeasure::max_index() const {
  return weights_.empty() ? 0 : weights_.rbegin()->first;
}

namespace {

void validate_coeffs(std::size_t i, const RecurrenceCoeffs& r, std::optional<std::size_t> diameter) {
  auto fail = [&](const std::string& axiom) {
    std::ostringstream os;
    os << "index " << i << ": " << axiom << " (a=" << r.a << ", b=" << r.b << ", c=" << r.c << ")";
    throw AxiomViolation(os.str());
  };
  if (r.a < 0 || r.b < 0 || r.c < 0) fail("coefficients must be nonnegative");
  if (r.a + r.b + r.c != 1) fail("a_i + b_i + c_i must equal 1");
  if (i == 0) {
    if (r.a != 1 || r.b != 0 || r.c != 0) fail("a_0 = 1, b_0 = c_0 = 0 required");
    return;
  }
  if (r.c == 0) fail("c_i > 0 required for i >= 1");
  bool below_top = !diameter || i < *diameter;
  if (below_top && r.a == 0) fail("a_i > 0 required for i < D");
  if (diameter && i == *diameter && r.a != 0) fail("a_D = 0 required");
}

}  // namespace

struct PolynomialHypergroup::State {
  std::optional<std::size_t> diameter;
  std::string label;
  CoeffGenerator generator;  // unbounded only

  mutable std::mutex mutex;
  mutable std::vector<RecurrenceCoeffs> coeffs;  // finite: all; unbounded: prefix cache
  mutable std::map<std::pair<std::size_t, std::size_t>, FiniteMeasure> products;
};

PolynomialHypergroup::PolynomialHypergroup(std::shared_ptr<State> state) : state_(std::move(state)) {}

PolynomialHypergroup PolynomialHypergroup::from_recurrence(std::vector<RecurrenceCoeffs> coeffs,
                                                           std::optional<std::size_t> diameter,
                                                           std::string label) {
  if (coeffs.empty()) throw AxiomViolation("empty coefficient sequence");
  std::size_t d = coeffs.size() - 1;
  if (diameter && *diameter != d) {
    throw AxiomViolation("diameter " + std::to_string(*diameter) + " does not match " +
                         std::to_string(coeffs.size()) + " coefficient triples");
  }
  if (d == 0) throw AxiomViolation("diameter must be positive");
  for (std::size_t i = 0; i <= d; ++i) validate_coeffs(i, coeffs[i], d);
  auto st = std::make_shared<State>();
  st->diameter = d;
  st->label = std::move(label);
  st->coeffs = std::move(coeffs);
  return PolynomialHypergroup(std::move(st));
}

PolynomialHypergroup PolynomialHypergroup::unbounded(CoeffGenerator generator, std::string label,
                                                     std::size_t validate_up_to) {
  auto st = std::make_shared<State>();
  st->label = std::move(label);
  st->generator = std::move(generator);
  PolynomialHypergroup h(std::move(st));
  for (std::size_t i = 0; i <= validate_up_to; ++i) h.coeffs(i);
  return h;
}

bool PolynomialHypergroup::is_finite() const { return state_->diameter.has_value(); }

std::size_t PolynomialHypergroup::diameter() const {
  if (!state_->diameter) throw BadParam("hypergroup '" + state_->label + "' has unbounded diameter");
  return *state_->diameter;
}

std::optional<std::size_t> PolynomialHypergroup::diameter_if_finite() const { return state_->diameter; }

const std::string& PolynomialHypergroup::label() const { return state_->label; }

void PolynomialHypergroup::check_index(std::size_t i) const {
  if (state_->diameter && i > *state_->diameter) {
    throw BadParam("index " + std::to_string(i) + " exceeds diameter " + std::to_string(*state_->diameter));
  }
}

RecurrenceCoeffs PolynomialHypergroup::coeffs(std::size_t i) const {
  check_index(i);
  std::lock_guard lock(state_->mutex);
  auto& cache = state_->coeffs;
  while (cache.size() <= i) {
    std::size_t k = cache.size();
    RecurrenceCoeffs r = state_->generator(k);
    validate_coeffs(k, r, std::nullopt);
    cache.push_back(std::move(r));
  }
  return cache[i];
}

std::vector<Rational> PolynomialHypergroup::haar_weights(std::size_t up_to) const {
  check_index(up_to);
  std::vector<Rational> w(up_to + 1);
  w[0] = 1;
  for (std::size_t i = 0; i < up_to; ++i) w[i + 1] = w[i] * coeffs(i).a / coeffs(i + 1).c;
  return w;
}

FiniteMeasure PolynomialHypergroup::convolve(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  if (i > j) std::swap(i, j);
  if (i == 0) return FiniteMeasure::point(j);
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->products.find({i, j});
    if (it != state_->products.end()) return it->second;
  }

  // delta_1 * mu, expanded through the recurrence at every index of mu.
  auto times_one = [this](const FiniteMeasure& mu) {
    FiniteMeasure out;
    for (const auto& [k, w] : mu.weights()) {
      RecurrenceCoeffs r = coeffs(k);
      if (r.a != 0) out.add(k + 1, w * r.a);
      out.add(k, w * r.b);
      if (k > 0) out.add(k - 1, w * r.c);
    }
    return out;
  };

  FiniteMeasure result;
  if (i == 1) {
    result = times_one(FiniteMeasure::point(j));
  } else {
    // delta_i = (1/a_{i-1}) [delta_1 * delta_{i-1} - b_{i-1} delta_{i-1} - c_{i-1} delta_{i-2}]
    RecurrenceCoeffs r = coeffs(i - 1);
    FiniteMeasure prev = convolve(i - 1, j);
    FiniteMeasure prev2 = convolve(i - 2, j);
    FiniteMeasure acc = times_one(prev);
    for (const auto& [k, w] : prev.weights()) acc.add(k, -r.b * w);
    for (const auto& [k, w] : prev2.weights()) acc.add(k, -r.c * w);
    for (const auto& [k, w] : acc.weights()) result.add(k, w / r.a);
  }
  for (const auto& [k, w] : result.weights()) {
    if (w < 0) {
      std::ostringstream os;
      os << "delta_" << i << " * delta_" << j << " has weight " << w << " at " << k
         << " (inconsistent coefficients for '" << state_->label << "')";
      throw NegativeCoefficient(os.str());
    }
  }

  std::lock_guard lock(state_->mutex);
  return state_->products.try_emplace({i, j}, std::move(result)).first->second;
}

std::vector<double> PolynomialHypergroup::eval_polynomials(std::size_t n, double x) const {
  check_index(n);
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (std::size_t i = 1; i < n; ++i) {
    RecurrenceCoeffs r = coeffs(i);
    p[i + 1] = ((x - to_double(r.b)) * p[i] - to_double(r.c) * p[i - 1]) / to_double(r.a);
  }
  return p;
}

double PolynomialHypergroup::eval_polynomial(std::size_t i, double x) const {
  return eval_polynomials(i, x)[i];
}

std::vector<Rational> PolynomialHypergroup::polynomial_coefficients(std::size_t i) const {
  check_index(i);
  std::vector<Rational> prev{Rational(1)};
  if (i == 0) return prev;
  std::vector<Rational> cur{Rational(0), Rational(1)};
  for (std::size_t k = 1; k < i; ++k) {
    RecurrenceCoeffs r = coeffs(k);
    std::vector<Rational> next(cur.size() + 1, Rational(0));
    for (std::size_t m = 0; m < cur.size(); ++m) {
      next[m + 1] += cur[m];
      next[m] -= r.b * cur[m];
    }
    for (std::size_t m = 0; m < prev.size(); ++m) next[m] -= r.c * prev[m];
    for (auto& v : next) v /= r.a;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

DualSpace dual_space(const PolynomialHypergroup& h) {
  const std::size_t d = h.diameter();
  const Eigen::Index n = static_cast<Eigen::Index>(d + 1);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (std::size_t i = 0; i <= d; ++i) {
    RecurrenceCoeffs r = h.coeffs(i);
    diag(static_cast<Eigen::Index>(i)) = to_double(r.b);
    if (i < d) sub(static_cast<Eigen::Index>(i)) = std::sqrt(to_double(r.a * h.coeffs(i + 1).c));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("tridiagonal eigensolver did not converge for '" + h.label() + "'");
  }

  DualSpace out;
  out.points.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.points.begin(), out.points.end(), std::greater<>());
  for (std::size_t j = 0; j + 1 < out.points.size(); ++j) {
    if (out.points[j] - out.points[j + 1] <= 1e-9) {
      throw NumericalFailure("dual points " + std::to_string(j) + " and " + std::to_string(j + 1) +
                             " coincide within 1e-9 for '" + h.label() + "'");
    }
  }

  std::vector<Rational> haar = h.haar_weights();
  out.haar.reserve(haar.size());
  for (const auto& w : haar) out.haar.push_back(to_double(w));

  out.characters.resize(n, n);
  out.plancherel.resize(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    std::vector<double> p = h.eval_polynomials(d, out.points[j]);
    double norm = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
      out.characters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[i];
      norm += out.haar[i] * p[i] * p[i];
    }
    out.plancherel[j] = 1.0 / norm;
  }
  return out;
}

std::vector<double> fourier(const DualSpace& dual, const std::vector<double>& f) {
  const std::size_t n = dual.size();
  if (f.size() != n) throw BadParam("fourier: function must be given on 0..D");
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += f[i] * dual.characters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * dual.haar[i];
    }
    out[j] = s;
  }
  return out;
}

std::vector<double> inverse_fourier(const DualSpace& dual, const std::vector<double>& mu) {
  const std::size_t n = dual.size();
  if (mu.size() != n) throw BadParam("inverse_fourier: measure must have one weight per dual point");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += mu[j] * dual.characters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    out[i] = s;
  }
  return out;
}

}  // namespace drg
