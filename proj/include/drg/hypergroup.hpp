#pragma once

// Polynomial hypergroups on {0, ..., D} (D finite or unbounded).
//
// A hypergroup is fixed by its three-term recurrence
//     delta_1 * delta_i = a_i delta_{i+1} + b_i delta_i + c_i delta_{i-1}
// with exact rational coefficients.  Everything on the algebra side
// (convolutions, Haar weights) stays exact; the dual space is computed in
// double precision because its points are eigenvalues.

#include "drg/error.hpp"
#include "drg/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace drg {

struct RecurrenceCoeffs {
  Rational a;
  Rational b;
  Rational c;

  friend bool operator==(const RecurrenceCoeffs&, const RecurrenceCoeffs&) = default;
};

using CoeffGenerator = std::function<RecurrenceCoeffs(std::size_t)>;

// Finitely supported measure on the index set.  Zero weights are never stored.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  static FiniteMeasure point(std::size_t k);

  void add(std::size_t k, const Rational& w);
  Rational at(std::size_t k) const;
  Rational mass() const;
  bool empty() const { return weights_.empty(); }
  std::size_t min_index() const;
  std::size_t max_index() const;
  const std::map<std::size_t, Rational>& weights() const { return weights_; }

  friend bool operator==(const FiniteMeasure&, const FiniteMeasure&) = default;

 private:
  std::map<std::size_t, Rational> weights_;
};

class PolynomialHypergroup {
 public:
  // Finite hypergroup of diameter coeffs.size() - 1.  `diameter`, when given,
  // must agree.  Throws AxiomViolation naming the index and the axiom.
  static PolynomialHypergroup from_recurrence(std::vector<RecurrenceCoeffs> coeffs,
                                              std::optional<std::size_t> diameter = std::nullopt,
                                              std::string label = "custom");

  // Unbounded hypergroup; coefficients are produced on demand and validated
  // when first requested.  The first `validate_up_to` indices are checked
  // eagerly.
  static PolynomialHypergroup unbounded(CoeffGenerator generator, std::string label,
                                        std::size_t validate_up_to = 16);

  bool is_finite() const;
  // Throws BadParam for unbounded hypergroups.
  std::size_t diameter() const;
  std::optional<std::size_t> diameter_if_finite() const;
  const std::string& label() const;

  RecurrenceCoeffs coeffs(std::size_t i) const;

  // omega_0 = 1, omega_{i+1} = omega_i a_i / c_{i+1}.
  std::vector<Rational> haar_weights(std::size_t up_to) const;
  std::vector<Rational> haar_weights() const { return haar_weights(diameter()); }

  // delta_i * delta_j, memoized.  Throws NegativeCoefficient if the
  // linearization produces a negative weight.
  FiniteMeasure convolve(std::size_t i, std::size_t j) const;

  // P_0(x), ..., P_n(x) by the three-term recurrence.
  std::vector<double> eval_polynomials(std::size_t n, double x) const;
  double eval_polynomial(std::size_t i, double x) const;
  // Monomial coefficients (ascending powers) of P_i, exact.
  std::vector<Rational> polynomial_coefficients(std::size_t i) const;

 private:
  struct State;
  explicit PolynomialHypergroup(std::shared_ptr<State> state);
  void check_index(std::size_t i) const;

  std::shared_ptr<State> state_;
};

struct DualSpace {
  std::vector<double> points;      // x_0 = 1 > x_1 > ... > x_D
  std::vector<double> plancherel;  // pi_j
  std::vector<double> haar;        // omega_i in double precision
  Eigen::MatrixXd characters;      // characters(i, j) = P_i(x_j)

  std::size_t size() const { return points.size(); }
};

// Eigenvalues of the symmetrized tridiagonal transition operator.
// Throws NumericalFailure when the solver fails or two points coincide.
DualSpace dual_space(const PolynomialHypergroup& h);

// f_hat(x_j) = sum_i f(i) P_i(x_j) omega_i
std::vector<double> fourier(const DualSpace& dual, const std::vector<double>& f);
// mu_check(i) = sum_j mu_j P_i(x_j)
std::vector<double> inverse_fourier(const DualSpace& dual, const std::vector<double>& mu);

}  // namespace drg
