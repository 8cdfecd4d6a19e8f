#pragma once

// Positivity of Gibbs kernels x^{d(u,v)} through the associated hypergroup:
// Bochner test on the dual space, Gram-matrix tests, exact region assembly
// and truncation scans for unbounded hypergroups.

#include "drg/hypergroup.hpp"
#include "drg/region.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace drg {

enum class Verdict { PSD, NotPSD };

struct Certificate {
  Verdict verdict = Verdict::PSD;
  std::string method;
  double tolerance = 0.0;

  // PSD evidence.
  std::vector<double> dual_measure;  // mu_j = pi_j f_hat(x_j)
  std::optional<std::size_t> truncation_level;

  // NotPSD witnesses; which ones are set depends on the method.
  std::optional<std::size_t> witness_dual_index;  // f_hat(x_j) < -tolerance
  std::vector<std::size_t> witness_indices;       // principal submatrix
  std::vector<double> witness_vector;             // eigenvector of the minimum eigenvalue
  double witness_value = 0.0;                     // f_hat(x_j), minor or minimum eigenvalue

  bool psd() const { return verdict == Verdict::PSD; }
};

const char* to_string(Verdict v);

using ExactMatrix = std::vector<std::vector<Rational>>;

// f_x(i) = x^i for i = 0..n, with 0^0 = 1.
std::vector<double> geometric_function(double x, std::size_t n);
std::vector<Rational> geometric_function(const Rational& x, std::size_t n);

// Bochner test for an arbitrary f on 0..D: PSD iff f_hat(x_j) >= -tau for
// every dual point, tau = relative * sum(omega).
constexpr double kBochnerRelativeTolerance = 1e-10;
Certificate bochner_check(const DualSpace& dual, const std::vector<double>& f,
                          double relative = kBochnerRelativeTolerance);
Certificate gibbs_check_finite(const DualSpace& dual, double x, double relative = kBochnerRelativeTolerance);
Certificate gibbs_check_finite(const PolynomialHypergroup& h, double x, double relative = kBochnerRelativeTolerance);

// Bochner dual polynomials q_j(x) = sum_i omega_i P_i(x_j) x^i (ascending).
std::vector<std::vector<double>> dual_polynomials(const DualSpace& dual);

// M_{ij} = sum_k g_{ij}^k f(k) for 0 <= i, j <= n.  `f` must cover every
// index in the supports (min(2n, D)).
ExactMatrix gram_matrix(const PolynomialHypergroup& h, const std::vector<Rational>& f, std::size_t n);
Eigen::MatrixXd gram_matrix(const PolynomialHypergroup& h, const std::vector<double>& f, std::size_t n);

Rational determinant(const ExactMatrix& m);
// Every principal minor >= 0 (for matrices up to 9x9).
Certificate gram_psd_check(const ExactMatrix& m);
// Minimum eigenvalue >= -relative_tolerance * ||M||_2.
Certificate gram_psd_check(const Eigen::MatrixXd& m, double relative_tolerance = 1e-8);

// Convolution tensor of the first n+1 indices in double precision, for fast
// assembly of Gram matrices of geometric functions at many x.
class GramAssembler {
 public:
  GramAssembler(const PolynomialHypergroup& h, std::size_t n);
  Eigen::MatrixXd gram_geometric(double x) const;
  Eigen::MatrixXd gram(const std::vector<double>& f) const;
  std::size_t level() const { return n_; }

 private:
  std::size_t n_;
  std::size_t max_index_;
  // weights_[i * (n+1) + j] lists (k, g_{ij}^k)
  std::vector<std::vector<std::pair<std::size_t, double>>> weights_;
};

constexpr double kRegionEndpointTolerance = 1e-8;

PositivityRegion positivity_region(const DualSpace& dual);
PositivityRegion positivity_region(const PolynomialHypergroup& h);

// Set of x where the (n+1)x(n+1) Gram matrix of f_x is PSD, from a uniform
// grid of `grid_intervals` cells refined by bisection at every verdict change.
// Contains the hypergroup positive-definite set; nonincreasing in n.
PositivityRegion truncated_region(const PolynomialHypergroup& h, std::size_t n, std::size_t grid_intervals = 512);

// exp(s (y - 1)) from its power series, stopped once the ratio-test tail
// bound drops below 1e-14 of the partial sum.
double exp_series(double y, double s);

struct SchurResult {
  Certificate certificate;
  std::vector<double> transformed;  // k -> exp(t (x^k - 1)/(1 - x))
  Eigen::MatrixXd gram_transformed;
  Eigen::MatrixXd gram_limit;       // Gram matrix of f_{e^{-t}}
  double max_gram_deviation = 0.0;
};

// Checks the kernel exp(t (f_x - 1)/(1 - x)) on a finite hypergroup.
// Requires x in (0, 1), t >= 0 and f_x itself positive definite.
SchurResult schur_exp_stability(const PolynomialHypergroup& h, double x, double t);

// Re-evaluates a NotPSD witness; true when it still shows a violation
// (by more than 1e-9 in the scale of the stored value).
bool witness_reproduces(const Certificate& c, const DualSpace& dual, const std::vector<double>& f);
bool witness_reproduces(const Certificate& c, const Eigen::MatrixXd& m);

}  // namespace drg
