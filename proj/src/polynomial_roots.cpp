#include "drg/polynomial_roots.hpp"

#include "drg/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace drg {

double eval_poly(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

double eval_derivative(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

double polish(const std::vector<double>& coeffs, double x) {
  for (int it = 0; it < 8; ++it) {
    double f = eval_poly(coeffs, x);
    double df = eval_derivative(coeffs, x);
    if (df == 0.0) break;
    double next = x - f / df;
    if (!std::isfinite(next) || std::abs(eval_poly(coeffs, next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<double> real_roots(std::vector<double> coeffs, double imag_tol) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
  const std::size_t degree = coeffs.size() - 1;
  if (degree == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree), static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -coeffs[i] / coeffs[degree];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("companion-matrix eigensolver did not converge");

  std::vector<double> roots;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const std::complex<double> z = solver.eigenvalues()(k);
    double re = z.real();
    bool accept = std::abs(z.imag()) <= imag_tol;
    if (!accept && std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(re))) {
      // Near-double root split into a conjugate pair by rounding.
      double mag = 0.0;
      double p = 1.0;
      for (double c : coeffs) {
        mag += std::abs(c) * p;
        p *= std::abs(re);
      }
      accept = std::abs(eval_poly(coeffs, re)) <= 1e-10 * mag;
    }
    if (accept) roots.push_back(polish(coeffs, re));
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || r - unique.back() > 1e-12 * std::max(1.0, std::abs(r))) unique.push_back(r);
  }
  return unique;
}

}  // namespace drg
