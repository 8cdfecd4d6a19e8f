#pragma once

// Orthogonality and spectral measures for Gamma(a, b) and a quadrature
// adapted to square-root endpoint behaviour.

#include "drg/families.hpp"

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

namespace drg {

enum class MeasureFrame {
  Tilde,    // variable x with P~_n(x) = P_n(T(x)), support in [-1, 1]
  Natural,  // variable of the recurrence polynomials P_n
};

struct SpectralMeasure {
  std::function<double(double)> density;  // empty means no absolutely continuous part
  Interval support;
  std::vector<std::pair<double, double>> atoms;  // (location, weight)
  MeasureFrame frame = MeasureFrame::Tilde;
  int a = 0;
  int b = 0;

  double center() const { return 0.5 * (support.lo + support.hi); }
  double half_width() const { return 0.5 * (support.hi - support.lo); }
};

// w~(x) = (a / 2 pi) sqrt(1 - x^2) / ((s~_1 - x)(x - s~_0)) on [-1, 1],
// plus the atom (b - a)/b at s~_0 when b > a.
SpectralMeasure tree_orthogonality_measure(int a, int b);

// The same measure in the natural frame (pushed forward through T).
SpectralMeasure natural_orthogonality_measure(int a, int b);

// Measure mu_x on [-2 sqrt(a-1)/a, 2 sqrt(a-1)/a] with x^n = int P_n^{(a,2)} d mu_x,
// for |x| < 1/sqrt(a-1); x = +-1 gives the point mass at x.  Other x are
// DomainError (including the boundary |x| = 1/sqrt(a-1)).
SpectralMeasure letac_measure(int a, double x);

constexpr double kDefaultQuadratureTolerance = 1e-9;
constexpr int kMaxQuadratureRefinements = 20;

// integral of f against m: substitution z = center + c cos(theta), composite
// Gauss-Legendre in theta with panel doubling until successive values differ
// by less than tol; atoms are added exactly.  Throws NoConvergence.
double quadrature(const SpectralMeasure& m, const std::function<double(double)>& f,
                  double tol = kDefaultQuadratureTolerance);

double total_mass(const SpectralMeasure& m, double tol = kDefaultQuadratureTolerance);

// P~_n(x) for Gamma(a, b) through the recurrence and the T-map.
double tree_polynomial_tilde(const GammaFamily& g, std::size_t n, double x);

// int P~_n^2 d rho~ for n = 0..n_max.
std::vector<double> tree_norms(int a, int b, std::size_t n_max, double tol = kDefaultQuadratureTolerance);

// max_{n <= n_max} |int P_n d mu_x - x^n| for each x.
std::vector<double> moment_identity_scan(int a, const std::vector<double>& xs, std::size_t n_max,
                                         double tol = kDefaultQuadratureTolerance);

// `samples` interior points of the support, ascending.
std::vector<std::pair<double, double>> sample_density(const SpectralMeasure& m, std::size_t samples);
void write_density_csv(std::ostream& out, const SpectralMeasure& m, std::size_t samples);

}  // namespace drg
