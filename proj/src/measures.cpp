#include "drg/measures.hpp"

#include "drg/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

namespace drg {

namespace {

constexpr std::size_t kGaussPoints = 20;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Legendre nodes by Newton iteration from the Chebyshev guesses.
GaussRule make_gauss_legendre() {
  GaussRule r;
  const int n = static_cast<int>(kGaussPoints);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_legendre();
  return rule;
}

void check_tree(int a, int b) {
  if (a < 2 || b < 2) throw BadParam("Gamma(a,b) measures need a, b >= 2");
}

}  // namespace

SpectralMeasure tree_orthogonality_measure(int a, int b) {
  check_tree(a, b);
  const TreeConstants tc = tree_constants(a, b);
  SpectralMeasure m;
  m.a = a;
  m.b = b;
  m.frame = MeasureFrame::Tilde;
  m.support = {-1.0, 1.0};
  const double s0 = tc.tilde_s0, s1 = tc.tilde_s1;
  m.density = [a, s0, s1](double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return a / (2.0 * std::numbers::pi) * std::sqrt(1.0 - x * x) / ((s1 - x) * (x - s0));
  };
  if (tc.atom_weight) m.atoms.emplace_back(s0, to_double(*tc.atom_weight));
  return m;
}

SpectralMeasure natural_orthogonality_measure(int a, int b) {
  const SpectralMeasure t = tree_orthogonality_measure(a, b);
  const TreeConstants tc = tree_constants(a, b);
  SpectralMeasure m;
  m.a = a;
  m.b = b;
  m.frame = MeasureFrame::Natural;
  m.support = {tc.support_left, tc.support_right};
  auto inner = t.density;
  m.density = [inner, tc](double y) { return inner(tc.T_inverse(y)) / tc.slope; };
  if (tc.atom_weight) m.atoms.emplace_back(to_double(tc.s0), to_double(*tc.atom_weight));
  return m;
}

SpectralMeasure letac_measure(int a, double x) {
  if (a < 2) throw BadParam("letac_measure needs a >= 2");
  SpectralMeasure m;
  m.a = a;
  m.b = 2;
  m.frame = MeasureFrame::Natural;
  const double c = 2.0 * std::sqrt(a - 1.0) / a;
  m.support = {-c, c};
  if (x == 1.0 || x == -1.0) {
    m.atoms.emplace_back(x, 1.0);
    return m;
  }
  const double limit = 1.0 / std::sqrt(a - 1.0);
  if (!(std::abs(x) < limit)) {
    throw DomainError("letac_measure: |x| must be below 1/sqrt(a-1) = " + std::to_string(limit) + ", got " +
                      std::to_string(x));
  }
  const double factor = a / (2.0 * std::numbers::pi) * (1.0 - x * x);
  m.density = [a, x, c, factor](double z) {
    if (z <= -c || z >= c) return 0.0;
    const double denom = 1.0 + (a - 1.0) * x * x - a * z * x;
    if (!(denom > 0.0)) throw NumericalFailure("letac_measure: denominator is not positive at z = " + std::to_string(z));
    return factor / denom * std::sqrt(c * c - z * z) / (1.0 - z * z);
  };
  return m;
}

double quadrature(const SpectralMeasure& m, const std::function<double(double)>& f, double tol) {
  double atoms = 0.0;
  for (const auto& [loc, w] : m.atoms) atoms += w * f(loc);
  if (!m.density) return atoms;

  const GaussRule& rule = gauss_rule();
  const double center = m.center();
  const double c = m.half_width();
  auto panel_sum = [&](std::size_t panels) {
    const double h = std::numbers::pi / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = (static_cast<double>(p) + 0.5) * h;
      double s = 0.0;
      for (std::size_t k = 0; k < kGaussPoints; ++k) {
        const double theta = mid + 0.5 * h * rule.nodes[k];
        const double z = center + c * std::cos(theta);
        s += rule.weights[k] * f(z) * m.density(z) * c * std::sin(theta);
      }
      total += 0.5 * h * s;
    }
    return total;
  };

  std::size_t panels = 1;
  double prev = panel_sum(panels);
  for (int r = 0; r < kMaxQuadratureRefinements; ++r) {
    panels *= 2;
    const double next = panel_sum(panels);
    if (std::abs(next - prev) < tol) return next + atoms;
    prev = next;
  }
  throw NoConvergence("quadrature did not settle within " + std::to_string(kMaxQuadratureRefinements) +
                      " refinements");
}

double total_mass(const SpectralMeasure& m, double tol) {
  return quadrature(m, [](double) { return 1.0; }, tol);
}

double tree_polynomial_tilde(const GammaFamily& g, std::size_t n, double x) {
  return g.hypergroup.eval_polynomial(n, g.constants.T(x));
}

std::vector<double> tree_norms(int a, int b, std::size_t n_max, double tol) {
  const GammaFamily g = gamma_ab(a, b);
  const SpectralMeasure m = tree_orthogonality_measure(a, b);
  std::vector<double> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.push_back(quadrature(m, [&](double x) {
      const double p = tree_polynomial_tilde(g, n, x);
      return p * p;
    }, tol));
  }
  return out;
}

std::vector<double> moment_identity_scan(int a, const std::vector<double>& xs, std::size_t n_max, double tol) {
  const GammaFamily g = gamma_ab(a, 2);
  for (double x : xs) letac_measure(a, x);
  return kernels::parallel::map_grid(xs, [&](double x) {
    const SpectralMeasure m = letac_measure(a, x);
    double worst = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
      const double v = quadrature(m, [&](double z) { return g.hypergroup.eval_polynomial(n, z); }, tol);
      worst = std::max(worst, std::abs(v - std::pow(x, static_cast<double>(n))));
    }
    return worst;
  });
}

std::vector<std::pair<double, double>> sample_density(const SpectralMeasure& m, std::size_t samples) {
  std::vector<std::pair<double, double>> out;
  const double lo = m.support.lo, hi = m.support.hi;
  for (std::size_t k = 0; k < samples; ++k) {
    const double z = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    out.emplace_back(z, m.density ? m.density(z) : 0.0);
  }
  return out;
}

void write_density_csv(std::ostream& out, const SpectralMeasure& m, std::size_t samples) {
  out << "z,density\n";
  out.precision(17);
  for (const auto& [z, d] : sample_density(m, samples)) out << z << ',' << d << '\n';
}

}  // namespace drg
