#include "drg/positivity.hpp"

#include "drg/kernels.hpp"
#include "drg/polynomial_roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace drg {

const char* to_string(Verdict v) { return v == Verdict::PSD ? "PSD" : "NotPSD"; }

std::vector<double> geometric_function(double x, std::size_t n) {
  std::vector<double> f(n + 1);
  f[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) f[i] = f[i - 1] * x;
  return f;
}

std::vector<Rational> geometric_function(const Rational& x, std::size_t n) {
  std::vector<Rational> f(n + 1);
  f[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) f[i] = f[i - 1] * x;
  return f;
}

Certificate bochner_check(const DualSpace& dual, const std::vector<double>& f, double relative) {
  const std::vector<double> fhat = fourier(dual, f);
  Certificate c;
  c.method = "bochner";
  c.tolerance = relative * std::accumulate(dual.haar.begin(), dual.haar.end(), 0.0);
  std::size_t worst = 0;
  for (std::size_t j = 1; j < fhat.size(); ++j) {
    if (fhat[j] < fhat[worst]) worst = j;
  }
  if (fhat[worst] < -c.tolerance) {
    c.verdict = Verdict::NotPSD;
    c.witness_dual_index = worst;
    c.witness_value = fhat[worst];
    return c;
  }
  c.verdict = Verdict::PSD;
  c.dual_measure.resize(fhat.size());
  for (std::size_t j = 0; j < fhat.size(); ++j) c.dual_measure[j] = std::max(0.0, dual.plancherel[j] * fhat[j]);
  return c;
}

Certificate gibbs_check_finite(const DualSpace& dual, double x, double relative) {
  if (x < -1.0 || x > 1.0) throw DomainError("x must lie in [-1, 1]");
  return bochner_check(dual, geometric_function(x, dual.size() - 1), relative);
}

Certificate gibbs_check_finite(const PolynomialHypergroup& h, double x, double relative) {
  return gibbs_check_finite(dual_space(h), x, relative);
}

std::vector<std::vector<double>> dual_polynomials(const DualSpace& dual) {
  const std::size_t n = dual.size();
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      q[j][i] = dual.haar[i] * dual.characters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return q;
}

ExactMatrix gram_matrix(const PolynomialHypergroup& h, const std::vector<Rational>& f, std::size_t n) {
  ExactMatrix m(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      Rational s = 0;
      const FiniteMeasure ij = h.convolve(i, j);
      for (const auto& [k, w] : ij.weights()) {
        if (k >= f.size()) throw BadParam("gram_matrix: f is not defined at index " + std::to_string(k));
        s += w * f[k];
      }
      m[i][j] = s;
      m[j][i] = s;
    }
  }
  return m;
}

Eigen::MatrixXd gram_matrix(const PolynomialHypergroup& h, const std::vector<double>& f, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      double s = 0.0;
      const FiniteMeasure ij = h.convolve(i, j);
      for (const auto& [k, w] : ij.weights()) {
        if (k >= f.size()) throw BadParam("gram_matrix: f is not defined at index " + std::to_string(k));
        s += to_double(w) * f[k];
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
    }
  }
  return m;
}

Rational determinant(const ExactMatrix& input) {
  ExactMatrix a = input;
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  return det;
}

Certificate gram_psd_check(const ExactMatrix& m) {
  const std::size_t n = m.size();
  if (n > 9) throw BadParam("exact principal-minor test supports at most 9x9 matrices");
  Certificate c;
  c.method = "gram-exact";
  // Subsets by increasing size so the reported witness is a smallest one.
  for (std::size_t size = 1; size <= n; ++size) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) idx.push_back(k);
      }
      ExactMatrix sub(size, std::vector<Rational>(size));
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t s = 0; s < size; ++s) sub[r][s] = m[idx[r]][idx[s]];
      }
      Rational det = determinant(sub);
      if (det < 0) {
        c.verdict = Verdict::NotPSD;
        c.witness_indices = idx;
        c.witness_value = to_double(det);
        return c;
      }
    }
  }
  c.verdict = Verdict::PSD;
  return c;
}

Certificate gram_psd_check(const Eigen::MatrixXd& m, double relative_tolerance) {
  Certificate c;
  c.method = "gram";
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  c.tolerance = relative_tolerance * norm;
  c.witness_value = ev(0);
  if (ev(0) < -c.tolerance) {
    c.verdict = Verdict::NotPSD;
    const Eigen::VectorXd v = solver.eigenvectors().col(0);
    c.witness_vector.assign(v.data(), v.data() + v.size());
  } else {
    c.verdict = Verdict::PSD;
  }
  return c;
}

GramAssembler::GramAssembler(const PolynomialHypergroup& h, std::size_t n) : n_(n), max_index_(0) {
  weights_.resize((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      auto& w = weights_[i * (n + 1) + j];
      const FiniteMeasure ij = h.convolve(i, j);
      for (const auto& [k, g] : ij.weights()) {
        w.emplace_back(k, to_double(g));
        max_index_ = std::max(max_index_, k);
      }
      weights_[j * (n + 1) + i] = w;
    }
  }
}

Eigen::MatrixXd GramAssembler::gram(const std::vector<double>& f) const {
  if (f.size() <= max_index_) throw BadParam("GramAssembler: f does not cover the convolution supports");
  const Eigen::Index m = static_cast<Eigen::Index>(n_ + 1);
  Eigen::MatrixXd out(m, m);
  for (std::size_t i = 0; i <= n_; ++i) {
    for (std::size_t j = 0; j <= n_; ++j) {
      double s = 0.0;
      for (const auto& [k, g] : weights_[i * (n_ + 1) + j]) s += g * f[k];
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  }
  return out;
}

Eigen::MatrixXd GramAssembler::gram_geometric(double x) const { return gram(geometric_function(x, max_index_)); }

namespace {

double bochner_minimum(const std::vector<std::vector<double>>& q, double x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : q) m = std::min(m, eval_poly(p, x));
  return m;
}

// Assemble the region from sorted breakpoints given a pass predicate.
template <class Pass>
PositivityRegion assemble(const std::vector<double>& breaks, Pass&& pass) {
  PositivityRegion r;
  r.endpoint_tolerance = kRegionEndpointTolerance;
  const std::size_t nb = breaks.size();
  std::vector<char> at(nb), mid(nb > 0 ? nb - 1 : 0);
  for (std::size_t k = 0; k < nb; ++k) at[k] = pass(breaks[k]);
  for (std::size_t k = 0; k + 1 < nb; ++k) mid[k] = pass(0.5 * (breaks[k] + breaks[k + 1]));

  for (std::size_t k = 0; k < nb; ++k) {
    bool left = k > 0 && mid[k - 1];
    bool right = k + 1 < nb && mid[k];
    if (right) {
      double lo = breaks[k];
      std::size_t e = k;
      while (e + 1 < nb && mid[e]) ++e;
      r.intervals.push_back({lo, breaks[e]});
      k = e;  // breaks[e] closes the interval (continuity)
      continue;
    }
    if (at[k] && !left) r.isolated_points.push_back(breaks[k]);
  }
  r.normalize();
  return r;
}

}  // namespace

PositivityRegion positivity_region(const DualSpace& dual) {
  const auto q = dual_polynomials(dual);
  const double tau = kBochnerRelativeTolerance * std::accumulate(dual.haar.begin(), dual.haar.end(), 0.0);

  std::vector<double> breaks{-1.0, 1.0};
  for (const auto& p : q) {
    for (double root : real_roots(p)) {
      if (root >= -1.0 - 1e-12 && root <= 1.0 + 1e-12) breaks.push_back(std::clamp(root, -1.0, 1.0));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> unique;
  for (double b : breaks) {
    if (unique.empty() || b - unique.back() > 1e-12) unique.push_back(b);
  }
  return assemble(unique, [&](double x) { return bochner_minimum(q, x) >= -tau; });
}

PositivityRegion positivity_region(const PolynomialHypergroup& h) { return positivity_region(dual_space(h)); }

PositivityRegion truncated_region(const PolynomialHypergroup& h, std::size_t n, std::size_t grid_intervals) {
  PositivityRegion r;
  r.endpoint_tolerance = kRegionEndpointTolerance;
  if (n == 0) {
    r.intervals = {{-1.0, 1.0}};
    return r;
  }
  const GramAssembler gram(h, n);
  auto pass = [&gram](double x) { return gram_psd_check(gram.gram_geometric(x)).psd(); };

  const auto xs = kernels::uniform_grid(-1.0, 1.0, grid_intervals);
  const auto verdict = kernels::parallel::map_grid(xs, [&](double x) { return static_cast<char>(pass(x)); });

  // Boundary between a failing and a passing grid point, to 1e-12.
  auto refine = [&](double bad, double good) {
    for (int it = 0; it < 60 && std::abs(good - bad) > 1e-12; ++it) {
      double m = 0.5 * (bad + good);
      (pass(m) ? good : bad) = m;
    }
    return good;
  };

  const std::size_t m = xs.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (!verdict[k]) continue;
    std::size_t e = k;
    while (e + 1 < m && verdict[e + 1]) ++e;
    double lo = k == 0 ? xs[0] : refine(xs[k - 1], xs[k]);
    double hi = e + 1 == m ? xs[m - 1] : refine(xs[e + 1], xs[e]);
    if (hi - lo <= r.endpoint_tolerance) {
      r.isolated_points.push_back(0.5 * (lo + hi));
    } else {
      r.intervals.push_back({lo, hi});
    }
    k = e;
  }
  r.normalize();
  return r;
}

double exp_series(double y, double s) {
  const double z = s * y;
  if (z == 0.0 || s == 0.0) return std::exp(-s);
  double sum = 0.0;
  if (z > 0.0) {
    // Terms e^{-s} z^m / m! in log space.
    const double logz = std::log(z);
    for (std::size_t m = 0;; ++m) {
      const double term = std::exp(-s + static_cast<double>(m) * logz - std::lgamma(static_cast<double>(m) + 1.0));
      sum += term;
      const double ratio = z / static_cast<double>(m + 1);
      if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-14 * sum) break;
      if (m > 100000) throw NoConvergence("exp_series did not converge");
    }
    return sum;
  }
  // z < 0: the alternating series cancels badly, so sum e^{|z|} and invert.
  const double w = -z;
  double term = 1.0;
  for (std::size_t m = 0;; ++m) {
    sum += term;
    const double ratio = w / static_cast<double>(m + 1);
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-14 * sum) break;
    term *= ratio;
    if (m > 100000) throw NoConvergence("exp_series did not converge");
  }
  return std::exp(-s) / sum;
}

SchurResult schur_exp_stability(const PolynomialHypergroup& h, double x, double t) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("schur_exp_stability: x must lie in (0, 1)");
  if (t < 0.0) throw DomainError("schur_exp_stability: t >= 0 required");
  const DualSpace dual = dual_space(h);
  if (!gibbs_check_finite(dual, x).psd()) {
    throw DomainError("schur_exp_stability: f_x is not positive definite at x = " + std::to_string(x));
  }
  const std::size_t d = h.diameter();
  const double s = t / (1.0 - x);

  SchurResult out;
  out.transformed.resize(d + 1);
  const auto fx = geometric_function(x, d);
  for (std::size_t k = 0; k <= d; ++k) out.transformed[k] = exp_series(fx[k], s);
  out.certificate = bochner_check(dual, out.transformed);
  out.certificate.method = "schur-exp";

  out.gram_transformed = gram_matrix(h, out.transformed, d);
  out.gram_limit = gram_matrix(h, geometric_function(std::exp(-t), d), d);
  out.max_gram_deviation = (out.gram_transformed - out.gram_limit).cwiseAbs().maxCoeff();
  return out;
}

bool witness_reproduces(const Certificate& c, const DualSpace& dual, const std::vector<double>& f) {
  if (c.psd() || !c.witness_dual_index) return false;
  const auto fhat = fourier(dual, f);
  return fhat.at(*c.witness_dual_index) < -c.tolerance;
}

bool witness_reproduces(const Certificate& c, const Eigen::MatrixXd& m) {
  if (c.psd()) return false;
  if (!c.witness_vector.empty()) {
    Eigen::Map<const Eigen::VectorXd> v(c.witness_vector.data(), static_cast<Eigen::Index>(c.witness_vector.size()));
    return v.dot(m * v) < -c.tolerance;
  }
  if (!c.witness_indices.empty()) {
    const Eigen::Index k = static_cast<Eigen::Index>(c.witness_indices.size());
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index s = 0; s < k; ++s) {
        sub(r, s) = m(static_cast<Eigen::Index>(c.witness_indices[static_cast<std::size_t>(r)]),
                      static_cast<Eigen::Index>(c.witness_indices[static_cast<std::size_t>(s)]));
      }
    }
    return sub.determinant() < 0.0;
  }
  return false;
}

}  // namespace drg
