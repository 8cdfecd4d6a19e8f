#include "drg/families.hpp"

#include <cmath>
#include <sstream>

namespace drg {

namespace {

Rational q_pow(int q, int e) {
  if (e >= 0) return Rational(ipow(q, static_cast<unsigned>(e)));
  return Rational(BigInt(1), ipow(q, static_cast<unsigned>(-e)));
}

BigInt gaussian_binomial(int q, int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int t = 0; t < k; ++t) {
    num *= ipow(q, static_cast<unsigned>(n - t)) - 1;
    den *= ipow(q, static_cast<unsigned>(t + 1)) - 1;
  }
  return num / den;
}

// Completes (a_i) and a closed-form Haar sequence to full coefficient triples:
// c_{i+1} = omega_i a_i / omega_{i+1}, b_i = 1 - a_i - c_i.
std::vector<RecurrenceCoeffs> from_a_and_haar(const std::vector<Rational>& a, const std::vector<Rational>& omega) {
  std::vector<RecurrenceCoeffs> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].a = a[i];
    out[i].c = i == 0 ? Rational(0) : omega[i - 1] * a[i - 1] / omega[i];
    out[i].b = 1 - out[i].a - out[i].c;
  }
  return out;
}

}  // namespace

FamilySpec FamilySpec::complete(int n) {
  FamilySpec s;
  s.kind = FamilyKind::Complete;
  s.N = n;
  s.validate();
  return s;
}

FamilySpec FamilySpec::hamming(int d, int n) {
  FamilySpec s;
  s.kind = FamilyKind::Hamming;
  s.D = d;
  s.N = n;
  s.validate();
  return s;
}

FamilySpec FamilySpec::johnson(int v, int d) {
  FamilySpec s;
  s.kind = FamilyKind::Johnson;
  s.v = v;
  s.D = d;
  s.validate();
  return s;
}

FamilySpec FamilySpec::q_johnson(int q, int v, int d) {
  FamilySpec s;
  s.kind = FamilyKind::QJohnson;
  s.q = q;
  s.v = v;
  s.D = d;
  s.validate();
  return s;
}

FamilySpec FamilySpec::gamma(int a, int b) {
  FamilySpec s;
  s.kind = FamilyKind::GammaAB;
  s.a = a;
  s.b = b;
  s.validate();
  return s;
}

FamilySpec FamilySpec::octahedron() {
  FamilySpec s;
  s.kind = FamilyKind::Octahedron;
  return s;
}

void FamilySpec::validate() const {
  auto bad = [this](const std::string& why) { throw BadParam(descriptor() + ": " + why); };
  switch (kind) {
    case FamilyKind::Complete:
      if (N < 2) bad("N >= 2 required");
      break;
    case FamilyKind::Hamming:
      if (N < 2) bad("N >= 2 required");
      if (D < 1) bad("D >= 1 required");
      break;
    case FamilyKind::Johnson:
      if (D < 1 || 2 * D > v) bad("1 <= D <= v/2 required");
      break;
    case FamilyKind::QJohnson:
      if (q < 2) bad("q >= 2 required");
      if (D < 1 || 2 * D > v) bad("1 <= D <= v/2 required");
      break;
    case FamilyKind::GammaAB:
      if (a < 2 || b < 2) bad("a, b >= 2 required");
      break;
    case FamilyKind::Octahedron:
      break;
    case FamilyKind::CustomRecurrence:
      if (custom.size() < 2) bad("at least two coefficient triples required");
      break;
  }
}

std::string FamilySpec::descriptor() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::Complete: os << "complete:N=" << N; break;
    case FamilyKind::Hamming: os << "hamming:D=" << D << ",N=" << N; break;
    case FamilyKind::Johnson: os << "johnson:v=" << v << ",D=" << D; break;
    case FamilyKind::QJohnson: os << "qjohnson:q=" << q << ",v=" << v << ",D=" << D; break;
    case FamilyKind::GammaAB: os << "gamma:a=" << a << ",b=" << b; break;
    case FamilyKind::Octahedron: os << "octahedron"; break;
    case FamilyKind::CustomRecurrence:
      os << "custom:[";
      for (std::size_t i = 0; i < custom.size(); ++i) {
        if (i) os << ";";
        os << custom[i].a << "," << custom[i].b << "," << custom[i].c;
      }
      os << "]";
      break;
  }
  return os.str();
}

PolynomialHypergroup complete(int n) {
  FamilySpec::complete(n);
  std::vector<RecurrenceCoeffs> c{{1, 0, 0}, {0, ratio(n - 2, n - 1), ratio(1, n - 1)}};
  return PolynomialHypergroup::from_recurrence(std::move(c), 1, FamilySpec::complete(n).descriptor());
}

PolynomialHypergroup hamming(int d, int n) {
  FamilySpec spec = FamilySpec::hamming(d, n);
  const Rational p = ratio(n - 1, n);
  std::vector<RecurrenceCoeffs> c(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    Rational frac = ratio(i, d);
    c[static_cast<std::size_t>(i)] = {ratio(d - i, d), (2 * p - 1) / p * frac, (1 - p) / p * frac};
  }
  return PolynomialHypergroup::from_recurrence(std::move(c), static_cast<std::size_t>(d), spec.descriptor());
}

PolynomialHypergroup johnson(int v, int d) {
  FamilySpec spec = FamilySpec::johnson(v, d);
  std::vector<Rational> a(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) a[static_cast<std::size_t>(i)] = ratio((d - i) * (v - d - i), d * (v - d));
  auto coeffs = from_a_and_haar(a, closed_form_haar(spec));
  return PolynomialHypergroup::from_recurrence(std::move(coeffs), static_cast<std::size_t>(d), spec.descriptor());
}

PolynomialHypergroup q_johnson(int q, int v, int d) {
  FamilySpec spec = FamilySpec::q_johnson(q, v, d);
  const BigInt qd = ipow(q, static_cast<unsigned>(d));
  const BigInt qvd = ipow(q, static_cast<unsigned>(v - d));
  std::vector<Rational> a(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    BigInt qi = ipow(q, static_cast<unsigned>(i));
    a[static_cast<std::size_t>(i)] = Rational((qd - qi) * (qvd - qi), (qd - 1) * (qvd - 1));
  }
  auto coeffs = from_a_and_haar(a, closed_form_haar(spec));
  return PolynomialHypergroup::from_recurrence(std::move(coeffs), static_cast<std::size_t>(d), spec.descriptor());
}

PolynomialHypergroup octahedron() {
  // delta_1*delta_1 = 1/4 delta_0 + 1/2 delta_1 + 1/4 delta_2, delta_1*delta_2 = delta_1
  std::vector<RecurrenceCoeffs> c{{1, 0, 0}, {ratio(1, 4), ratio(1, 2), ratio(1, 4)}, {0, 0, 1}};
  return PolynomialHypergroup::from_recurrence(std::move(c), 2, "octahedron");
}

TreeConstants tree_constants(int a, int b) {
  FamilySpec::gamma(a, b);
  TreeConstants t;
  const double root = std::sqrt(static_cast<double>(a - 1) * (b - 1));
  t.tilde_s0 = (2.0 - a - b) / (2.0 * root);
  t.tilde_s1 = (static_cast<double>(a) * b - a - b + 2.0) / (2.0 * root);
  t.slope = 2.0 / a * std::sqrt(static_cast<double>(a - 1) / (b - 1));
  t.intercept = ratio(b - 2, a * (b - 1));
  // The radicals cancel in T(tilde_s0), T(tilde_s1) and T(-tilde_s1).
  t.s0 = ratio(2 - a - b, a * (b - 1)) + t.intercept;
  t.s1 = ratio(a * b - a - b + 2, a * (b - 1)) + t.intercept;
  t.hat_x_left = -ratio(a * b - a - b + 2, a * (b - 1)) + t.intercept;
  const double center = to_double(t.intercept);
  t.support_left = center - t.slope;
  t.support_right = center + t.slope;
  if (b > a) t.atom_weight = ratio(b - a, b);
  return t;
}

GammaFamily gamma_ab(int a, int b) {
  FamilySpec spec = FamilySpec::gamma(a, b);
  const RecurrenceCoeffs bulk{ratio(a - 1, a), ratio(b - 2, a * (b - 1)), ratio(1, a * (b - 1))};
  auto gen = [bulk](std::size_t i) { return i == 0 ? RecurrenceCoeffs{1, 0, 0} : bulk; };
  return {PolynomialHypergroup::unbounded(gen, spec.descriptor()), tree_constants(a, b)};
}

PolynomialHypergroup build_hypergroup(const FamilySpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FamilyKind::Complete: return complete(spec.N);
    case FamilyKind::Hamming: return hamming(spec.D, spec.N);
    case FamilyKind::Johnson: return johnson(spec.v, spec.D);
    case FamilyKind::QJohnson: return q_johnson(spec.q, spec.v, spec.D);
    case FamilyKind::GammaAB: return gamma_ab(spec.a, spec.b).hypergroup;
    case FamilyKind::Octahedron: return octahedron();
    case FamilyKind::CustomRecurrence:
      return PolynomialHypergroup::from_recurrence(spec.custom, std::nullopt, spec.descriptor());
  }
  throw BadParam("unknown family kind");
}

std::vector<Rational> closed_form_haar(const FamilySpec& spec, std::size_t up_to) {
  spec.validate();
  std::vector<Rational> w;
  switch (spec.kind) {
    case FamilyKind::Complete:
      w = {Rational(1), Rational(spec.N - 1)};
      break;
    case FamilyKind::Hamming:
      for (int i = 0; i <= spec.D; ++i) w.emplace_back(binomial(spec.D, i) * ipow(spec.N - 1, static_cast<unsigned>(i)));
      break;
    case FamilyKind::Johnson:
      for (int i = 0; i <= spec.D; ++i) w.emplace_back(binomial(spec.D, i) * binomial(spec.v - spec.D, i));
      break;
    case FamilyKind::Octahedron:
      w = {Rational(1), Rational(4), Rational(1)};
      break;
    case FamilyKind::QJohnson:
      for (int i = 0; i <= spec.D; ++i) {
        w.emplace_back(ipow(spec.q, static_cast<unsigned>(i * i)) * gaussian_binomial(spec.q, spec.D, i) *
                       gaussian_binomial(spec.q, spec.v - spec.D, i));
      }
      break;
    case FamilyKind::GammaAB: {
      w.emplace_back(1);
      Rational cur(spec.a * (spec.b - 1));
      for (std::size_t k = 1; k <= up_to; ++k) {
        w.push_back(cur);
        cur *= (spec.a - 1) * (spec.b - 1);
      }
      break;
    }
    case FamilyKind::CustomRecurrence:
      return build_hypergroup(spec).haar_weights();
  }
  return w;
}

Rational hamming_dual_point(int d, int n, int x) { return 1 - ratio(static_cast<std::int64_t>(n) * x, static_cast<std::int64_t>(d) * (n - 1)); }

Rational johnson_dual_point(int v, int d, int j) {
  return 1 - ratio(static_cast<std::int64_t>(j) * (v - j + 1), static_cast<std::int64_t>(d) * (v - d));
}

Rational q_johnson_dual_point(int q, int v, int d, int j) {
  Rational num = q_pow(q, j - 1) + q_pow(q, v - j) - q_pow(q, v - d) - q_pow(q, d) + ratio(q - 1, q);
  Rational den = (q_pow(q, d) - 1) * (q_pow(q, v - d) - 1);
  return num / den;
}

std::optional<std::vector<double>> closed_form_dual(const FamilySpec& spec) {
  spec.validate();
  std::vector<double> out;
  switch (spec.kind) {
    case FamilyKind::Complete:
      out = {1.0, -1.0 / (spec.N - 1)};
      break;
    case FamilyKind::Hamming:
      for (int x = 0; x <= spec.D; ++x) out.push_back(to_double(hamming_dual_point(spec.D, spec.N, x)));
      break;
    case FamilyKind::Johnson:
      for (int j = 0; j <= spec.D; ++j) out.push_back(to_double(johnson_dual_point(spec.v, spec.D, j)));
      break;
    case FamilyKind::Octahedron:
      for (int j = 0; j <= 2; ++j) out.push_back(to_double(johnson_dual_point(4, 2, j)));
      break;
    case FamilyKind::QJohnson:
      for (int j = 0; j <= spec.D; ++j) out.push_back(to_double(q_johnson_dual_point(spec.q, spec.v, spec.D, j)));
      break;
    case FamilyKind::GammaAB:
    case FamilyKind::CustomRecurrence:
      return std::nullopt;
  }
  return out;
}

std::optional<PredictedRegion> predicted_region(const FamilySpec& spec) {
  spec.validate();
  PredictedRegion p;
  switch (spec.kind) {
    case FamilyKind::Complete:
      p.region.intervals = {{-1.0 / (spec.N - 1), 1.0}};
      p.exact = true;
      break;
    case FamilyKind::Hamming:
      p.region.intervals = {{-1.0 / (spec.N - 1), 1.0}};
      p.exact = true;
      break;
    case FamilyKind::Octahedron:
      p.region.intervals = {{-2.0 + std::sqrt(3.0), 1.0}};
      p.exact = true;
      break;
    case FamilyKind::Johnson:
      p.region.intervals = {{0.0, 1.0}};
      break;
    case FamilyKind::QJohnson: {
      double x = 1.0;
      for (int j = 0; j <= 30 && x > 1e-9; ++j, x /= spec.q) p.region.isolated_points.push_back(x);
      p.region.isolated_points.push_back(0.0);
      p.region.normalize();
      break;
    }
    case FamilyKind::GammaAB:
      p.region.intervals = {{-1.0 / (spec.b - 1), 1.0}};
      p.exact = true;
      break;
    case FamilyKind::CustomRecurrence:
      return std::nullopt;
  }
  return p;
}

FiniteMeasure closed_form_g(int a, int b, int m, int n) {
  FamilySpec::gamma(a, b);
  if (m < 0 || n < 0) throw BadParam("closed_form_g: m, n >= 0 required");
  const int l = std::min(m, n);
  const std::size_t low = static_cast<std::size_t>(std::abs(m - n));
  if (l == 0) return FiniteMeasure::point(static_cast<std::size_t>(m + n));

  auto pw = [](int base, int e) { return Rational(ipow(base, static_cast<unsigned>(e))); };
  FiniteMeasure g;
  g.add(static_cast<std::size_t>(m + n), ratio(a - 1, a));
  g.add(low, 1 / (a * pw(a - 1, l - 1) * pw(b - 1, l)));
  for (int k = 0; k <= l - 1; ++k) {
    g.add(low + 2 * static_cast<std::size_t>(k) + 1, (b - 2) / (a * pw(a - 1, l - k - 1) * pw(b - 1, l - k)));
  }
  for (int k = 0; k <= l - 2; ++k) {
    g.add(low + 2 * static_cast<std::size_t>(k) + 2, (a - 2) / (a * pw(a - 1, l - k - 1) * pw(b - 1, l - k - 1)));
  }
  return g;
}

Rational krawtchouk(int i, int x, int d, const Rational& p) {
  if (i < 0 || x < 0 || i > d || x > d) throw BadParam("krawtchouk: 0 <= i, x <= D required");
  if (p <= 0 || p >= 1) throw BadParam("krawtchouk: 0 < p < 1 required");
  Rational sum = 0;
  Rational term = 1;  // (-i)_k (-x)_k / ((-D)_k k!) p^{-k}
  for (int k = 0; k <= std::min(i, x); ++k) {
    sum += term;
    if (k == std::min(i, x)) break;
    term *= Rational((-i + k) * (-x + k)) / (Rational(-d + k) * (k + 1) * p);
  }
  return sum;
}

double tree_char_closed_form(int a, int b, int n, double z) {
  FamilySpec::gamma(a, b);
  if (z == 0.0 || z == 1.0 || z == -1.0) throw DomainError("tree_char_closed_form: z must avoid 0 and +-1");
  const double shift = (b - 2) * std::sqrt(static_cast<double>(a - 1) / (b - 1));
  auto c = [&](double w) { return ((a - 1) * w - 1.0 / w + shift) / (a * (w - 1.0 / w)); };
  const double num = c(z) * std::pow(z, n) + c(1.0 / z) * std::pow(z, -n);
  return num / std::pow(static_cast<double>(a - 1) * (b - 1), 0.5 * n);
}

}  // namespace drg
