#include "doctest.h"

#include "drg/measures.hpp"

#include <cmath>
#include <sstream>

using namespace drg;

TEST_CASE("tree orthogonality measures have mass one") {
  for (int a = 2; a <= 5; ++a) {
    for (int b = 2; b <= 5; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      const auto m = tree_orthogonality_measure(a, b);
      CHECK(total_mass(m, 1e-11) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(m.atoms.size() == (b > a ? 1u : 0u));
      if (b > a) CHECK(m.atoms[0].second == doctest::Approx(static_cast<double>(b - a) / b));
      const auto n = natural_orthogonality_measure(a, b);
      CHECK(total_mass(n, 1e-11) == doctest::Approx(1.0).epsilon(1e-8));
      for (int k = 1; k < 50; ++k) {
        const double x = -1.0 + 2.0 * k / 50.0;
        CHECK(m.density(x) >= 0.0);
      }
    }
  }
  CHECK(tree_orthogonality_measure(3, 3).atoms.empty());
  const auto atom = tree_orthogonality_measure(2, 4);
  CHECK(atom.atoms[0].second == 0.5);
  CHECK(atom.atoms[0].first == doctest::Approx(tree_constants(2, 4).tilde_s0));
  CHECK_THROWS_AS(tree_orthogonality_measure(1, 3), BadParam);
}

TEST_CASE("tree polynomials are orthogonal in both frames") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 3}, {2, 4}, {3, 2}, {4, 3}}) {
    const auto g = gamma_ab(a, b);
    const auto t = tree_orthogonality_measure(a, b);
    const auto n = natural_orthogonality_measure(a, b);
    for (std::size_t p = 0; p <= 8; ++p) {
      for (std::size_t q = p + 1; q <= 8; ++q) {
        const double tilde = quadrature(t, [&](double x) {
          return tree_polynomial_tilde(g, p, x) * tree_polynomial_tilde(g, q, x);
        }, 1e-11);
        const double natural = quadrature(n, [&](double y) {
          return g.hypergroup.eval_polynomial(p, y) * g.hypergroup.eval_polynomial(q, y);
        }, 1e-11);
        CHECK(std::abs(tilde) < 1e-7);
        CHECK(std::abs(natural) < 1e-7);
      }
    }
    const auto norms = tree_norms(a, b, 6, 1e-11);
    CHECK(norms[0] == doctest::Approx(1.0));
    for (double v : norms) CHECK(v > 0.0);
  }
}

TEST_CASE("worked quadrature values") {
  const auto g33 = gamma_ab(3, 3);
  const auto r33 = tree_orthogonality_measure(3, 3);
  CHECK(std::abs(quadrature(r33, [&](double x) {
          return tree_polynomial_tilde(g33, 2, x) * tree_polynomial_tilde(g33, 5, x);
        })) < 1e-7);
  const auto g24 = gamma_ab(2, 4);
  CHECK(std::abs(quadrature(tree_orthogonality_measure(2, 4), [&](double x) {
          return tree_polynomial_tilde(g24, 1, x);
        })) < 1e-7);
  CHECK(total_mass(tree_orthogonality_measure(3, 2)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Letac measures reproduce the moments x^n") {
  const auto m = letac_measure(3, 0.3);
  const auto g = gamma_ab(3, 2);
  for (std::size_t n = 0; n <= 10; ++n) {
    const double v = quadrature(m, [&](double z) { return g.hypergroup.eval_polynomial(n, z); }, 1e-11);
    CHECK(std::abs(v - std::pow(0.3, static_cast<double>(n))) < 1e-7);
  }
  CHECK(moment_identity_scan(3, {-0.2}, 10)[0] < 1e-7);
  CHECK(moment_identity_scan(4, {0.5}, 10)[0] < 1e-7);
  // x = 0 gives the orthogonality measure of the tree polynomials.
  const auto zero = letac_measure(3, 0.0);
  const auto nat = natural_orthogonality_measure(3, 2);
  for (double z : {-0.8, -0.3, 0.0, 0.5}) CHECK(zero.density(z) == doctest::Approx(nat.density(z)));
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(std::abs(quadrature(zero, [&](double z) { return g.hypergroup.eval_polynomial(n, z); })) < 1e-8);
  }
}

TEST_CASE("Letac measure edge cases") {
  const auto one = letac_measure(3, 1.0);
  CHECK_FALSE(one.density);
  REQUIRE(one.atoms.size() == 1);
  CHECK(quadrature(one, [](double z) { return z * z; }) == 1.0);
  const auto minus = letac_measure(4, -1.0);
  CHECK(minus.atoms[0].first == -1.0);
  CHECK_THROWS_AS(letac_measure(3, 1.0 / std::sqrt(2.0)), DomainError);
  CHECK_THROWS_AS(letac_measure(3, 0.9), DomainError);
  CHECK_THROWS_AS(letac_measure(1, 0.1), BadParam);
  CHECK_THROWS_AS(moment_identity_scan(3, {0.1, 0.95}, 4), DomainError);
  // Denominator positivity over the support for admissible x.
  for (int a : {3, 4, 6}) {
    const double lim = 1.0 / std::sqrt(a - 1.0);
    for (double x : {-0.99 * lim, 0.5 * lim, 0.99 * lim}) {
      const auto m = letac_measure(a, x);
      for (int k = 1; k < 100; ++k) {
        const double z = m.support.lo + (m.support.hi - m.support.lo) * k / 100.0;
        CHECK(m.density(z) >= 0.0);
      }
    }
  }
}

TEST_CASE("quadrature convergence failure is reported") {
  SpectralMeasure wild;
  wild.support = {-1.0, 1.0};
  wild.density = [](double z) { return std::sin(1e6 * z); };
  CHECK_THROWS_AS(quadrature(wild, [](double) { return 1.0; }, 1e-15), NoConvergence);
}

TEST_CASE("density CSV") {
  std::ostringstream out;
  write_density_csv(out, tree_orthogonality_measure(3, 3), 10);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "z,density");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 10);
  const auto s = sample_density(tree_orthogonality_measure(3, 3), 7);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k].first > s[k - 1].first);
}
