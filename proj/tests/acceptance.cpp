// Acceptance suite.  `drgpos_acceptance` runs every criterion, or only the
// ones whose numbers are given on the command line, and prints one
// PASS/FAIL line per criterion.

#include "drg/embedding.hpp"
#include "drg/families.hpp"
#include "drg/graph_oracle.hpp"
#include "drg/kernels.hpp"
#include "drg/measures.hpp"
#include "drg/positivity.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace drg;

namespace {

// Tolerances, one per criterion clause.
constexpr double kTolCompleteEndpoint = 1e-9;
constexpr double kTolOctahedronEndpoint = 1e-9;
constexpr double kTolHammingEndpoint = 1e-8;
constexpr double kTolQJohnsonEndpoint = 1e-8;
constexpr double kTolContainment = 1e-8;
constexpr double kOracleTau = 1e-10;  // vertex level: tau * |V|; hypergroup: 1e-10 * sum(omega)
constexpr double kTolTruncationContainment = 1e-8;
constexpr double kTolPlancherelMass = 1e-12;
constexpr double kTolDualOrthogonality = 1e-10;
constexpr double kTolClosedFormDual = 1e-9;
constexpr double kTolHausdorff = 0.02;
constexpr double kTolQJohnsonCloud = 1e-3;
constexpr double kTolMass = 1e-8;
constexpr double kTolOrthogonality = 1e-7;
constexpr double kTolLetac = 1e-7;
constexpr double kTolClosedFormCharacter = 1e-9;
constexpr double kTolSchurLimit = 1e-6;
constexpr double kQuadratureTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Recorder {
  Outcome out;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (out.pass) notes << "first failure: ";
      else notes << "; ";
      notes << what;
      out.pass = false;
    }
  }
  Outcome finish(const std::string& summary) {
    out.detail = out.pass ? summary : notes.str();
    return out;
  }
};

Rational rpow(const Rational& b, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool single_interval(const PositivityRegion& r, double lo, double hi, double tol) {
  return r.intervals.size() == 1 && r.isolated_points.empty() && std::abs(r.intervals[0].lo - lo) <= tol &&
         std::abs(r.intervals[0].hi - hi) <= tol;
}

Outcome c01_complete() {
  Recorder r;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const auto reg = positivity_region(complete(n));
    const double lo = -1.0 / (n - 1);
    r.require(single_interval(reg, lo, 1.0, kTolCompleteEndpoint), "K_" + std::to_string(n));
    if (!reg.intervals.empty()) worst = std::max(worst, std::abs(reg.intervals[0].lo - lo));
  }
  return r.finish("N=2..10, worst endpoint error " + fmt(worst));
}

Outcome c02_octahedron() {
  Recorder r;
  const auto reg = positivity_region(octahedron());
  r.require(single_interval(reg, -2.0 + std::sqrt(3.0), 1.0, kTolOctahedronEndpoint), "region [-2+sqrt3, 1]");

  const auto oct = octahedron();
  const auto jh = johnson(4, 2);
  FiniteMeasure d11;
  d11.add(0, ratio(1, 4));
  d11.add(1, ratio(1, 2));
  d11.add(2, ratio(1, 4));
  r.require(jh.convolve(1, 1) == d11, "delta_1*delta_1");
  r.require(jh.convolve(1, 2) == FiniteMeasure::point(1), "delta_1*delta_2");
  r.require(jh.convolve(2, 2) == FiniteMeasure::point(0), "delta_2*delta_2");
  for (std::size_t i = 0; i <= 2; ++i) {
    for (std::size_t j = 0; j <= 2; ++j) r.require(jh.convolve(i, j) == oct.convolve(i, j), "table entry");
  }
  // The Gram matrix of x^d at x = 1/3 against the explicit 3x3 form.
  const Rational x = ratio(1, 3);
  const auto m = gram_matrix(jh, geometric_function(x, 2), 2);
  const Rational one = 1;
  const ExactMatrix expect{{one, x, x * x}, {x, ratio(1, 4) + x * x / 4 + x / 2, x}, {x * x, x, one}};
  r.require(m == expect, "explicit Gram matrix");
  return r.finish("region and all 9 convolutions exact, lo = " + fmt(reg.intervals.empty() ? 0 : reg.intervals[0].lo));
}

Outcome c03_hamming() {
  Recorder r;
  double worst = 0.0;
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 2}, {3, 5}}) {
    const auto reg = positivity_region(hamming(d, n));
    const double lo = -1.0 / (n - 1);
    r.require(single_interval(reg, lo, 1.0, kTolHammingEndpoint), "H(" + std::to_string(d) + "," + std::to_string(n) + ")");
    if (!reg.intervals.empty()) worst = std::max(worst, std::abs(reg.intervals[0].lo - lo));
  }
  return r.finish("4 instances, worst endpoint error " + fmt(worst));
}

Rational det_formula(const Rational& x) {
  return Rational(1, 288) * (1 - x) * (1 - x) * (1 - 2 * x) * (1 + 4 * x) * (16 * x * x + 18 * x + 1);
}

Outcome c04_q_johnson_example() {
  Recorder r;
  const auto h = q_johnson(2, 4, 2);
  const auto reg = positivity_region(h);
  const double lo = (-9.0 + std::sqrt(65.0)) / 16.0;
  r.require(reg.intervals.size() == 1, "one interval");
  if (!reg.intervals.empty()) {
    r.require(std::abs(reg.intervals[0].lo - lo) <= kTolQJohnsonEndpoint, "left end (-9+sqrt65)/16");
    r.require(std::abs(reg.intervals[0].hi - 0.5) <= kTolQJohnsonEndpoint, "right end 1/2");
  }
  r.require(reg.isolated_points.size() == 1 && std::abs(reg.isolated_points[0] - 1.0) <= kTolQJohnsonEndpoint,
            "isolated point 1");
  for (const Rational& x : {Rational(0), ratio(1, 4), ratio(-1, 2)}) {
    const auto m = gram_matrix(h, geometric_function(x, 2), 2);
    r.require(determinant(m) == det_formula(x), "det at x = " + to_string(x));
  }
  return r.finish("[" + fmt(reg.intervals.empty() ? 0 : reg.intervals[0].lo) + ", 0.5] + {1}; det exact at 0, 1/4, -1/2");
}

Outcome c05_johnson() {
  Recorder r;
  for (auto [v, d] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {8, 3}}) {
    const auto reg = positivity_region(johnson(v, d));
    r.require(reg.contains_interval(0.0, 1.0, kTolContainment), "J(" + std::to_string(v) + "," + std::to_string(d) + ")");
  }
  const auto oct = positivity_region(octahedron());
  r.require(!oct.intervals.empty() && oct.intervals[0].lo < -0.25, "octahedron reaches below 0");
  return r.finish("[0,1] contained in 3 instances; octahedron strictly larger");
}

Outcome c06_q_johnson_set() {
  Recorder r;
  for (auto [q, v, d] : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {2, 6, 3}, {3, 4, 2}}) {
    const auto reg = positivity_region(q_johnson(q, v, d));
    const std::string tag = "J_" + std::to_string(q) + "(" + std::to_string(v) + "," + std::to_string(d) + ")";
    r.require(reg.contains(0.0, kTolContainment), tag + " at 0");
    for (int j = 0; j <= 6; ++j) r.require(reg.contains(std::pow(q, -j), kTolContainment), tag + " at q^-" + std::to_string(j));
  }
  return r.finish("{q^-j : j <= 6} + {0} contained in 3 instances");
}

Outcome c07_oracle() {
  Recorder r;
  std::vector<FamilySpec> specs;
  for (int n = 2; n <= 6; ++n) specs.push_back(FamilySpec::complete(n));
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 3}, {3, 3}, {4, 2}, {3, 5}, {6, 2}, {2, 10}, {5, 3}}) {
    specs.push_back(FamilySpec::hamming(d, n));
  }
  for (auto [v, d] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {8, 3}, {7, 2}, {10, 4}}) {
    specs.push_back(FamilySpec::johnson(v, d));
  }
  specs.push_back(FamilySpec::octahedron());
  for (auto [q, v, d] : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {3, 4, 2}, {2, 5, 2}}) {
    specs.push_back(FamilySpec::q_johnson(q, v, d));
  }

  const auto xs = kernels::uniform_grid(-1.0, 1.0, 200);
  std::size_t comparisons = 0, disagreements = 0;
  for (const auto& spec : specs) {
    const ConcreteGraph g = enumerate_family(spec);
    if (g.vertex_count > 2000) continue;
    const DualSpace dual = dual_space(build_hypergroup(spec));
    const auto oracle = kernels::parallel::map_grid(xs, [&](double x) { return kernel_psd(g, x, kOracleTau).psd(); });
    for (std::size_t k = 0; k < xs.size(); ++k) {
      ++comparisons;
      if (oracle[k] != gibbs_check_finite(dual, xs[k], kOracleTau).psd()) {
        ++disagreements;
        r.require(false, spec.descriptor() + " at x = " + fmt(xs[k]));
      }
    }
  }
  return r.finish(std::to_string(specs.size()) + " instances, " + std::to_string(comparisons) + " comparisons, " +
                  std::to_string(disagreements) + " disagreements");
}

Outcome c08_gamma_oracle() {
  Recorder r;
  const ConcreteGraph tree = build_gamma_ball(3, 2, 4);
  for (double x : kernels::uniform_grid(-1.0, 1.0, 20)) {
    r.require(kernel_psd(tree, x, kOracleTau).psd(), "Gamma(3,2) r=4 at x = " + fmt(x));
  }
  for (std::size_t radius = 1; radius <= 4; ++radius) {
    const ConcreteGraph ball = build_gamma_ball(3, 3, radius);
    for (double x : {-0.45, 0.0, 0.5, 1.0}) {
      r.require(kernel_psd(ball, x, kOracleTau).psd(), "Gamma(3,3) r=" + std::to_string(radius) + " at x = " + fmt(x));
    }
  }
  std::size_t failing = 0;
  for (std::size_t radius = 1; radius <= 6 && failing == 0; ++radius) {
    if (!kernel_psd(build_gamma_ball(3, 3, radius), -0.75, kOracleTau).psd()) failing = radius;
  }
  r.require(failing != 0, "Gamma(3,3) at x = -0.75 never failed up to radius 6");
  return r.finish("tree passes 21 points; Gamma(3,3) passes 4 points for r<=4; x=-0.75 fails first at r=" +
                  std::to_string(failing));
}

Outcome c09_truncation() {
  Recorder r;
  const auto h = gamma_ab(3, 3).hypergroup;
  PositivityRegion prev;
  for (std::size_t n = 0; n <= 12; ++n) {
    const auto reg = truncated_region(h, n);
    r.require(reg.contains_interval(-0.5, 1.0, kTolTruncationContainment), "n=" + std::to_string(n) + " misses [-1/2,1]");
    if (n > 0) r.require(prev.contains_region(reg, kTolTruncationContainment), "not monotone at n=" + std::to_string(n));
    prev = reg;
  }
  return r.finish("n=0..12 contain [-1/2,1], nonincreasing; n=12 left end " +
                  fmt(prev.intervals.empty() ? 0 : prev.intervals[0].lo));
}

Outcome c10_krawtchouk() {
  Recorder r;
  std::size_t checks = 0;
  for (int n : {2, 3, 5}) {
    const Rational p = ratio(n - 1, n);
    for (int d = 1; d <= 8; ++d) {
      std::vector<std::vector<Rational>> k(static_cast<std::size_t>(d) + 1);
      for (int l = 0; l <= d; ++l) {
        for (int x = 0; x <= d; ++x) k[static_cast<std::size_t>(l)].push_back(krawtchouk(l, x, d, p));
      }
      for (int l = 0; l <= d; ++l) {
        for (int x = 0; x <= d; ++x) {
          ++checks;
          r.require(k[static_cast<std::size_t>(l)][static_cast<std::size_t>(x)] ==
                        k[static_cast<std::size_t>(x)][static_cast<std::size_t>(l)],
                    "symmetry");
        }
      }
      for (int l = 0; l <= d; ++l) {
        for (int m = 0; m <= d; ++m) {
          Rational s = 0;
          for (int x = 0; x <= d; ++x) {
            Rational w = Rational(binomial(d, x)) * rpow(p, x) * rpow(1 - p, d - x);
            s += k[static_cast<std::size_t>(l)][static_cast<std::size_t>(x)] *
                 k[static_cast<std::size_t>(m)][static_cast<std::size_t>(x)] * w;
          }
          const Rational expect = l == m ? rpow((1 - p) / p, l) / Rational(binomial(d, l)) : Rational(0);
          ++checks;
          r.require(s == expect, "orthogonality D=" + std::to_string(d) + " l=" + std::to_string(l) + " m=" + std::to_string(m));
        }
      }
    }
  }
  return r.finish(std::to_string(checks) + " exact identities");
}

std::vector<FamilySpec> small_finite_families() {
  std::vector<FamilySpec> s;
  for (int n = 2; n <= 10; ++n) s.push_back(FamilySpec::complete(n));
  for (int n : {2, 3, 5}) {
    for (int d = 1; d <= 10; ++d) s.push_back(FamilySpec::hamming(d, n));
  }
  for (int d = 1; d <= 10; ++d) {
    for (int v = 2 * d; v <= 2 * d + 4; ++v) s.push_back(FamilySpec::johnson(v, d));
  }
  for (int q : {2, 3}) {
    for (int d = 1; d <= 5; ++d) {
      for (int v = 2 * d; v <= 2 * d + 2; ++v) s.push_back(FamilySpec::q_johnson(q, v, d));
    }
  }
  s.push_back(FamilySpec::octahedron());
  return s;
}

Outcome c11_dual() {
  Recorder r;
  double worst_mass = 0, worst_orth = 0, worst_cf = 0;
  const auto specs = small_finite_families();
  for (const auto& spec : specs) {
    const DualSpace dual = dual_space(build_hypergroup(spec));
    const std::size_t n = dual.size();
    double mass = 0.0;
    for (double p : dual.plancherel) mass += p;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    // Both orthogonality relations in their orthonormal forms.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        double primal = 0.0, dualsum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          primal += dual.plancherel[j] * dual.characters(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                    dual.characters(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
          dualsum += dual.haar[j] * dual.characters(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) *
                     dual.characters(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        }
        primal *= std::sqrt(dual.haar[i] * dual.haar[k]);
        dualsum *= std::sqrt(dual.plancherel[i] * dual.plancherel[k]);
        const double delta = i == k ? 1.0 : 0.0;
        worst_orth = std::max({worst_orth, std::abs(primal - delta), std::abs(dualsum - delta)});
      }
    }
    const auto cf = closed_form_dual(spec);
    r.require(cf.has_value() && cf->size() == n, spec.descriptor() + " closed form");
    if (cf) {
      for (std::size_t j = 0; j < n; ++j) worst_cf = std::max(worst_cf, std::abs((*cf)[j] - dual.points[j]));
    }
  }
  r.require(worst_mass <= kTolPlancherelMass, "Plancherel mass off by " + fmt(worst_mass));
  r.require(worst_orth <= kTolDualOrthogonality, "orthogonality off by " + fmt(worst_orth));
  r.require(worst_cf <= kTolClosedFormDual, "closed-form dual off by " + fmt(worst_cf));
  return r.finish(std::to_string(specs.size()) + " families; mass " + fmt(worst_mass) + ", orthogonality " +
                  fmt(worst_orth) + ", closed forms " + fmt(worst_cf));
}

Outcome c12_embedding() {
  Recorder r;
  const std::vector<FamilySpec> bases{FamilySpec::hamming(2, 3), FamilySpec::hamming(3, 5), FamilySpec::johnson(6, 3),
                                      FamilySpec::johnson(4, 2), FamilySpec::q_johnson(2, 4, 2),
                                      FamilySpec::q_johnson(3, 6, 3), FamilySpec::gamma(3, 3)};
  for (const auto& b : bases) {
    const auto rep = coefficient_convergence(EmbeddingSequence::of(b), 10000);
    r.require(rep.monotone, b.descriptor() + " deviations not monotone");
    r.require(rep.max_deviation.back() < 1e-3, b.descriptor() + " deviation at n=1e4 is " + fmt(rep.max_deviation.back()));
  }

  const auto ham = accumulation_set(EmbeddingSequence::of(FamilySpec::hamming(2, 3)), 200);
  r.require(ham.hausdorff <= kTolHausdorff, "Hamming Hausdorff " + fmt(ham.hausdorff));
  const auto joh = accumulation_set(EmbeddingSequence::of(FamilySpec::johnson(6, 3)), 200);
  r.require(joh.hausdorff <= kTolHausdorff, "Johnson Hausdorff " + fmt(joh.hausdorff));

  PositivityRegion target;
  for (int j = 0; j <= 60; ++j) target.isolated_points.push_back(std::pow(2.0, -j));
  target.isolated_points.push_back(0.0);
  double worst = 0.0;
  for (double p : enlarged_dual_points(EmbeddingSequence::of(FamilySpec::q_johnson(2, 4, 2)), 40)) {
    worst = std::max(worst, distance_to(target, p));
  }
  r.require(worst <= kTolQJohnsonCloud, "q-Johnson dual point " + fmt(worst) + " from {2^-j} + {0}");
  return r.finish("7 sequences monotone to n=1e4; Hausdorff " + fmt(ham.hausdorff) + " (Hamming), " +
                  fmt(joh.hausdorff) + " (Johnson); q-Johnson n=40 within " + fmt(worst));
}

Outcome c13_measures() {
  Recorder r;
  double worst_mass = 0, worst_orth = 0, worst_letac = 0, worst_cf = 0;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 3}, {2, 4}, {3, 2}, {4, 3}, {2, 2}, {3, 5}}) {
    const auto m = tree_orthogonality_measure(a, b);
    worst_mass = std::max(worst_mass, std::abs(total_mass(m, kQuadratureTol) - 1.0));
    const auto g = gamma_ab(a, b);
    for (std::size_t p = 0; p <= 8; ++p) {
      for (std::size_t q = p + 1; q <= 8; ++q) {
        const double v = quadrature(m, [&](double x) {
          return tree_polynomial_tilde(g, p, x) * tree_polynomial_tilde(g, q, x);
        }, kQuadratureTol);
        worst_orth = std::max(worst_orth, std::abs(v));
      }
    }
  }
  const auto atom = tree_orthogonality_measure(2, 4);
  r.require(atom.atoms.size() == 1 && atom.atoms[0].second == 0.5, "atom weight 1/2 for (2,4)");

  for (int a : {3, 4}) {
    const double lim = 0.9 / std::sqrt(a - 1.0);
    std::vector<double> xs;
    for (int k = -4; k <= 4; ++k) xs.push_back(lim * k / 4.0);
    for (double d : moment_identity_scan(a, xs, 10, kQuadratureTol)) worst_letac = std::max(worst_letac, d);
  }

  int samples = 0;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 3}, {2, 4}, {3, 2}, {4, 3}}) {
    const auto g = gamma_ab(a, b);
    for (auto [n, z] : std::vector<std::pair<int, double>>{{1, 0.3}, {3, -0.5}, {6, 0.7}, {9, -0.8}, {12, 0.45}}) {
      const double cf = tree_char_closed_form(a, b, n, z);
      const double rec = tree_polynomial_tilde(g, static_cast<std::size_t>(n), 0.5 * (z + 1.0 / z));
      worst_cf = std::max(worst_cf, std::abs(cf - rec) / std::max(1.0, std::abs(rec)));
      ++samples;
    }
  }
  r.require(worst_mass <= kTolMass, "mass off by " + fmt(worst_mass));
  r.require(worst_orth <= kTolOrthogonality, "orthogonality off by " + fmt(worst_orth));
  r.require(worst_letac <= kTolLetac, "Letac moments off by " + fmt(worst_letac));
  r.require(worst_cf <= kTolClosedFormCharacter, "closed-form character off by " + fmt(worst_cf));
  return r.finish("mass " + fmt(worst_mass) + ", orthogonality " + fmt(worst_orth) + ", Letac " + fmt(worst_letac) +
                  ", closed form " + fmt(worst_cf) + " (" + std::to_string(samples) + " points)");
}

Outcome c14_schur() {
  Recorder r;
  const auto h = hamming(3, 3);
  double deviation_100 = 0.0;
  for (int n : {10, 100}) {
    const double x = 1.0 - 1.0 / n;
    for (double t : {0.5, 1.0, 2.0}) {
      const auto s = schur_exp_stability(h, x, t);
      r.require(s.certificate.psd(), "transformed kernel not PSD at n=" + std::to_string(n) + ", t=" + fmt(t));
      if (n == 100) deviation_100 = std::max(deviation_100, s.max_gram_deviation);
    }
  }
  r.require(deviation_100 <= kTolSchurLimit, "n=100 Gram deviation from f_{e^-t} is " + fmt(deviation_100) +
                                                 " > " + fmt(kTolSchurLimit));
  return r.finish("all 6 transformed kernels PSD; n=100 deviation " + fmt(deviation_100));
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "complete graphs", c01_complete},
      {2, "octahedron", c02_octahedron},
      {3, "Hamming regions", c03_hamming},
      {4, "J_2(4,2) region and determinant", c04_q_johnson_example},
      {5, "Johnson containment", c05_johnson},
      {6, "q-Johnson predicted points", c06_q_johnson_set},
      {7, "oracle equivalence", c07_oracle},
      {8, "Gamma(a,b) balls", c08_gamma_oracle},
      {9, "truncation monotonicity", c09_truncation},
      {10, "Krawtchouk identities", c10_krawtchouk},
      {11, "dual space and Plancherel", c11_dual},
      {12, "embedding sequences", c12_embedding},
      {13, "spectral measures", c13_measures},
      {14, "exp transform limit", c14_schur},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::atoi(argv[k]));
  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%02d %-34s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
