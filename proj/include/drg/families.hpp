#pragma once

// Hypergroups of the classical distance-regular families together with
// their closed-form metadata (Haar weights, dual points, predicted sets).

#include "drg/hypergroup.hpp"
#include "drg/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drg {

enum class FamilyKind { Complete, Hamming, Johnson, QJohnson, GammaAB, Octahedron, CustomRecurrence };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Complete;
  int N = 0;  // Complete, Hamming
  int D = 0;  // Hamming, Johnson, QJohnson
  int v = 0;  // Johnson, QJohnson
  int q = 0;  // QJohnson
  int a = 0;  // GammaAB
  int b = 0;  // GammaAB
  std::vector<RecurrenceCoeffs> custom;

  bool is_finite() const { return kind != FamilyKind::GammaAB; }
  // Canonical descriptor text, e.g. "hamming:D=3,N=3".
  std::string descriptor() const;
  // Throws BadParam if the parameters are out of range.
  void validate() const;

  static FamilySpec complete(int n);
  static FamilySpec hamming(int d, int n);
  static FamilySpec johnson(int v, int d);
  static FamilySpec q_johnson(int q, int v, int d);
  static FamilySpec gamma(int a, int b);
  static FamilySpec octahedron();
};

// Parses the descriptor grammar "kind:key=value,..." (or the bare "octahedron").
// Unknown kinds and keys, duplicates and missing keys are BadParam.
FamilySpec parse_family(const std::string& text);

PolynomialHypergroup complete(int n);
PolynomialHypergroup hamming(int d, int n);
PolynomialHypergroup johnson(int v, int d);
PolynomialHypergroup q_johnson(int q, int v, int d);
// Johnson(v=4, D=2), written from its explicit convolution table.
PolynomialHypergroup octahedron();

struct TreeConstants {
  double tilde_s0 = 0.0;
  double tilde_s1 = 0.0;
  Rational s0;
  Rational s1;
  double slope = 0.0;  // T(x) = slope * x + intercept
  Rational intercept;
  Rational hat_x_left;  // left end of the dual space, T(-tilde_s1)
  double support_left = 0.0;
  double support_right = 0.0;
  std::optional<Rational> atom_weight;  // at tilde_s0, present iff b > a

  double T(double x) const { return slope * x + to_double(intercept); }
  double T_inverse(double y) const { return (y - to_double(intercept)) / slope; }
};

struct GammaFamily {
  PolynomialHypergroup hypergroup;
  TreeConstants constants;
};

GammaFamily gamma_ab(int a, int b);
TreeConstants tree_constants(int a, int b);

PolynomialHypergroup build_hypergroup(const FamilySpec& spec);

// Closed-form Haar weights omega_0..omega_D (finite families) or
// omega_0..omega_upto for GammaAB.
std::vector<Rational> closed_form_haar(const FamilySpec& spec, std::size_t up_to = 0);

// Closed-form dual points in decreasing order, when known.
std::optional<std::vector<double>> closed_form_dual(const FamilySpec& spec);

// Exact normalized q-Johnson dual point for index j (0 <= j <= D).
Rational q_johnson_dual_point(int q, int v, int d, int j);
// Exact normalized Johnson dual point 1 - j(v-j+1)/(D(v-D)).
Rational johnson_dual_point(int v, int d, int j);
// Exact normalized Hamming dual point 1 - N x/(D(N-1)).
Rational hamming_dual_point(int d, int n, int x);

struct PredictedRegion {
  PositivityRegion region;
  bool exact = false;  // false: the family is only claimed to contain `region`
};

std::optional<PredictedRegion> predicted_region(const FamilySpec& spec);

// Sum of g_{m,n,k} delta_k for Gamma(a, b) from the counting formulas.
FiniteMeasure closed_form_g(int a, int b, int m, int n);

// K_i(x; D, p) as the terminating 2F1(-i, -x; -D; 1/p).
Rational krawtchouk(int i, int x, int d, const Rational& p);

// P~_n((z + 1/z)/2) for Gamma(a, b) from the product formula in z.
// Throws DomainError for z in {0, 1, -1}.
double tree_char_closed_form(int a, int b, int n, double z);

}  // namespace drg
