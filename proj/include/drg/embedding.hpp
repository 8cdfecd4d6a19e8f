#pragma once

// Embedding sequences Gamma = Gamma_0 < Gamma_1 < ... of growing members of
// one family, their coefficient limits and the accumulation set of the
// union of their dual spaces.

#include "drg/families.hpp"
#include "drg/region.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace drg {

struct EmbeddingSequence {
  FamilySpec base;  // complete:N is treated as H(1,N), octahedron as J(4,2)

  // Hamming (D+n,N); Johnson and q-Johnson (v+2n, D+n); Gamma (a+n, b).
  FamilySpec at(std::size_t n) const;
  // Largest recurrence index tracked (i <= D of the base; 1 for Gamma).
  std::size_t tracked_indices() const;

  // Throws BadParam for custom recurrences.
  static EmbeddingSequence of(const FamilySpec& base);
};

// |a_i^{(n)} - 1| in double precision from numerically stable closed forms.
double coefficient_deviation(const EmbeddingSequence& seq, std::size_t i, std::size_t n);

struct ConvergenceReport {
  std::vector<double> max_deviation;  // index n = 0..n_max, max over i <= tracked_indices()
  bool monotone = true;               // nonincreasing in n
  double fitted_order = 0.0;          // -slope of log(deviation) vs log(n+1), tail half
};

ConvergenceReport coefficient_convergence(const EmbeddingSequence& seq, std::size_t n_max);

// Dual points of the n-th member in decreasing order, from exact closed forms.
std::vector<double> enlarged_dual_points(const EmbeddingSequence& seq, std::size_t n);

struct AccumulationEstimate {
  PositivityRegion estimate;
  PositivityRegion predicted;
  double hausdorff = 0.0;
  // Largest distance from a point of the predicted set to the sampled duals.
  double predicted_coverage = 0.0;
  // Landmark points of the predicted set (interval ends, isolated points)
  // that occur exactly as a dual point for some n <= n_max, and the rest.
  std::vector<double> attained;
  std::vector<double> limit_only;
  std::size_t points_used = 0;
};

constexpr double kDefaultClusterEpsilon = 0.01;

// Clusters the union of dual points over n in [n_max/2, n_max].  Consecutive
// gaps below eps join a cluster; a cluster narrower than eps is a point,
// promoted to an isolated point when every member of the tail keeps its
// other dual points more than 5 eps away.  Gamma sequences are BadParam
// (continuous duals).
AccumulationEstimate accumulation_set(const EmbeddingSequence& seq, std::size_t n_max,
                                      double eps = kDefaultClusterEpsilon);

// Columns n, j, dual_point for n = 0..n_max.
void write_accumulation_csv(std::ostream& out, const EmbeddingSequence& seq, std::size_t n_max);

struct InclusionReport {
  std::string base;
  std::string enlarged;
  std::size_t base_vertices = 0;
  std::size_t enlarged_vertices = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::size_t> image;  // base vertex -> enlarged vertex
};

// Builds the explicit isometric map of the base graph (or its ball of radius
// `radius` for Gamma) into the n-th member and checks every pair.
// Throws EmbeddingFailure with the violating pair.
InclusionReport verify_subgraph_inclusion(const EmbeddingSequence& seq, std::size_t n, std::size_t radius = 2);

}  // namespace drg
