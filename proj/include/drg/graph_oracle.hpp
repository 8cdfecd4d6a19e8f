#pragma once

// Brute-force ground truth on explicit vertex sets.

#include "drg/families.hpp"
#include "drg/kernels.hpp"
#include "drg/positivity.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace drg {

constexpr std::size_t kMaxEnumeratedVertices = 4096;
constexpr std::size_t kMaxBallVertices = 20000;

struct ConcreteGraph {
  std::size_t vertex_count = 0;
  std::vector<std::uint8_t> distances;  // row-major vertex_count^2
  std::vector<std::string> labels;
  std::string family;
  std::size_t diameter = 0;

  std::uint8_t distance(std::size_t u, std::size_t v) const { return distances[u * vertex_count + v]; }
  std::span<const std::uint8_t> distance_span() const { return distances; }
};

ConcreteGraph enumerate_hamming(int d, int n);
ConcreteGraph enumerate_johnson(int v, int d);
// D-dimensional subspaces of F_q^v in reduced row echelon form; q prime.
ConcreteGraph enumerate_q_johnson(int q, int v, int d);
// Any finite family spec (octahedron enumerates J(4,2), complete:N is H(1,N)).
ConcreteGraph enumerate_family(const FamilySpec& spec);

// Ball of radius r around the root of Gamma(a, b).  Vertex 0 is the root;
// labels are address paths "slot.member/slot.member/...".
ConcreteGraph build_gamma_ball(int a, int b, std::size_t r);
std::size_t gamma_ball_size(int a, int b, std::size_t r);

// Checks symmetry, zero diagonal and that the entries are the shortest-path
// metric of the graph with edges at distance 1.  Throws BadParam.
void validate_graph_metric(const ConcreteGraph& g);

// Minimum eigenvalue of [x^{d(u,v)}] >= -tau * vertex_count.
Certificate kernel_psd(const ConcreteGraph& g, double x, double tau = 1e-10);

std::vector<std::size_t> sphere_sizes(const ConcreteGraph& g, std::size_t base = 0);

struct IntersectionTable {
  std::size_t diameter = 0;
  // p[k][i * (D+1) + j] = p_{i,j}^k
  std::vector<std::vector<std::int64_t>> p;
  bool well_defined = true;
  std::optional<kernels::VertexPair> counterexample;
  std::size_t pairs_examined = 0;

  std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const { return p[k][i * (diameter + 1) + j]; }
};

constexpr std::uint64_t kPairSamplingSeed = 0xD6;
constexpr std::size_t kAllPairsLimit = 512;
constexpr std::size_t kSampledPairs = 10000;

// All pairs when vertex_count <= 512, otherwise every diagonal pair plus
// 10000 pairs drawn with a fixed seed.
IntersectionTable empirical_intersection_numbers(const ConcreteGraph& g);
// Throws NotDistanceRegular naming the offending pair.
PolynomialHypergroup empirical_hypergroup(const ConcreteGraph& g);

// (a_i, b_i, c_i) for i < r - margin of a ball of radius r around vertex 0,
// counted only from base vertices at depth <= r - margin.
std::vector<RecurrenceCoeffs> ball_coefficients(const ConcreteGraph& ball, std::size_t margin = 1);

void write_distance_csv(std::ostream& out, const ConcreteGraph& g);
// Square matrix of nonnegative integers, comma separated, one row per line.
ConcreteGraph read_distance_csv(std::istream& in, const std::string& family = "csv");

}  // namespace drg
