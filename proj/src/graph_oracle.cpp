#include "drg/graph_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace drg {

namespace {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

std::vector<std::uint8_t> bfs_row(const Adjacency& adj, std::size_t src) {
  std::vector<std::uint8_t> row(adj.size(), 0xFF);
  std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(src)};
  row[src] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto w : adj[u]) {
      if (row[w] == 0xFF) {
        row[w] = static_cast<std::uint8_t>(row[u] + 1);
        queue.push_back(w);
      }
    }
  }
  return row;
}

void finish(ConcreteGraph& g) {
  g.diameter = g.distances.empty() ? 0 : *std::max_element(g.distances.begin(), g.distances.end());
}

void check_size(double count, const std::string& what) {
  if (count > static_cast<double>(kMaxEnumeratedVertices)) {
    throw TooLarge(what + " has " + std::to_string(static_cast<long long>(count)) + " vertices (cap " +
                   std::to_string(kMaxEnumeratedVertices) + ")");
  }
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

int inverse_mod(int a, int q) {
  int result = 1;
  int base = a % q;
  for (int e = q - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
  }
  return result;
}

int rank_mod(std::vector<std::vector<int>> m, int q) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const int inv = inverse_mod(m[rank][c], q);
    for (auto& e : m[rank]) e = e * inv % q;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const int f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % q + q) % q;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::string subset_label(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

}  // namespace

ConcreteGraph enumerate_hamming(int d, int n) {
  FamilySpec::hamming(d, n);
  check_size(std::pow(static_cast<double>(n), d), "H(" + std::to_string(d) + "," + std::to_string(n) + ")");
  std::size_t count = 1;
  for (int k = 0; k < d; ++k) count *= static_cast<std::size_t>(n);

  std::vector<std::vector<int>> words(count, std::vector<int>(static_cast<std::size_t>(d)));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int k = d - 1; k >= 0; --k) {
      words[idx][static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
  }

  ConcreteGraph g;
  g.family = FamilySpec::hamming(d, n).descriptor();
  g.vertex_count = count;
  g.distances.resize(count * count);
  for (std::size_t u = 0; u < count; ++u) {
    std::string label = "(";
    for (int k = 0; k < d; ++k) label += (k ? "," : "") + std::to_string(words[u][static_cast<std::size_t>(k)]);
    g.labels.push_back(label + ")");
    for (std::size_t v = 0; v < count; ++v) {
      int diff = 0;
      for (int k = 0; k < d; ++k) diff += words[u][static_cast<std::size_t>(k)] != words[v][static_cast<std::size_t>(k)];
      g.distances[u * count + v] = static_cast<std::uint8_t>(diff);
    }
  }
  finish(g);
  return g;
}

ConcreteGraph enumerate_johnson(int v, int d) {
  FamilySpec::johnson(v, d);
  check_size(to_double(Rational(binomial(v, d))), "J(" + std::to_string(v) + "," + std::to_string(d) + ")");

  std::vector<std::vector<int>> subsets;
  std::vector<int> s(static_cast<std::size_t>(d));
  std::iota(s.begin(), s.end(), 1);
  while (true) {
    subsets.push_back(s);
    int k = d - 1;
    while (k >= 0 && s[static_cast<std::size_t>(k)] == v - d + k + 1) --k;
    if (k < 0) break;
    ++s[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < d; ++t) s[static_cast<std::size_t>(t)] = s[static_cast<std::size_t>(t - 1)] + 1;
  }

  ConcreteGraph g;
  g.family = FamilySpec::johnson(v, d).descriptor();
  g.vertex_count = subsets.size();
  g.distances.resize(g.vertex_count * g.vertex_count);
  std::vector<int> common;
  for (std::size_t x = 0; x < g.vertex_count; ++x) {
    g.labels.push_back(subset_label(subsets[x]));
    for (std::size_t y = 0; y < g.vertex_count; ++y) {
      common.clear();
      std::set_intersection(subsets[x].begin(), subsets[x].end(), subsets[y].begin(), subsets[y].end(),
                            std::back_inserter(common));
      g.distances[x * g.vertex_count + y] = static_cast<std::uint8_t>(d - static_cast<int>(common.size()));
    }
  }
  finish(g);
  return g;
}

ConcreteGraph enumerate_q_johnson(int q, int v, int d) {
  if (!is_prime(q)) throw NonPrimeField("subspace enumeration needs a prime field, got q = " + std::to_string(q));
  FamilySpec::q_johnson(q, v, d);
  // Gaussian binomial [v, d]_q as a double, only for the size cap.
  double count = 1.0;
  for (int t = 0; t < d; ++t) count *= (std::pow(q, v - t) - 1.0) / (std::pow(q, t + 1) - 1.0);
  check_size(std::round(count), "J_" + std::to_string(q) + "(" + std::to_string(v) + "," + std::to_string(d) + ")");

  const auto du = static_cast<std::size_t>(d);
  const auto vu = static_cast<std::size_t>(v);
  std::vector<std::vector<std::vector<int>>> bases;

  std::vector<int> pivots(du);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < du; ++r) {
      for (std::size_t c = static_cast<std::size_t>(pivots[r]) + 1; c < vu; ++c) {
        if (std::find(pivots.begin(), pivots.end(), static_cast<int>(c)) == pivots.end()) free.emplace_back(r, c);
      }
    }
    std::vector<int> digits(free.size(), 0);
    while (true) {
      std::vector<std::vector<int>> m(du, std::vector<int>(vu, 0));
      for (std::size_t r = 0; r < du; ++r) m[r][static_cast<std::size_t>(pivots[r])] = 1;
      for (std::size_t f = 0; f < free.size(); ++f) m[free[f].first][free[f].second] = digits[f];
      bases.push_back(std::move(m));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    int k = d - 1;
    while (k >= 0 && pivots[static_cast<std::size_t>(k)] == v - d + k) --k;
    if (k < 0) break;
    ++pivots[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < d; ++t) pivots[static_cast<std::size_t>(t)] = pivots[static_cast<std::size_t>(t - 1)] + 1;
  }

  ConcreteGraph g;
  g.family = FamilySpec::q_johnson(q, v, d).descriptor();
  g.vertex_count = bases.size();
  g.distances.resize(g.vertex_count * g.vertex_count, 0);
  for (std::size_t x = 0; x < g.vertex_count; ++x) {
    std::string label = "[";
    for (std::size_t r = 0; r < du; ++r) {
      if (r) label += ";";
      for (int e : bases[x][r]) label += std::to_string(e);
    }
    g.labels.push_back(label + "]");
    for (std::size_t y = x + 1; y < g.vertex_count; ++y) {
      auto stacked = bases[x];
      stacked.insert(stacked.end(), bases[y].begin(), bases[y].end());
      // dim(x cap y) = 2D - rank, so the distance D - dim is rank - D.
      const auto dist = static_cast<std::uint8_t>(rank_mod(std::move(stacked), q) - d);
      g.distances[x * g.vertex_count + y] = dist;
      g.distances[y * g.vertex_count + x] = dist;
    }
  }
  finish(g);
  return g;
}

ConcreteGraph enumerate_family(const FamilySpec& spec) {
  spec.validate();
  ConcreteGraph g;
  switch (spec.kind) {
    case FamilyKind::Complete: g = enumerate_hamming(1, spec.N); break;
    case FamilyKind::Hamming: return enumerate_hamming(spec.D, spec.N);
    case FamilyKind::Johnson: return enumerate_johnson(spec.v, spec.D);
    case FamilyKind::QJohnson: return enumerate_q_johnson(spec.q, spec.v, spec.D);
    case FamilyKind::Octahedron: g = enumerate_johnson(4, 2); break;
    default: throw BadParam("no finite vertex model for " + spec.descriptor());
  }
  g.family = spec.descriptor();
  return g;
}

std::size_t gamma_ball_size(int a, int b, std::size_t r) {
  FamilySpec::gamma(a, b);
  double total = 1.0;
  double layer = static_cast<double>(a) * (b - 1);
  for (std::size_t k = 1; k <= r; ++k) {
    total += layer;
    if (total > static_cast<double>(kMaxBallVertices)) {
      throw TooLarge("Gamma(" + std::to_string(a) + "," + std::to_string(b) + ") ball of radius " + std::to_string(r) +
                     " exceeds " + std::to_string(kMaxBallVertices) + " vertices");
    }
    layer *= static_cast<double>(a - 1) * (b - 1);
  }
  return static_cast<std::size_t>(total);
}

ConcreteGraph build_gamma_ball(int a, int b, std::size_t r) {
  const std::size_t n = gamma_ball_size(a, b, r);
  if (2 * r > 254) throw TooLarge("ball radius too large for 8-bit distances");

  ConcreteGraph g;
  g.family = FamilySpec::gamma(a, b).descriptor();
  g.labels.reserve(n);
  g.labels.push_back("o");
  std::vector<std::size_t> depth{0};
  Adjacency adj(1);
  adj.reserve(n);

  // Vertices are appended in breadth-first order, so one pass expands every layer.
  for (std::size_t u = 0; u < g.labels.size(); ++u) {
    if (depth[u] == r) continue;
    const int cliques = u == 0 ? a : a - 1;
    for (int s = 0; s < cliques; ++s) {
      std::vector<std::uint32_t> members{static_cast<std::uint32_t>(u)};
      for (int m = 0; m < b - 1; ++m) {
        const std::string step = std::to_string(s) + "." + std::to_string(m);
        g.labels.push_back(u == 0 ? step : g.labels[u] + "/" + step);
        depth.push_back(depth[u] + 1);
        adj.emplace_back();
        members.push_back(static_cast<std::uint32_t>(g.labels.size() - 1));
      }
      for (auto x : members) {
        for (auto y : members) {
          if (x != y) adj[x].push_back(y);
        }
      }
    }
  }

  g.vertex_count = g.labels.size();
  g.distances.resize(g.vertex_count * g.vertex_count);
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(g.vertex_count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t u = 0; u < count; ++u) {
    auto row = bfs_row(adj, static_cast<std::size_t>(u));
    std::copy(row.begin(), row.end(), g.distances.begin() + u * count);
  }
  finish(g);
  return g;
}

void validate_graph_metric(const ConcreteGraph& g) {
  const std::size_t n = g.vertex_count;
  if (g.distances.size() != n * n) throw BadParam("distance matrix is not " + std::to_string(n) + "x" + std::to_string(n));
  Adjacency adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (g.distance(u, u) != 0) throw BadParam("d(" + std::to_string(u) + "," + std::to_string(u) + ") != 0");
    for (std::size_t v = 0; v < n; ++v) {
      if (g.distance(u, v) != g.distance(v, u)) {
        throw BadParam("distance matrix not symmetric at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      if (u != v && g.distance(u, v) == 0) {
        throw BadParam("distinct vertices " + std::to_string(u) + "," + std::to_string(v) + " at distance 0");
      }
      if (g.distance(u, v) == 1) adj[u].push_back(static_cast<std::uint32_t>(v));
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    auto row = bfs_row(adj, u);
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v] != g.distance(u, v)) {
        throw BadParam("d(" + std::to_string(u) + "," + std::to_string(v) + ") = " + std::to_string(g.distance(u, v)) +
                       " is not the path distance");
      }
    }
  }
}

namespace {

// The symmetric tridiagonal QR occasionally exhausts its iteration budget on
// Gibbs matrices with large, highly degenerate eigenspaces (x near -1).  The
// general real Schur solver is slower but does not share that failure mode.
double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> values(m, Eigen::EigenvaluesOnly);
  if (values.info() == Eigen::Success) return values.eigenvalues()(0);
  Eigen::EigenSolver<Eigen::MatrixXd> general(m, false);
  if (general.info() != Eigen::Success) throw NumericalFailure("eigensolver failed on the Gibbs matrix");
  return general.eigenvalues().real().minCoeff();
}

std::vector<double> min_eigenvector(const Eigen::MatrixXd& m, double lambda) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(m);
  Eigen::VectorXd v;
  if (full.info() == Eigen::Success) {
    v = full.eigenvectors().col(0);
  } else {
    // Null vector of M - lambda I.
    const Eigen::Index n = m.rows();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m - lambda * Eigen::MatrixXd::Identity(n, n), Eigen::ComputeFullV);
    v = svd.matrixV().col(n - 1);
  }
  return {v.data(), v.data() + v.size()};
}

}  // namespace

Certificate kernel_psd(const ConcreteGraph& g, double x, double tau) {
  Certificate c;
  c.method = "oracle";
  c.tolerance = tau * static_cast<double>(g.vertex_count);
  const Eigen::MatrixXd m = kernels::parallel::gibbs_matrix(g.distance_span(), g.vertex_count, x);
  c.witness_value = min_eigenvalue(m);
  if (c.witness_value >= -c.tolerance) {
    c.verdict = Verdict::PSD;
    return c;
  }
  c.verdict = Verdict::NotPSD;
  c.witness_vector = min_eigenvector(m, c.witness_value);
  return c;
}

std::vector<std::size_t> sphere_sizes(const ConcreteGraph& g, std::size_t base) {
  std::vector<std::size_t> out(g.diameter + 1, 0);
  for (std::size_t v = 0; v < g.vertex_count; ++v) ++out[g.distance(base, v)];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

IntersectionTable empirical_intersection_numbers(const ConcreteGraph& g) {
  const std::size_t n = g.vertex_count;
  std::vector<kernels::VertexPair> pairs;
  if (n <= kAllPairsLimit) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u; v < n; ++v) pairs.emplace_back(u, v);
    }
  } else {
    for (std::uint32_t u = 0; u < n; ++u) pairs.emplace_back(u, u);
    // One deterministic representative per distance, then random pairs.
    std::vector<bool> seen(g.diameter + 1, false);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!seen[g.distance(0, v)]) {
        seen[g.distance(0, v)] = true;
        pairs.emplace_back(0, v);
      }
    }
    std::mt19937_64 rng(kPairSamplingSeed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (std::size_t k = 0; k < kSampledPairs; ++k) {
      std::uint32_t u = pick(rng);
      std::uint32_t v = pick(rng);
      pairs.emplace_back(u, v);
    }
  }

  auto scan = kernels::parallel::scan_intersections(g.distance_span(), n, g.diameter, pairs);
  IntersectionTable t;
  t.diameter = g.diameter;
  t.p = std::move(scan.reference);
  t.pairs_examined = pairs.size();
  if (scan.first_mismatch) {
    t.well_defined = false;
    t.counterexample = pairs[*scan.first_mismatch];
  }
  return t;
}

PolynomialHypergroup empirical_hypergroup(const ConcreteGraph& g) {
  const auto t = empirical_intersection_numbers(g);
  if (!t.well_defined) {
    const auto [u, v] = *t.counterexample;
    throw NotDistanceRegular("intersection numbers of " + g.family + " differ at the pair (" + g.labels[u] + ", " +
                             g.labels[v] + ") at distance " + std::to_string(g.distance(u, v)));
  }
  const std::size_t d = t.diameter;
  for (std::size_t k = 0; k <= d; ++k) {
    if (t.p[k].empty()) throw NotDistanceRegular("no vertex pair at distance " + std::to_string(k) + " was examined");
  }
  if (d == 0) return PolynomialHypergroup::from_recurrence({{0, 0, 0}}, 0, g.family + " (empirical)");
  const std::int64_t omega1 = t.at(1, 1, 0);
  std::vector<RecurrenceCoeffs> coeffs(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    coeffs[i].a = i < d ? ratio(t.at(1, i + 1, i), omega1) : Rational(0);
    coeffs[i].b = ratio(t.at(1, i, i), omega1);
    coeffs[i].c = i > 0 ? ratio(t.at(1, i - 1, i), omega1) : Rational(0);
  }
  return PolynomialHypergroup::from_recurrence(std::move(coeffs), d, g.family + " (empirical)");
}

std::vector<RecurrenceCoeffs> ball_coefficients(const ConcreteGraph& ball, std::size_t margin) {
  const std::size_t n = ball.vertex_count;
  std::size_t radius = 0;
  for (std::size_t v = 0; v < n; ++v) radius = std::max<std::size_t>(radius, ball.distance(0, v));
  if (radius <= margin) throw BadParam("ball radius must exceed the margin");
  const std::size_t interior = radius - margin;

  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (ball.distance(u, v) == 1) nbrs[u].push_back(static_cast<std::uint32_t>(v));
    }
  }

  struct Counts {
    std::int64_t up = -1, same = 0, down = 0;
  };
  std::vector<Counts> ref(interior);
  std::int64_t degree = -1;
  for (std::size_t x = 0; x < n; ++x) {
    if (ball.distance(0, x) > interior) continue;
    const auto deg = static_cast<std::int64_t>(nbrs[x].size());
    if (degree < 0) degree = deg;
    if (deg != degree) throw NotDistanceRegular("interior vertex " + ball.labels[x] + " has a different degree");
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t i = ball.distance(x, y);
      if (i >= interior) continue;
      Counts c{0, 0, 0};
      for (auto z : nbrs[x]) {
        const std::size_t dz = ball.distance(y, z);
        if (dz == i + 1) ++c.up;
        else if (dz == i) ++c.same;
        else ++c.down;
      }
      if (ref[i].up < 0) {
        ref[i] = c;
      } else if (ref[i].up != c.up || ref[i].same != c.same || ref[i].down != c.down) {
        throw NotDistanceRegular("ball counts differ at the pair (" + ball.labels[x] + ", " + ball.labels[y] + ")");
      }
    }
  }
  std::vector<RecurrenceCoeffs> out;
  for (const auto& c : ref) out.push_back({ratio(c.up, degree), ratio(c.same, degree), ratio(c.down, degree)});
  return out;
}

void write_distance_csv(std::ostream& out, const ConcreteGraph& g) {
  for (std::size_t u = 0; u < g.vertex_count; ++u) {
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      if (v) out << ',';
      out << static_cast<int>(g.distance(u, v));
    }
    out << '\n';
  }
}

ConcreteGraph read_distance_csv(std::istream& in, const std::string& family) {
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        int value = std::stoi(cell, &used);
        if (value < 0 || value > 254) throw BadParam("distance " + cell + " out of range");
        row.push_back(value);
      } catch (const std::logic_error&) {
        throw BadParam("distance CSV cell '" + cell + "' is not an integer");
      }
    }
    rows.push_back(std::move(row));
  }
  ConcreteGraph g;
  g.family = family;
  g.vertex_count = rows.size();
  g.distances.reserve(rows.size() * rows.size());
  for (std::size_t u = 0; u < rows.size(); ++u) {
    if (rows[u].size() != rows.size()) throw BadParam("distance CSV row " + std::to_string(u) + " has the wrong length");
    for (int d : rows[u]) g.distances.push_back(static_cast<std::uint8_t>(d));
    g.labels.push_back(std::to_string(u));
  }
  finish(g);
  validate_graph_metric(g);
  return g;
}

}  // namespace drg
