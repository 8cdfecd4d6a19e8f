#include "drg/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace drg::kernels {

namespace {

std::vector<double> power_table(double x, std::size_t max_distance) {
  std::vector<double> pw(max_distance + 1);
  pw[0] = 1.0;  // 0^0 = 1
  for (std::size_t k = 1; k <= max_distance; ++k) pw[k] = pw[k - 1] * x;
  return pw;
}

std::size_t max_entry(std::span<const std::uint8_t> dist) {
  return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
}

void pair_table(std::span<const std::uint8_t> dist, std::size_t n, std::size_t diameter, VertexPair p,
                std::vector<std::int64_t>& table) {
  const std::size_t w = diameter + 1;
  table.assign(w * w, 0);
  const std::uint8_t* rx = dist.data() + static_cast<std::size_t>(p.first) * n;
  const std::uint8_t* ry = dist.data() + static_cast<std::size_t>(p.second) * n;
  for (std::size_t z = 0; z < n; ++z) ++table[rx[z] * w + ry[z]];
}

std::vector<std::vector<std::int64_t>> reference_tables(std::span<const std::uint8_t> dist, std::size_t n,
                                                        std::size_t diameter, std::span<const VertexPair> pairs) {
  std::vector<std::vector<std::int64_t>> ref(diameter + 1);
  for (const auto& p : pairs) {
    std::size_t k = dist[static_cast<std::size_t>(p.first) * n + p.second];
    if (ref[k].empty()) pair_table(dist, n, diameter, p, ref[k]);
  }
  return ref;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals) {
  std::vector<double> xs(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(intervals);
  }
  // Snap values like -0.30000000000000004 onto the nearest 1e-12 lattice point.
  for (double& x : xs) {
    double r = std::round(x * 1e12) / 1e12;
    if (std::abs(r - x) < 1e-13) x = r;
  }
  return xs;
}

namespace serial {

Eigen::MatrixXd gibbs_matrix(std::span<const std::uint8_t> dist, std::size_t n, double x) {
  const auto pw = power_table(x, max_entry(dist));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = pw[dist[u * n + v]];
    }
  }
  return m;
}

IntersectionScan scan_intersections(std::span<const std::uint8_t> dist, std::size_t n, std::size_t diameter,
                                    std::span<const VertexPair> pairs) {
  IntersectionScan out;
  out.reference = reference_tables(dist, n, diameter, pairs);
  std::vector<std::int64_t> table;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& p = pairs[idx];
    pair_table(dist, n, diameter, p, table);
    if (table != out.reference[dist[static_cast<std::size_t>(p.first) * n + p.second]]) {
      out.first_mismatch = idx;
      break;
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

Eigen::MatrixXd gibbs_matrix(std::span<const std::uint8_t> dist, std::size_t n, double x) {
  const auto pw = power_table(x, max_entry(dist));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
  // Eigen is column-major; each thread fills whole columns.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < nn; ++v) {
    for (std::ptrdiff_t u = 0; u < nn; ++u) {
      m(u, v) = pw[dist[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)]];
    }
  }
  return m;
}

IntersectionScan scan_intersections(std::span<const std::uint8_t> dist, std::size_t n, std::size_t diameter,
                                    std::span<const VertexPair> pairs) {
  IntersectionScan out;
  out.reference = reference_tables(dist, n, diameter, pairs);
  std::size_t first = std::numeric_limits<std::size_t>::max();
  const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel
  {
    std::vector<std::int64_t> table;
    std::size_t local = std::numeric_limits<std::size_t>::max();
#pragma omp for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < np; ++idx) {
      if (static_cast<std::size_t>(idx) > local) continue;
      const auto& p = pairs[static_cast<std::size_t>(idx)];
      pair_table(dist, n, diameter, p, table);
      if (table != out.reference[dist[static_cast<std::size_t>(p.first) * n + p.second]]) {
        local = std::min(local, static_cast<std::size_t>(idx));
      }
    }
#pragma omp critical
    first = std::min(first, local);
  }
  if (first != std::numeric_limits<std::size_t>::max()) out.first_mismatch = first;
  return out;
}

}  // namespace parallel

}  // namespace drg::kernels
