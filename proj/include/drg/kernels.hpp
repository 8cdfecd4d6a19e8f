#pragma once

// Data-parallel inner loops.  Each kernel has a serial reference version and
// an OpenMP version with identical, deterministically ordered output; the
// serial versions are kept for testing and benchmarking.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace drg::kernels {

using VertexPair = std::pair<std::uint32_t, std::uint32_t>;

// Intersection tables p_{i,j}^k(x,y) = #{z : d(x,z)=i, d(y,z)=j}, flattened
// row-major (D+1)x(D+1).  `reference[k]` is the table of the first listed
// pair at distance k (empty if none); `first_mismatch` is the smallest list
// index whose table differs from the reference for its distance.
struct IntersectionScan {
  std::vector<std::vector<std::int64_t>> reference;
  std::optional<std::size_t> first_mismatch;
};

namespace serial {
Eigen::MatrixXd gibbs_matrix(std::span<const std::uint8_t> dist, std::size_t n, double x);
IntersectionScan scan_intersections(std::span<const std::uint8_t> dist, std::size_t n, std::size_t diameter,
                                    std::span<const VertexPair> pairs);

template <class F>
auto map_grid(const std::vector<double>& xs, F&& f) {
  std::vector<decltype(f(0.0))> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(f(x));
  return out;
}
}  // namespace serial

namespace parallel {
Eigen::MatrixXd gibbs_matrix(std::span<const std::uint8_t> dist, std::size_t n, double x);
IntersectionScan scan_intersections(std::span<const std::uint8_t> dist, std::size_t n, std::size_t diameter,
                                    std::span<const VertexPair> pairs);

// f must be safe to call concurrently.  Results are stored by grid index,
// so the output order does not depend on scheduling.
template <class F>
auto map_grid(const std::vector<double>& xs, F&& f) {
  std::vector<decltype(f(0.0))> out(xs.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = f(xs[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical(drg_map_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}
}  // namespace parallel

// Uniform grid lo, lo+step, ..., hi (hi included, step adjusted to divide).
std::vector<double> uniform_grid(double lo, double hi, std::size_t intervals);

}  // namespace drg::kernels
