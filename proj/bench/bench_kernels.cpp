#include "drg/families.hpp"
#include "drg/graph_oracle.hpp"
#include "drg/kernels.hpp"
#include "drg/positivity.hpp"

#include <benchmark/benchmark.h>

#include <Eigen/Eigenvalues>

namespace {

const drg::ConcreteGraph& j2_graph() {
  static const drg::ConcreteGraph g = drg::enumerate_q_johnson(3, 4, 2);
  return g;
}

std::vector<drg::kernels::VertexPair> all_pairs(std::size_t n) {
  std::vector<drg::kernels::VertexPair> pairs;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

void BM_GibbsMatrixSerial(benchmark::State& state) {
  const auto& g = j2_graph();
  for (auto _ : state) benchmark::DoNotOptimize(drg::kernels::serial::gibbs_matrix(g.distance_span(), g.vertex_count, 0.3));
}

void BM_GibbsMatrixParallel(benchmark::State& state) {
  const auto& g = j2_graph();
  for (auto _ : state) benchmark::DoNotOptimize(drg::kernels::parallel::gibbs_matrix(g.distance_span(), g.vertex_count, 0.3));
}

void BM_IntersectionsSerial(benchmark::State& state) {
  const auto& g = j2_graph();
  const auto pairs = all_pairs(g.vertex_count);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drg::kernels::serial::scan_intersections(g.distance_span(), g.vertex_count, g.diameter, pairs));
  }
}

void BM_IntersectionsParallel(benchmark::State& state) {
  const auto& g = j2_graph();
  const auto pairs = all_pairs(g.vertex_count);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drg::kernels::parallel::scan_intersections(g.distance_span(), g.vertex_count, g.diameter, pairs));
  }
}

// One oracle verdict per grid point, the inner loop of the equivalence sweep.
double min_eigenvalue(double x) {
  const auto& g = j2_graph();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(drg::kernels::serial::gibbs_matrix(g.distance_span(), g.vertex_count, x),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void BM_OracleGridSerial(benchmark::State& state) {
  const auto xs = drg::kernels::uniform_grid(-1.0, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(drg::kernels::serial::map_grid(xs, min_eigenvalue));
}

void BM_OracleGridParallel(benchmark::State& state) {
  const auto xs = drg::kernels::uniform_grid(-1.0, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(drg::kernels::parallel::map_grid(xs, min_eigenvalue));
}

}  // namespace

BENCHMARK(BM_GibbsMatrixSerial);
BENCHMARK(BM_GibbsMatrixParallel);
BENCHMARK(BM_IntersectionsSerial);
BENCHMARK(BM_IntersectionsParallel);
BENCHMARK(BM_OracleGridSerial)->Arg(20);
BENCHMARK(BM_OracleGridParallel)->Arg(20);

BENCHMARK_MAIN();
