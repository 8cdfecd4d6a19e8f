#include "doctest.h"
#include "support.hpp"

#include "drg/families.hpp"
#include "drg/graph_oracle.hpp"
#include "drg/kernels.hpp"

#include <sstream>

using namespace drg;

TEST_CASE("vertex counts of the enumerated graphs") {
  CHECK(enumerate_hamming(3, 3).vertex_count == 27);
  CHECK(enumerate_johnson(6, 3).vertex_count == 20);
  CHECK(enumerate_q_johnson(2, 4, 2).vertex_count == 35);
  CHECK(enumerate_q_johnson(3, 4, 2).vertex_count == 130);
  CHECK(enumerate_family(FamilySpec::complete(6)).vertex_count == 6);
  CHECK(enumerate_family(FamilySpec::octahedron()).vertex_count == 6);
  CHECK(gamma_ball_size(3, 2, 4) == 1 + 3 + 6 + 12 + 24);
  CHECK(gamma_ball_size(2, 3, 2) == 1 + 4 + 8);
}

TEST_CASE("labels") {
  const auto h = enumerate_hamming(2, 2);
  CHECK(h.labels.front() == "(0,0)");
  CHECK(h.labels.back() == "(1,1)");
  const auto j = enumerate_johnson(4, 2);
  CHECK(j.labels.front() == "{1,2}");
  const auto b = build_gamma_ball(3, 2, 2);
  CHECK(b.labels[0] == "o");
}

TEST_CASE("enumeration limits and field checks") {
  CHECK_THROWS_AS(enumerate_q_johnson(4, 4, 2), NonPrimeField);
  CHECK_THROWS_AS(enumerate_hamming(12, 3), TooLarge);
  CHECK_THROWS_AS(enumerate_family(FamilySpec::gamma(3, 3)), BadParam);
  CHECK_THROWS_AS(build_gamma_ball(5, 5, 9), TooLarge);
  CHECK_THROWS_AS(gamma_ball_size(5, 5, 9), TooLarge);
}

TEST_CASE("sphere sizes match the Haar weights and the intersection identity holds") {
  for (const auto& spec : test::enumerable_families()) {
    CAPTURE(spec.descriptor());
    const auto g = enumerate_family(spec);
    validate_graph_metric(g);
    const auto w = build_hypergroup(spec).haar_weights();
    for (std::size_t base : {std::size_t{0}, g.vertex_count / 2, g.vertex_count - 1}) {
      const auto s = sphere_sizes(g, base);
      for (std::size_t i = 0; i < w.size(); ++i) CHECK(Rational(s[i]) == w[i]);
    }
    const auto t = empirical_intersection_numbers(g);
    REQUIRE(t.well_defined);
    const std::size_t d = t.diameter;
    // omega_k p_{ij}^k = omega_i p_{kj}^i
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = 0; j <= d; ++j) {
        for (std::size_t k = 0; k <= d; ++k) {
          CHECK(w[k] * t.at(i, j, k) == w[i] * t.at(k, j, i));
        }
      }
    }
  }
}

TEST_CASE("known intersection numbers") {
  const auto t = empirical_intersection_numbers(enumerate_q_johnson(2, 4, 2));
  CHECK(t.at(1, 1, 1) == 9);
  CHECK(t.at(1, 1, 0) == 18);
  const auto oct = empirical_intersection_numbers(enumerate_johnson(4, 2));
  CHECK(oct.at(1, 1, 1) == 2);
  CHECK(oct.at(1, 1, 2) == 4);
}

TEST_CASE("non distance-regular graphs are detected") {
  // Path on 4 vertices.
  std::istringstream in("0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n");
  const auto g = read_distance_csv(in);
  const auto t = empirical_intersection_numbers(g);
  CHECK_FALSE(t.well_defined);
  CHECK(t.counterexample);
  CHECK_THROWS_AS(empirical_hypergroup(g), NotDistanceRegular);
}

TEST_CASE("distance CSV round trip and metric validation") {
  const auto g = enumerate_johnson(5, 2);
  std::ostringstream out;
  write_distance_csv(out, g);
  std::istringstream in(out.str());
  const auto back = read_distance_csv(in);
  CHECK(back.vertex_count == g.vertex_count);
  CHECK(back.distances == g.distances);
  CHECK(back.diameter == g.diameter);

  std::istringstream bad("0,2\n2,0\n");
  CHECK_THROWS_AS(read_distance_csv(bad), BadParam);
  std::istringstream asym("0,1,1\n1,0,1\n1,2,0\n");
  CHECK_THROWS_AS(read_distance_csv(asym), BadParam);
}

TEST_CASE("ball coefficients recover the tree recurrence in the interior") {
  const auto c = ball_coefficients(build_gamma_ball(3, 2, 3));
  REQUIRE(c.size() >= 2);
  CHECK(c[1] == RecurrenceCoeffs{ratio(2, 3), 0, ratio(1, 3)});
  const auto g = gamma_ab(3, 3).hypergroup;
  const auto d = ball_coefficients(build_gamma_ball(3, 3, 4));
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == g.coeffs(i));
}

TEST_CASE("kernel oracle verdicts") {
  const auto k4 = enumerate_family(FamilySpec::complete(4));
  CHECK(kernel_psd(k4, -1.0 / 3.0 + 1e-6).psd());
  const auto bad = kernel_psd(k4, -0.4);
  CHECK_FALSE(bad.psd());
  REQUIRE(bad.witness_vector.size() == 4);
  const auto m = kernels::serial::gibbs_matrix(k4.distance_span(), 4, -0.4);
  CHECK(witness_reproduces(bad, m));
  // Trees carry every x in [-1, 1] (b = 2).
  const auto tree = build_gamma_ball(3, 2, 3);
  for (double x : {-1.0, -0.5, 0.0, 0.9}) CHECK(kernel_psd(tree, x).psd());
}

TEST_CASE("serial and parallel kernels agree") {
  const auto g = enumerate_q_johnson(3, 4, 2);
  const auto a = kernels::serial::gibbs_matrix(g.distance_span(), g.vertex_count, -0.3);
  const auto b = kernels::parallel::gibbs_matrix(g.distance_span(), g.vertex_count, -0.3);
  CHECK(a == b);

  std::vector<kernels::VertexPair> pairs;
  for (std::uint32_t u = 0; u < 20; ++u) {
    for (std::uint32_t v = u; v < 40; ++v) pairs.emplace_back(u, v);
  }
  const auto s = kernels::serial::scan_intersections(g.distance_span(), g.vertex_count, g.diameter, pairs);
  const auto p = kernels::parallel::scan_intersections(g.distance_span(), g.vertex_count, g.diameter, pairs);
  CHECK(s.reference == p.reference);
  CHECK(s.first_mismatch == p.first_mismatch);
  CHECK_FALSE(s.first_mismatch);

  const auto xs = kernels::uniform_grid(-1.0, 1.0, 10);
  REQUIRE(xs.size() == 11);
  const auto sq = [](double x) { return x * x; };
  CHECK(kernels::serial::map_grid(xs, sq) == kernels::parallel::map_grid(xs, sq));
  CHECK_THROWS_AS(kernels::parallel::map_grid(xs, [](double x) -> double {
                    if (x > 0.5) throw NumericalFailure("boom");
                    return x;
                  }),
                  NumericalFailure);
}

TEST_CASE("worked oracle values") {
  const auto h1 = enumerate_hamming(1, 5);
  for (std::size_t u = 0; u < 5; ++u) {
    for (std::size_t v = 0; v < 5; ++v) CHECK(h1.distance(u, v) == (u == v ? 0 : 1));
  }
  const auto oct = enumerate_johnson(4, 2);
  CHECK(oct.vertex_count == 6);
  for (std::size_t u = 0; u < 6; ++u) {
    std::size_t far = 0;
    for (std::size_t v = 0; v < 6; ++v) far += oct.distance(u, v) == 2;
    CHECK(far == 1);
  }
  CHECK_FALSE(kernel_psd(oct, -0.3).psd());
  CHECK(kernel_psd(oct, -0.25).psd());
  const auto j2 = enumerate_q_johnson(2, 4, 2);
  CHECK_FALSE(kernel_psd(j2, 0.6).psd());
  CHECK(kernel_psd(j2, 0.5).psd());
  CHECK(kernel_psd(j2, 1.0).psd());

  const auto single = build_gamma_ball(3, 3, 0);
  CHECK(single.vertex_count == 1);
  CHECK(sphere_sizes(build_gamma_ball(3, 2, 4)) == std::vector<std::size_t>{1, 3, 6, 12, 24});
  CHECK(sphere_sizes(build_gamma_ball(2, 3, 2)) == std::vector<std::size_t>{1, 4, 8});

  const auto e = empirical_hypergroup(enumerate_hamming(3, 3));
  CHECK(e.coeffs(0).a == 1);
  CHECK(e.coeffs(1).a == ratio(2, 3));
  CHECK(e.coeffs(2).a == ratio(1, 3));
}

TEST_CASE("vertex and hypergroup verdicts agree on a 201-point grid") {
  const auto xs = kernels::uniform_grid(-1.0, 1.0, 200);
  for (const auto& spec : test::enumerable_families()) {
    const auto g = enumerate_family(spec);
    const auto dual = dual_space(build_hypergroup(spec));
    std::size_t disagreements = 0;
    for (double x : xs) disagreements += kernel_psd(g, x).psd() != gibbs_check_finite(dual, x).psd();
    CAPTURE(spec.descriptor());
    CHECK(disagreements == 0);
  }
}
