#include "drg/embedding.hpp"

#include "drg/graph_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

namespace drg {

namespace {

FamilySpec canonical(const FamilySpec& s) {
  if (s.kind == FamilyKind::Complete) return FamilySpec::hamming(1, s.N);
  if (s.kind == FamilyKind::Octahedron) return FamilySpec::johnson(4, 2);
  return s;
}

// Exact dual points of a finite member, decreasing.
std::vector<Rational> exact_duals(const FamilySpec& s) {
  std::vector<Rational> out;
  switch (s.kind) {
    case FamilyKind::Hamming:
      for (int x = 0; x <= s.D; ++x) out.push_back(hamming_dual_point(s.D, s.N, x));
      break;
    case FamilyKind::Johnson:
      for (int j = 0; j <= s.D; ++j) out.push_back(johnson_dual_point(s.v, s.D, j));
      break;
    case FamilyKind::QJohnson:
      for (int j = 0; j <= s.D; ++j) out.push_back(q_johnson_dual_point(s.q, s.v, s.D, j));
      break;
    default:
      throw BadParam("no closed-form dual space for " + s.descriptor());
  }
  return out;
}

// 1 - (1 - u)(1 - w)/((1 - y)(1 - z)) for small u, w, y, z.
double stable_ratio_deviation(double u, double w, double y, double z) {
  const double log_a = std::log1p(-u) + std::log1p(-w) - std::log1p(-y) - std::log1p(-z);
  return std::abs(std::expm1(log_a));
}

double nearest_other(const std::vector<double>& pts, double x) {
  double best = std::numeric_limits<double>::infinity();
  bool skipped = false;
  for (double p : pts) {
    if (!skipped && p == x) {
      skipped = true;
      continue;
    }
    best = std::min(best, std::abs(p - x));
  }
  return best;
}

}  // namespace

EmbeddingSequence EmbeddingSequence::of(const FamilySpec& base) {
  base.validate();
  if (base.kind == FamilyKind::CustomRecurrence) throw BadParam("custom recurrences have no embedding sequence");
  return {base};
}

FamilySpec EmbeddingSequence::at(std::size_t n) const {
  const FamilySpec s = canonical(base);
  const int k = static_cast<int>(n);
  switch (s.kind) {
    case FamilyKind::Hamming: return FamilySpec::hamming(s.D + k, s.N);
    case FamilyKind::Johnson: return FamilySpec::johnson(s.v + 2 * k, s.D + k);
    case FamilyKind::QJohnson: return FamilySpec::q_johnson(s.q, s.v + 2 * k, s.D + k);
    case FamilyKind::GammaAB: return FamilySpec::gamma(s.a + k, s.b);
    default: break;
  }
  throw BadParam("no embedding sequence for " + base.descriptor());
}

std::size_t EmbeddingSequence::tracked_indices() const {
  const FamilySpec s = canonical(base);
  return s.kind == FamilyKind::GammaAB ? 1 : static_cast<std::size_t>(s.D);
}

double coefficient_deviation(const EmbeddingSequence& seq, std::size_t i, std::size_t n) {
  const FamilySpec s = seq.at(n);
  const double di = static_cast<double>(i);
  switch (s.kind) {
    case FamilyKind::Hamming:
      return di / s.D;
    case FamilyKind::Johnson: {
      // 1 - (D-i)(V-i)/(DV) with V = v - D
      const double d = s.D, vv = s.v - s.D;
      return di * (d + vv - di) / (d * vv);
    }
    case FamilyKind::QJohnson: {
      const double q = s.q;
      const double d = s.D, vv = s.v - s.D;
      return stable_ratio_deviation(std::pow(q, di - d), std::pow(q, di - vv), std::pow(q, -d), std::pow(q, -vv));
    }
    case FamilyKind::GammaAB:
      // a_i = (a-1)/a for every i >= 1
      return i == 0 ? 0.0 : 1.0 / s.a;
    default:
      break;
  }
  throw BadParam("coefficient_deviation: unsupported family");
}

ConvergenceReport coefficient_convergence(const EmbeddingSequence& seq, std::size_t n_max) {
  ConvergenceReport r;
  const std::size_t tracked = seq.tracked_indices();
  const bool gamma = canonical(seq.base).kind == FamilyKind::GammaAB;
  r.max_deviation.resize(n_max + 1, 0.0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    double m = 0.0;
    for (std::size_t i = gamma ? 1 : 0; i <= tracked; ++i) m = std::max(m, coefficient_deviation(seq, i, n));
    r.max_deviation[n] = m;
    if (n > 0 && m > r.max_deviation[n - 1]) r.monotone = false;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t n = n_max / 2; n <= n_max; ++n) {
    const double dev = r.max_deviation[n];
    if (!(dev > 0.0)) continue;
    const double x = std::log(static_cast<double>(n) + 1.0);
    const double y = std::log(dev);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    if (denom > 0) r.fitted_order = -(static_cast<double>(count) * sxy - sx * sy) / denom;
  }
  return r;
}

std::vector<double> enlarged_dual_points(const EmbeddingSequence& seq, std::size_t n) {
  std::vector<double> out;
  for (const auto& p : exact_duals(seq.at(n))) out.push_back(to_double(p));
  return out;
}

AccumulationEstimate accumulation_set(const EmbeddingSequence& seq, std::size_t n_max, double eps) {
  if (canonical(seq.base).kind == FamilyKind::GammaAB) {
    throw BadParam("accumulation_set needs finite members; Gamma(a,b) duals are intervals");
  }
  if (!(eps > 0.0)) throw BadParam("accumulation_set: eps must be positive");

  const std::size_t first = n_max / 2;
  const std::size_t members = n_max - first + 1;
  std::vector<std::vector<Rational>> exact(n_max + 1);
  std::vector<std::vector<double>> duals(members);
  for (std::size_t n = 0; n <= n_max; ++n) seq.at(n).validate();
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k <= static_cast<std::ptrdiff_t>(n_max); ++k) {
    const auto n = static_cast<std::size_t>(k);
    exact[n] = exact_duals(seq.at(n));
    if (n >= first) {
      for (const auto& p : exact[n]) duals[n - first].push_back(to_double(p));
    }
  }

  std::vector<double> pts;
  for (const auto& d : duals) pts.insert(pts.end(), d.begin(), d.end());
  std::sort(pts.begin(), pts.end());

  AccumulationEstimate out;
  out.points_used = pts.size();
  out.estimate.endpoint_tolerance = eps;

  for (std::size_t k = 0; k < pts.size();) {
    std::size_t e = k;
    while (e + 1 < pts.size() && pts[e + 1] - pts[e] < eps) ++e;
    const double lo = pts[k], hi = pts[e];
    if (hi - lo >= eps) {
      out.estimate.intervals.push_back({lo, hi});
    } else {
      const double x = 0.5 * (lo + hi);
      bool isolated = true;
      for (const auto& d : duals) {
        // the member's own representative of this cluster is the closest point to x
        double own = *std::min_element(d.begin(), d.end(), [x](double p, double q) {
          return std::abs(p - x) < std::abs(q - x);
        });
        if (nearest_other(d, own) <= 5.0 * eps) isolated = false;
      }
      if (isolated) {
        out.estimate.isolated_points.push_back(x);
      } else {
        out.estimate.intervals.push_back({lo, hi});
      }
    }
    k = e + 1;
  }
  out.estimate.normalize();

  const auto predicted = predicted_region(canonical(seq.base));
  if (predicted) {
    out.predicted = predicted->region;
    out.hausdorff = hausdorff_distance(out.estimate, out.predicted);

    std::vector<double> landmarks = out.predicted.isolated_points;
    for (const auto& iv : out.predicted.intervals) {
      landmarks.push_back(iv.lo);
      landmarks.push_back(iv.hi);
    }
    std::vector<double> probes = landmarks;
    for (const auto& iv : out.predicted.intervals) {
      for (int k = 1; k < 1000; ++k) probes.push_back(iv.lo + (iv.hi - iv.lo) * k / 1000.0);
    }
    for (double p : probes) {
      auto it = std::lower_bound(pts.begin(), pts.end(), p);
      double gap = std::numeric_limits<double>::infinity();
      if (it != pts.end()) gap = *it - p;
      if (it != pts.begin()) gap = std::min(gap, p - *std::prev(it));
      out.predicted_coverage = std::max(out.predicted_coverage, gap);
    }

    // Landmarks are 0, 1, -1/(N-1) and powers of 1/q: compare exactly.
    std::vector<Rational> exact_landmarks;
    const FamilySpec b = canonical(seq.base);
    for (double p : landmarks) {
      Rational r;
      if (p == 0.0 || p == 1.0) {
        r = Rational(static_cast<int>(p));
      } else if (b.kind == FamilyKind::Hamming) {
        r = ratio(-1, b.N - 1);
      } else {
        int j = static_cast<int>(std::lround(-std::log(p) / std::log(static_cast<double>(b.q))));
        r = Rational(BigInt(1), ipow(b.q, static_cast<unsigned>(j)));
      }
      bool hit = false;
      for (std::size_t n = 0; n <= n_max && !hit; ++n) hit = std::find(exact[n].begin(), exact[n].end(), r) != exact[n].end();
      (hit ? out.attained : out.limit_only).push_back(p);
    }
  }
  return out;
}

void write_accumulation_csv(std::ostream& out, const EmbeddingSequence& seq, std::size_t n_max) {
  out << "n,j,dual_point\n";
  out.precision(17);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto d = enlarged_dual_points(seq, n);
    for (std::size_t j = 0; j < d.size(); ++j) out << n << ',' << j << ',' << d[j] << '\n';
  }
}

InclusionReport verify_subgraph_inclusion(const EmbeddingSequence& seq, std::size_t n, std::size_t radius) {
  const FamilySpec b = canonical(seq.base);
  const FamilySpec e = seq.at(n);
  ConcreteGraph small, large;
  std::vector<std::string> mapped;

  switch (b.kind) {
    case FamilyKind::Hamming: {
      small = enumerate_hamming(b.D, b.N);
      large = enumerate_hamming(e.D, e.N);
      std::string pad;
      for (std::size_t k = 0; k < n; ++k) pad += ",0";
      for (const auto& l : small.labels) mapped.push_back(l.substr(0, l.size() - 1) + pad + ")");
      break;
    }
    case FamilyKind::Johnson: {
      // x -> complement in [v] -> same set in [v+n] -> complement there: x + {v+1..v+n},
      // which lies in J(v+n, D+n) and hence in J(v+2n, D+n).
      small = enumerate_johnson(b.v, b.D);
      large = enumerate_johnson(e.v, e.D);
      std::string pad;
      for (std::size_t k = 1; k <= n; ++k) pad += "," + std::to_string(b.v + static_cast<int>(k));
      for (const auto& l : small.labels) mapped.push_back(l.substr(0, l.size() - 1) + pad + "}");
      break;
    }
    case FamilyKind::QJohnson: {
      // U -> U + span(e_{v+1}, ..., e_{v+n}) inside F_q^{v+2n}; this stays in echelon form.
      small = enumerate_q_johnson(b.q, b.v, b.D);
      large = enumerate_q_johnson(e.q, e.v, e.D);
      const std::string zeros(2 * n, '0');
      for (const auto& l : small.labels) {
        std::string body = l.substr(1, l.size() - 2);
        std::string out = "[";
        std::size_t start = 0;
        while (true) {
          auto semi = body.find(';', start);
          out += body.substr(start, semi == std::string::npos ? std::string::npos : semi - start) + zeros + ";";
          if (semi == std::string::npos) break;
          start = semi + 1;
        }
        for (std::size_t k = 0; k < n; ++k) {
          std::string row(static_cast<std::size_t>(e.v), '0');
          row[static_cast<std::size_t>(b.v) + k] = '1';
          out += row + (k + 1 < n ? ";" : "");
        }
        if (n == 0) out.pop_back();
        mapped.push_back(out + "]");
      }
      break;
    }
    case FamilyKind::GammaAB: {
      small = build_gamma_ball(b.a, b.b, radius);
      large = build_gamma_ball(e.a, e.b, radius);
      mapped = small.labels;
      break;
    }
    default:
      throw BadParam("verify_subgraph_inclusion: unsupported family");
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < large.vertex_count; ++k) index.emplace(large.labels[k], k);

  InclusionReport r;
  r.base = b.descriptor();
  r.enlarged = e.descriptor();
  r.base_vertices = small.vertex_count;
  r.enlarged_vertices = large.vertex_count;
  for (std::size_t k = 0; k < small.vertex_count; ++k) {
    auto it = index.find(mapped[k]);
    if (it == index.end()) throw EmbeddingFailure("image " + mapped[k] + " of " + small.labels[k] + " is not a vertex of " + r.enlarged);
    r.image.push_back(it->second);
  }
  for (std::size_t u = 0; u < small.vertex_count; ++u) {
    for (std::size_t v = u + 1; v < small.vertex_count; ++v) {
      ++r.pairs_checked;
      if (small.distance(u, v) != large.distance(r.image[u], r.image[v])) {
        throw EmbeddingFailure("distance of (" + small.labels[u] + ", " + small.labels[v] + ") is " +
                               std::to_string(small.distance(u, v)) + " but " +
                               std::to_string(large.distance(r.image[u], r.image[v])) + " after the map");
      }
    }
  }
  return r;
}

}  // namespace drg
