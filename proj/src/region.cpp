#include "drg/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drg {

bool PositivityRegion::contains(double x, double tol) const {
  for (const auto& iv : intervals) {
    if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
  }
  for (double p : isolated_points) {
    if (std::abs(x - p) <= tol) return true;
  }
  return false;
}

bool PositivityRegion::contains_interval(double lo, double hi, double tol) const {
  for (const auto& iv : intervals) {
    if (lo >= iv.lo - tol && hi <= iv.hi + tol) return true;
  }
  if (hi - lo <= tol) return contains(0.5 * (lo + hi), tol);
  return false;
}

bool PositivityRegion::contains_region(const PositivityRegion& other, double tol) const {
  for (const auto& iv : other.intervals) {
    if (!contains_interval(iv.lo, iv.hi, tol)) return false;
  }
  for (double p : other.isolated_points) {
    if (!contains(p, tol)) return false;
  }
  return true;
}

void PositivityRegion::normalize() {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi + endpoint_tolerance) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  intervals = std::move(merged);

  std::sort(isolated_points.begin(), isolated_points.end());
  std::vector<double> pts;
  for (double p : isolated_points) {
    bool inside = false;
    for (const auto& iv : intervals) {
      if (p >= iv.lo - endpoint_tolerance && p <= iv.hi + endpoint_tolerance) {
        inside = true;
        break;
      }
    }
    if (inside) continue;
    if (!pts.empty() && p - pts.back() <= endpoint_tolerance) continue;
    pts.push_back(p);
  }
  isolated_points = std::move(pts);
}

double distance_to(const PositivityRegion& r, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : r.intervals) {
    double d = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
    best = std::min(best, d);
  }
  for (double p : r.isolated_points) best = std::min(best, std::abs(x - p));
  return best;
}

namespace {

// sup over a in A of dist(a, B).  On an interval of A the distance function
// to B is piecewise linear with maxima at the interval ends or at midpoints
// between consecutive pieces of B, so those candidates suffice.
double directed(const PositivityRegion& a, const PositivityRegion& b) {
  std::vector<double> anchors;
  for (const auto& iv : b.intervals) {
    anchors.push_back(iv.lo);
    anchors.push_back(iv.hi);
  }
  for (double p : b.isolated_points) anchors.push_back(p);
  std::sort(anchors.begin(), anchors.end());

  double worst = 0.0;
  auto probe = [&](double x) { worst = std::max(worst, distance_to(b, x)); };
  for (double p : a.isolated_points) probe(p);
  for (const auto& iv : a.intervals) {
    probe(iv.lo);
    probe(iv.hi);
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
      double mid = 0.5 * (anchors[k] + anchors[k + 1]);
      if (mid > iv.lo && mid < iv.hi) probe(mid);
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const PositivityRegion& a, const PositivityRegion& b) {
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace drg
