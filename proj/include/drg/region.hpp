#pragma once

#include <vector>

namespace drg {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Closed subset of [-1, 1]: sorted disjoint intervals plus isolated points
// lying outside every interval.
struct PositivityRegion {
  std::vector<Interval> intervals;
  std::vector<double> isolated_points;
  double endpoint_tolerance = 1e-8;

  bool contains(double x, double tol) const;
  bool contains(double x) const { return contains(x, endpoint_tolerance); }
  // [lo, hi] lies inside a single interval, up to tol at the ends.
  bool contains_interval(double lo, double hi, double tol) const;
  // Every point and interval of `other` lies within this region up to tol.
  bool contains_region(const PositivityRegion& other, double tol) const;

  // Sorts, merges intervals closer than endpoint_tolerance and drops points
  // swallowed by an interval.
  void normalize();
};

// Distance from x to the nearest point of the region (infinity if empty).
double distance_to(const PositivityRegion& r, double x);

// Hausdorff distance between two regions viewed as compact subsets of R.
double hausdorff_distance(const PositivityRegion& a, const PositivityRegion& b);

}  // namespace drg
