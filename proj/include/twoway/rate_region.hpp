#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twoway/rational.hpp"

namespace twoway::region {

/// One half-space a . R <= b over the region's coordinates.
struct Inequality {
  std::vector<Rat> a;
  Rat b;
  std::string label;
  bool full_adaptation = true;  // proved without restricting any node
};

struct RatePoint {
  std::map<std::string, Rat> values;
};

/// H-representation polytope over named rate coordinates with exact rational
/// coefficients. R >= 0 is implicit on every coordinate. Rates are measured
/// in log2(unit_log2_of)-bit units; unit_log2_of == 2 means plain bits, which
/// is the normal form (any power-of-two unit is normalized to it at
/// construction).
///
/// Construction requires the region to be bounded. The certificate used is
/// that every coordinate appears with a positive coefficient in some
/// all-nonnegative inequality; every constructor in this library produces
/// only nonnegative coefficients, for which this is exact.
class RateRegion {
 public:
  RateRegion(std::vector<std::string> coords, std::vector<Inequality> ineqs,
             int unit_log2_of = 2);

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Inequality>& ineqs() const { return ineqs_; }
  int unit_log2_of() const { return unit_; }
  std::size_t dim() const { return coords_.size(); }

  /// Multiplier turning region units into bits (1.0 when unit is bits).
  double unit_bits() const;

  /// "full" when every inequality is proved under full adaptation,
  /// otherwise "partial".
  std::string adaptation_mode() const;

  int coord_index(const std::string& name) const;  // throws if unknown

  bool contains(const std::vector<Rat>& x) const;
  bool contains(const RatePoint& p) const;
  /// Floating containment with tolerance, for points with irrational
  /// coordinates (log2 of non-power-of-two message counts).
  bool contains_approx(const std::map<std::string, double>& p,
                       double tol) const;

  /// All extreme points, exact, deduplicated, sorted lexicographically.
  /// Rejects dim > 6 and unbounded input (the latter cannot occur for
  /// constructed regions).
  std::vector<std::vector<Rat>> vertices() const;
  std::vector<RatePoint> vertex_points() const;

  Rat max_weighted_sum(const std::map<std::string, Rat>& weights) const;

  /// Number of vertices at which each inequality holds with equality.
  std::vector<int> tight_vertex_counts() const;

  /// View with redundant inequalities dropped (kept set scanned in order).
  RateRegion irredundant() const;

  /// Mutual vertex containment; mismatched coordinates or units are an
  /// error, not inequality.
  static bool equals(const RateRegion& r1, const RateRegion& r2);

  /// Exact convex decomposition of a contained point into vertices:
  /// p = sum w_i v_i, w_i > 0, sum w_i = 1.
  std::vector<std::pair<std::vector<Rat>, Rat>> decompose(
      const std::vector<Rat>& p) const;

  std::string to_json() const;
  /// One rate tuple per row, decimal bits at 6 digits, header = coord names.
  std::string vertices_csv() const;

 private:
  std::vector<std::vector<int>> coordinate_components() const;

  std::vector<std::string> coords_;
  std::vector<Inequality> ineqs_;
  int unit_;
};

}  // namespace twoway::region
