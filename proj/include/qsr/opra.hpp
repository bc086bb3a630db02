#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qsr/geometry.hpp"
#include "qsr/granularity.hpp"

namespace qsr {

enum class RelationKind { DifferentPosition, SamePosition };

/// Sector index in [0, 4m) of a normalized angle. Even indices are the rays
/// at multiples of pi/m, odd indices the open cones between them; 0 is
/// straight ahead and numbering runs counterclockwise.
int sector_of(double angle, Granularity m, const TolerancePolicy& tol = {});

/// OPRA_m base relation. For DifferentPosition, `i` is the sector of the
/// second point seen from the first and `j` the sector of the first seen from
/// the second. For SamePosition, `s` is the sector of the second heading
/// relative to the first.
struct OpraRelation {
  Granularity m{1};
  RelationKind kind = RelationKind::DifferentPosition;
  int i = 0;
  int j = 0;
  int s = 0;

  static OpraRelation different(Granularity m, int i, int j);
  static OpraRelation same(Granularity m, int s);

  friend bool operator==(const OpraRelation&, const OpraRelation&) = default;
};

OpraRelation relate_opra(const EOPoint& a, const EOPoint& b, Granularity m,
                         const TolerancePolicy& tol = {});

OpraRelation converse_opra(const OpraRelation& r);

/// DifferentPosition relations ordered by (i, j), then SamePosition by s.
std::vector<OpraRelation> enumerate_opra(Granularity m);

/// True when the two positions coincide under the relative length tolerance.
bool same_position(const Point& a, const Point& b, const TolerancePolicy& tol);

/// Names of the m = 2 sectors: front, lf, left, lb, back, rb, right, rf.
std::string_view sector_name(int sector);

/// `m:i-j` or `m:s<k>`.
std::string format_opra(const OpraRelation& r);

/// Accepts the canonical syntax plus, for m = 2, sector names in place of
/// indices. Throws ParseError with a 1-based column.
OpraRelation parse_opra(std::string_view text);

}  // namespace qsr
