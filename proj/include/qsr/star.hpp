#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qsr/eopra.hpp"
#include "qsr/geometry.hpp"
#include "qsr/granularity.hpp"
#include "qsr/opra.hpp"

namespace qsr {

/// The m undirected reference lines of a star calculus. Each line
/// contributes a ray and its opposite, giving 2m rays and 4m absolute
/// sectors around every point.
class StarFrame {
 public:
  /// Equally spaced axes at t * pi / m.
  explicit StarFrame(Granularity m);
  /// Throws InvalidArgument unless the angles are strictly ascending in
  /// [0, pi) and there are exactly m of them.
  StarFrame(Granularity m, std::vector<double> axis_angles);

  Granularity granularity() const { return m_; }
  const std::vector<double>& axis_angles() const { return axes_; }
  bool is_default() const { return default_; }

  /// Absolute sector of a global bearing: even = ray, odd = open cone,
  /// counterclockwise from the ray of axis_angles()[0].
  int sector_of_bearing(double bearing, const TolerancePolicy& tol) const;

  friend bool operator==(const StarFrame& a, const StarFrame& b) {
    return a.m_ == b.m_ && a.axes_ == b.axes_;
  }

 private:
  Granularity m_;
  std::vector<double> axes_;
  bool default_ = true;
};

/// Star relation; `elevated` relations additionally carry distance classes
/// k (against the first point's elevation) and l (against the second's).
struct StarRelation {
  Granularity m{1};
  bool elevated = false;
  RelationKind kind = RelationKind::DifferentPosition;
  int d = 0;
  int k = 0;
  int l = 0;

  static StarRelation different(Granularity m, int d);
  static StarRelation different_elevated(Granularity m, int d, int k, int l);
  static StarRelation same(Granularity m, bool elevated);

  friend bool operator==(const StarRelation&, const StarRelation&) = default;
};

StarRelation relate_star(const Point& a, const Point& b, const StarFrame& frame,
                         const TolerancePolicy& tol = {});

/// Headings are ignored.
StarRelation relate_estar(const EOPoint& a, const EOPoint& b,
                          const StarFrame& frame,
                          const TolerancePolicy& tol = {});
StarRelation relate_estar(const EOPoint& a, const EOPoint& b,
                          const StarFrame& frame,
                          const DistanceClassifier& classifier,
                          const TolerancePolicy& tol = {});

StarRelation converse_star(const StarRelation& r);

/// Directions first (lexicographic in (d, k, l) when elevated), SamePosition
/// last.
std::vector<StarRelation> enumerate_star(Granularity m, bool elevated);

/// `star-m:d`, `estar-m:d.k.l`, `star-m:same`, `estar-m:same`.
std::string format_star(const StarRelation& r);
StarRelation parse_star(std::string_view text);

}  // namespace qsr
