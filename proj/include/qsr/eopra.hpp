#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/geometry.hpp"
#include "qsr/granularity.hpp"
#include "qsr/opra.hpp"

namespace qsr {

/// Boundary radii between distance classes, for unit elevation.
///
/// Class boundaries are the ground distances at which a viewer raised by the
/// elevation sees the other point under depression angles that step evenly
/// by pi/(2m): r_u = elevation * tan(u * pi / (2m)) for u = 1 .. m-1,
/// ascending. For m = 2 the single boundary is the elevation itself, which
/// yields the close / equal / distant triple.
class DistanceClassifier {
 public:
  explicit DistanceClassifier(Granularity m);

  Granularity granularity() const { return m_; }
  std::span<const double> unit_boundaries() const {
    return {unit_.data(), static_cast<std::size_t>(m_.value() - 1)};
  }

  /// Class index in [0, 2m-2]: even = open annulus, odd = boundary circle.
  /// Requires d > 0 and elevation > 0.
  int classify(double d, double elevation, const TolerancePolicy& tol) const;

 private:
  Granularity m_;
  std::array<double, Granularity::kMax> unit_{};
};

std::vector<double> class_boundaries(double elevation, Granularity m);

int classify_distance(double d, double elevation, Granularity m,
                      const TolerancePolicy& tol = {});

/// Names of the m = 2 distance classes: close, equal, distant.
std::string_view distance_class_name(int c);

/// EOPRA_m base relation: OPRA sectors (i, j) with distance classes k (of the
/// second point against the first's elevation) and l (of the first point
/// against the second's elevation). SamePosition carries only `s`.
struct EopraRelation {
  Granularity m{1};
  RelationKind kind = RelationKind::DifferentPosition;
  int i = 0;
  int k = 0;
  int j = 0;
  int l = 0;
  int s = 0;

  static EopraRelation different(Granularity m, int i, int k, int j, int l);
  static EopraRelation same(Granularity m, int s);

  friend bool operator==(const EopraRelation&, const EopraRelation&) = default;
};

EopraRelation relate_eopra(const EOPoint& a, const EOPoint& b, Granularity m,
                           const TolerancePolicy& tol = {});
EopraRelation relate_eopra(const EOPoint& a, const EOPoint& b,
                           const DistanceClassifier& classifier,
                           const TolerancePolicy& tol = {});

EopraRelation converse_eopra(const EopraRelation& r);

/// Replaces a's elevation with its distance to b. Throws InvalidArgument when
/// the positions coincide.
EOPoint calibrate(const EOPoint& a, const Point& b);

/// Lexicographic in (i, k, j, l), then SamePosition by s.
std::vector<EopraRelation> enumerate_eopra(Granularity m);

/// `m:i.k-j.l` or `m:s<k>`.
std::string format_eopra(const EopraRelation& r);
EopraRelation parse_eopra(std::string_view text);

}  // namespace qsr
