#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace qsr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Planar point with finite coordinates.
class Point {
 public:
  constexpr Point() = default;
  Point(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

/// Elevated oriented point: a position, a heading (radians, counterclockwise
/// from +x, kept in [0, 2pi)) and a strictly positive reference distance.
class EOPoint {
 public:
  EOPoint(Point position, double heading, double elevation);

  const Point& position() const { return position_; }
  double heading() const { return heading_; }
  double elevation() const { return elevation_; }

  EOPoint with_elevation(double elevation) const {
    return EOPoint(position_, heading_, elevation);
  }

  friend bool operator==(const EOPoint&, const EOPoint&) = default;

 private:
  Point position_;
  double heading_;
  double elevation_;
};

/// Decides boundary membership (rays, circles, coincident positions) under
/// floating point.
struct TolerancePolicy {
  double angle_eps = 1e-9;
  double length_eps_rel = 1e-9;

  /// Throws InvalidArgument for negative or non-finite tolerances.
  void validate() const;
};

/// Maps any finite angle into [0, 2pi).
double normalize_angle(double a);

double distance(const Point& a, const Point& b);

/// Direction of b seen from a, in [0, 2pi). Undefined for a == b.
double bearing(const Point& a, const Point& b);

/// x -> scale * R(rotation) * x + translation; headings turn by `rotation`,
/// elevations are multiplied by `scale`.
struct Similarity {
  double rotation = 0.0;
  Point translation;
  double scale = 1.0;

  Similarity inverse() const;
  Point apply(const Point& p) const;
  EOPoint apply(const EOPoint& p) const;
};

EOPoint apply_similarity(const EOPoint& p, double rotation,
                         const Point& translation, double scale);

/// Reads `x y heading_deg [elevation]`. The heading is in degrees; a missing
/// elevation defaults to 1. Throws ParseError (line 0) with the column of the
/// offending field.
EOPoint parse_point_spec(std::string_view text);
std::string format_point_spec(const EOPoint& p);

}  // namespace qsr
