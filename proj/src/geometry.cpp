#include "qsr/geometry.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qsr/error.hpp"

namespace qsr {

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw InvalidArgument("point coordinates must be finite");
  }
}

EOPoint::EOPoint(Point position, double heading, double elevation)
    : position_(position),
      heading_(normalize_angle(heading)),
      elevation_(elevation) {
  if (!std::isfinite(elevation) || elevation <= 0.0) {
    throw InvalidArgument("elevation must be finite and > 0");
  }
}

void TolerancePolicy::validate() const {
  if (!std::isfinite(angle_eps) || angle_eps < 0.0 ||
      !std::isfinite(length_eps_rel) || length_eps_rel < 0.0) {
    throw InvalidArgument("tolerances must be finite and >= 0");
  }
}

double normalize_angle(double a) {
  if (!std::isfinite(a)) throw InvalidArgument("angle must be finite");
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value lands on 2pi after the shift.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

double bearing(const Point& a, const Point& b) {
  return normalize_angle(std::atan2(b.y() - a.y(), b.x() - a.x()));
}

Similarity Similarity::inverse() const {
  if (!(scale > 0.0)) throw InvalidArgument("similarity scale must be > 0");
  const double inv = 1.0 / scale;
  const double c = std::cos(-rotation);
  const double s = std::sin(-rotation);
  const double tx = -inv * (c * translation.x() - s * translation.y());
  const double ty = -inv * (s * translation.x() + c * translation.y());
  return Similarity{-rotation, Point(tx, ty), inv};
}

Point Similarity::apply(const Point& p) const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return Point(scale * (c * p.x() - s * p.y()) + translation.x(),
               scale * (s * p.x() + c * p.y()) + translation.y());
}

EOPoint Similarity::apply(const EOPoint& p) const {
  if (!(scale > 0.0)) throw InvalidArgument("similarity scale must be > 0");
  return EOPoint(apply(p.position()), p.heading() + rotation,
                 p.elevation() * scale);
}

EOPoint apply_similarity(const EOPoint& p, double rotation,
                         const Point& translation, double scale) {
  return Similarity{rotation, translation, scale}.apply(p);
}

EOPoint parse_point_spec(std::string_view text) {
  struct Field {
    double value;
    std::size_t column;
  };
  std::vector<Field> fields;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i == text.size()) break;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (fields.size() == 4) throw ParseError(0, start + 1, "too many fields");
    const char* first = text.data() + start;
    const char* last = text.data() + i;
    if (*first == '+') ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ParseError(0, start + 1,
                       "bad number '" + std::string(text.substr(start, i - start)) + "'");
    }
    fields.push_back({value, start + 1});
  }
  if (fields.size() < 3) {
    throw ParseError(0, text.size() + 1, "expected 'x y heading_deg [elevation]'");
  }
  const double elevation = fields.size() == 4 ? fields[3].value : 1.0;
  if (!(elevation > 0.0)) {
    throw ParseError(0, fields[3].column, "elevation must be > 0");
  }
  return EOPoint(Point(fields[0].value, fields[1].value),
                 fields[2].value * kPi / 180.0, elevation);
}

std::string format_point_spec(const EOPoint& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g", p.position().x(),
                p.position().y(), p.heading() * 180.0 / kPi, p.elevation());
  return buf;
}

}  // namespace qsr
