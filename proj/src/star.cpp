#include "qsr/star.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qsr/error.hpp"
#include "text_scan.hpp"

namespace qsr {

namespace {

void check_direction(Granularity m, int d) {
  if (d < 0 || d >= m.sectors()) {
    throw InvalidArgument("star sector index out of range [0, 4m)");
  }
}

void check_class(Granularity m, int c) {
  if (c < 0 || c >= m.distance_classes()) {
    throw InvalidArgument("distance class out of range [0, 2m-1)");
  }
}

int parse_class(detail::Scanner& in, Granularity m) {
  const std::size_t col = in.column();
  int value = 0;
  if (in.at_digit()) {
    value = in.integer();
  } else {
    const std::string_view name = in.word();
    if (name.empty()) in.fail("expected a distance class");
    if (m.value() != 2) {
      throw ParseError(0, col, "distance class names are only defined for m = 2");
    }
    value = -1;
    for (int c = 0; c < 3; ++c) {
      if (distance_class_name(c) == name) value = c;
    }
    if (value < 0) {
      throw ParseError(0, col, "unknown distance class '" + std::string(name) + "'");
    }
  }
  if (value >= m.distance_classes()) {
    throw ParseError(0, col, "distance class out of range");
  }
  return value;
}

}  // namespace

StarFrame::StarFrame(Granularity m) : m_(m) {
  for (int t = 0; t < m.value(); ++t) axes_.push_back(t * kPi / m.value());
}

StarFrame::StarFrame(Granularity m, std::vector<double> axis_angles)
    : m_(m), axes_(std::move(axis_angles)), default_(false) {
  if (static_cast<int>(axes_.size()) != m.value()) {
    throw InvalidArgument("star frame needs exactly m axis angles");
  }
  for (std::size_t t = 0; t < axes_.size(); ++t) {
    const double a = axes_[t];
    if (!std::isfinite(a) || a < 0.0 || a >= kPi) {
      throw InvalidArgument("star axis angles must lie in [0, pi)");
    }
    if (t > 0 && !(axes_[t - 1] < a)) {
      throw InvalidArgument("star axis angles must be strictly ascending");
    }
  }
  default_ = (*this == StarFrame(m));
}

int StarFrame::sector_of_bearing(double bearing,
                                 const TolerancePolicy& tol) const {
  const double rel = normalize_angle(bearing - axes_.front());
  if (default_) return sector_of(rel, m_, tol);

  const int rays = 2 * m_.value();
  int below = 0;
  for (int r = 0; r < rays; ++r) {
    const double ray = r < m_.value()
                           ? axes_[static_cast<std::size_t>(r)] - axes_.front()
                           : axes_[static_cast<std::size_t>(r - m_.value())] +
                                 kPi - axes_.front();
    double diff = std::fabs(rel - ray);
    diff = std::min(diff, kTwoPi - diff);
    if (diff <= tol.angle_eps) return 2 * r;
    if (ray < rel) below = r;
  }
  return 2 * below + 1;
}

StarRelation StarRelation::different(Granularity m, int d) {
  check_direction(m, d);
  return StarRelation{m, false, RelationKind::DifferentPosition, d, 0, 0};
}

StarRelation StarRelation::different_elevated(Granularity m, int d, int k,
                                              int l) {
  check_direction(m, d);
  check_class(m, k);
  check_class(m, l);
  return StarRelation{m, true, RelationKind::DifferentPosition, d, k, l};
}

StarRelation StarRelation::same(Granularity m, bool elevated) {
  return StarRelation{m, elevated, RelationKind::SamePosition, 0, 0, 0};
}

StarRelation relate_star(const Point& a, const Point& b, const StarFrame& frame,
                         const TolerancePolicy& tol) {
  const Granularity m = frame.granularity();
  if (same_position(a, b, tol)) return StarRelation::same(m, false);
  return StarRelation::different(m, frame.sector_of_bearing(bearing(a, b), tol));
}

StarRelation relate_estar(const EOPoint& a, const EOPoint& b,
                          const StarFrame& frame, const TolerancePolicy& tol) {
  return relate_estar(a, b, frame, DistanceClassifier(frame.granularity()), tol);
}

StarRelation relate_estar(const EOPoint& a, const EOPoint& b,
                          const StarFrame& frame,
                          const DistanceClassifier& classifier,
                          const TolerancePolicy& tol) {
  const Granularity m = frame.granularity();
  if (!(classifier.granularity() == m)) {
    throw InvalidArgument("classifier granularity differs from the frame's");
  }
  const StarRelation dir = relate_star(a.position(), b.position(), frame, tol);
  if (dir.kind == RelationKind::SamePosition) return StarRelation::same(m, true);
  const double dist = distance(a.position(), b.position());
  return StarRelation::different_elevated(
      m, dir.d, classifier.classify(dist, a.elevation(), tol),
      classifier.classify(dist, b.elevation(), tol));
}

StarRelation converse_star(const StarRelation& r) {
  if (r.kind == RelationKind::SamePosition) return r;
  const int d = (r.d + 2 * r.m.value()) % r.m.sectors();
  if (!r.elevated) return StarRelation::different(r.m, d);
  return StarRelation::different_elevated(r.m, d, r.l, r.k);
}

std::vector<StarRelation> enumerate_star(Granularity m, bool elevated) {
  std::vector<StarRelation> out;
  const int c = m.distance_classes();
  for (int d = 0; d < m.sectors(); ++d) {
    if (!elevated) {
      out.push_back(StarRelation::different(m, d));
      continue;
    }
    for (int k = 0; k < c; ++k)
      for (int l = 0; l < c; ++l)
        out.push_back(StarRelation::different_elevated(m, d, k, l));
  }
  out.push_back(StarRelation::same(m, elevated));
  return out;
}

std::string format_star(const StarRelation& r) {
  std::string out = (r.elevated ? "estar-" : "star-") +
                    std::to_string(r.m.value()) + ":";
  if (r.kind == RelationKind::SamePosition) return out + "same";
  out += std::to_string(r.d);
  if (r.elevated) out += "." + std::to_string(r.k) + "." + std::to_string(r.l);
  return out;
}

StarRelation parse_star(std::string_view text) {
  detail::Scanner in(text);
  bool elevated = false;
  if (in.accept("estar-")) {
    elevated = true;
  } else if (!in.accept("star-")) {
    in.fail("expected 'star-' or 'estar-'");
  }
  const std::size_t mcol = in.column();
  const int mv = in.integer();
  if (mv < 1 || mv > Granularity::kMax) {
    throw ParseError(0, mcol, "granularity out of range");
  }
  const Granularity m(mv);
  in.expect(':');
  if (in.accept("same")) {
    in.expect_end();
    return StarRelation::same(m, elevated);
  }
  const std::size_t dcol = in.column();
  const int d = in.integer();
  if (d >= m.sectors()) throw ParseError(0, dcol, "sector index out of range");
  if (!elevated) {
    in.expect_end();
    return StarRelation::different(m, d);
  }
  in.expect('.');
  const int k = parse_class(in, m);
  in.expect('.');
  const int l = parse_class(in, m);
  in.expect_end();
  return StarRelation::different_elevated(m, d, k, l);
}

}  // namespace qsr
