#include "qsr/eopra.hpp"

#include <algorithm>
#include <cmath>

#include "qsr/error.hpp"
#include "text_scan.hpp"

namespace qsr {

namespace {

constexpr std::array<std::string_view, 3> kClassNames = {"close", "equal",
                                                          "distant"};

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
    const auto it = std::find(kClassNames.begin(), kClassNames.end(), name);
    if (it == kClassNames.end()) {
      throw ParseError(0, col, "unknown distance class '" + std::string(name) + "'");
    }
    value = static_cast<int>(it - kClassNames.begin());
  }
  if (value >= m.distance_classes()) {
    throw ParseError(0, col, "distance class out of range");
  }
  return value;
}

int parse_sector_token(detail::Scanner& in, Granularity m) {
  const std::size_t col = in.column();
  if (in.at_digit()) {
    const int v = in.integer();
    if (v >= m.sectors()) throw ParseError(0, col, "sector index out of range");
    return v;
  }
  const std::string_view name = in.word();
  if (name.empty()) in.fail("expected a sector index");
  if (m.value() != 2) {
    throw ParseError(0, col, "sector names are only defined for m = 2");
  }
  for (int s = 0; s < 8; ++s) {
    if (sector_name(s) == name) return s;
  }
  throw ParseError(0, col, "unknown sector name '" + std::string(name) + "'");
}

}  // namespace

DistanceClassifier::DistanceClassifier(Granularity m) : m_(m) {
  const int mv = m.value();
  for (int u = 1; u < mv; ++u) {
    // tan(pi/4) is not exactly 1 in floating point.
    unit_[static_cast<std::size_t>(u - 1)] =
        (2 * u == mv) ? 1.0 : std::tan(u * kPi / (2.0 * mv));
  }
}

int DistanceClassifier::classify(double d, double elevation,
                                 const TolerancePolicy& tol) const {
  const int n = m_.value() - 1;
  int below = 0;
  for (int u = 0; u < n; ++u) {
    const double b = elevation * unit_[static_cast<std::size_t>(u)];
    if (std::fabs(d - b) <= tol.length_eps_rel * b) return 2 * u + 1;
    if (b < d) below = u + 1;
  }
  return 2 * below;
}

std::vector<double> class_boundaries(double elevation, Granularity m) {
  if (!std::isfinite(elevation) || elevation <= 0.0) {
    throw InvalidArgument("elevation must be finite and > 0");
  }
  const DistanceClassifier classifier(m);
  std::vector<double> out;
  for (double u : classifier.unit_boundaries()) out.push_back(elevation * u);
  return out;
}

int classify_distance(double d, double elevation, Granularity m,
                      const TolerancePolicy& tol) {
  if (!std::isfinite(d) || d <= 0.0) {
    throw InvalidArgument("distance must be finite and > 0");
  }
  if (!std::isfinite(elevation) || elevation <= 0.0) {
    throw InvalidArgument("elevation must be finite and > 0");
  }
  return DistanceClassifier(m).classify(d, elevation, tol);
}

std::string_view distance_class_name(int c) {
  if (c < 0 || c >= static_cast<int>(kClassNames.size())) {
    throw InvalidArgument("distance class names exist only for m = 2");
  }
  return kClassNames[static_cast<std::size_t>(c)];
}

EopraRelation EopraRelation::different(Granularity m, int i, int k, int j,
                                       int l) {
  OpraRelation::different(m, i, j);
  check_class(m, k);
  check_class(m, l);
  return EopraRelation{m, RelationKind::DifferentPosition, i, k, j, l, 0};
}

EopraRelation EopraRelation::same(Granularity m, int s) {
  OpraRelation::same(m, s);
  return EopraRelation{m, RelationKind::SamePosition, 0, 0, 0, 0, s};
}

EopraRelation relate_eopra(const EOPoint& a, const EOPoint& b, Granularity m,
                           const TolerancePolicy& tol) {
  return relate_eopra(a, b, DistanceClassifier(m), tol);
}

EopraRelation relate_eopra(const EOPoint& a, const EOPoint& b,
                           const DistanceClassifier& classifier,
                           const TolerancePolicy& tol) {
  const Granularity m = classifier.granularity();
  const OpraRelation dir = relate_opra(a, b, m, tol);
  if (dir.kind == RelationKind::SamePosition) return EopraRelation::same(m, dir.s);
  const double d = distance(a.position(), b.position());
  return EopraRelation::different(m, dir.i,
                                  classifier.classify(d, a.elevation(), tol),
                                  dir.j,
                                  classifier.classify(d, b.elevation(), tol));
}

EopraRelation converse_eopra(const EopraRelation& r) {
  if (r.kind == RelationKind::SamePosition) {
    return EopraRelation::same(r.m, (r.m.sectors() - r.s) % r.m.sectors());
  }
  return EopraRelation::different(r.m, r.j, r.l, r.i, r.k);
}

EOPoint calibrate(const EOPoint& a, const Point& b) {
  const double d = distance(a.position(), b);
  if (d <= 0.0) {
    throw InvalidArgument("calibration point coincides with the eo-point");
  }
  return a.with_elevation(d);
}

std::vector<EopraRelation> enumerate_eopra(Granularity m) {
  const int n = m.sectors();
  const int c = m.distance_classes();
  std::vector<EopraRelation> out;
  out.reserve(static_cast<std::size_t>(n) * n * c * c + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < c; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < c; ++l)
          out.push_back(EopraRelation::different(m, i, k, j, l));
  for (int s = 0; s < n; ++s) out.push_back(EopraRelation::same(m, s));
  return out;
}

std::string format_eopra(const EopraRelation& r) {
  std::string out = std::to_string(r.m.value()) + ":";
  if (r.kind == RelationKind::SamePosition) return out + "s" + std::to_string(r.s);
  return out + std::to_string(r.i) + "." + std::to_string(r.k) + "-" +
         std::to_string(r.j) + "." + std::to_string(r.l);
}

EopraRelation parse_eopra(std::string_view text) {
  detail::Scanner in(text);
  const std::size_t mcol = in.column();
  const int mv = in.integer();
  if (mv < 1 || mv > Granularity::kMax) {
    throw ParseError(0, mcol, "granularity out of range");
  }
  const Granularity m(mv);
  in.expect(':');
  if (in.accept('s')) {
    const std::size_t col = in.column();
    const int s = in.integer();
    if (s >= m.sectors()) throw ParseError(0, col, "sector index out of range");
    in.expect_end();
    return EopraRelation::same(m, s);
  }
  const int i = parse_sector_token(in, m);
  in.expect('.');
  const int k = parse_class(in, m);
  in.expect('-');
  const int j = parse_sector_token(in, m);
  in.expect('.');
  const int l = parse_class(in, m);
  in.expect_end();
  return EopraRelation::different(m, i, k, j, l);
}

}  // namespace qsr
