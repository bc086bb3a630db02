#include "qsr/opra.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qsr/error.hpp"
#include "text_scan.hpp"

namespace qsr {

namespace {

constexpr std::array<std::string_view, 8> kSectorNames = {
    "front", "lf", "left", "lb", "back", "rb", "right", "rf"};

void check_sector(Granularity m, int index) {
  if (index < 0 || index >= m.sectors()) {
    throw InvalidArgument("sector index out of range [0, 4m)");
  }
}

int parse_sector(detail::Scanner& in, Granularity m) {
  const std::size_t col = in.column();
  int value = 0;
  if (in.at_digit()) {
    value = in.integer();
  } else {
    const std::string_view name = in.word();
    if (name.empty()) in.fail("expected a sector index");
    if (m.value() != 2) {
      throw ParseError(0, col, "sector names are only defined for m = 2");
    }
    const auto it = std::find(kSectorNames.begin(), kSectorNames.end(), name);
    if (it == kSectorNames.end()) {
      throw ParseError(0, col, "unknown sector name '" + std::string(name) + "'");
    }
    value = static_cast<int>(it - kSectorNames.begin());
  }
  if (value >= m.sectors()) throw ParseError(0, col, "sector index out of range");
  return value;
}

}  // namespace

int sector_of(double angle, Granularity m, const TolerancePolicy& tol) {
  const double step = kPi / m.value();
  const double q = angle / step;
  const double t = std::nearbyint(q);
  if (std::fabs(angle - t * step) <= tol.angle_eps) {
    return (2 * static_cast<int>(t)) % m.sectors();
  }
  const int cone = static_cast<int>(std::floor(q));
  return std::clamp(2 * cone + 1, 1, m.sectors() - 1);
}

bool same_position(const Point& a, const Point& b, const TolerancePolicy& tol) {
  const double magnitude =
      std::max({1.0, std::fabs(a.x()), std::fabs(a.y()), std::fabs(b.x()),
                std::fabs(b.y())});
  return distance(a, b) <= tol.length_eps_rel * magnitude;
}

OpraRelation OpraRelation::different(Granularity m, int i, int j) {
  check_sector(m, i);
  check_sector(m, j);
  return OpraRelation{m, RelationKind::DifferentPosition, i, j, 0};
}

OpraRelation OpraRelation::same(Granularity m, int s) {
  check_sector(m, s);
  return OpraRelation{m, RelationKind::SamePosition, 0, 0, s};
}

OpraRelation relate_opra(const EOPoint& a, const EOPoint& b, Granularity m,
                         const TolerancePolicy& tol) {
  if (same_position(a.position(), b.position(), tol)) {
    return OpraRelation::same(
        m, sector_of(normalize_angle(b.heading() - a.heading()), m, tol));
  }
  const double ab = bearing(a.position(), b.position());
  const double ba = normalize_angle(ab + kPi);
  return OpraRelation::different(
      m, sector_of(normalize_angle(ab - a.heading()), m, tol),
      sector_of(normalize_angle(ba - b.heading()), m, tol));
}

OpraRelation converse_opra(const OpraRelation& r) {
  if (r.kind == RelationKind::SamePosition) {
    return OpraRelation::same(r.m, (r.m.sectors() - r.s) % r.m.sectors());
  }
  return OpraRelation::different(r.m, r.j, r.i);
}

std::vector<OpraRelation> enumerate_opra(Granularity m) {
  const int n = m.sectors();
  std::vector<OpraRelation> out;
  out.reserve(static_cast<std::size_t>(n) * n + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.push_back(OpraRelation::different(m, i, j));
  }
  for (int s = 0; s < n; ++s) out.push_back(OpraRelation::same(m, s));
  return out;
}

std::string_view sector_name(int sector) {
  if (sector < 0 || sector >= static_cast<int>(kSectorNames.size())) {
    throw InvalidArgument("sector names exist only for m = 2");
  }
  return kSectorNames[static_cast<std::size_t>(sector)];
}

std::string format_opra(const OpraRelation& r) {
  std::string out = std::to_string(r.m.value()) + ":";
  if (r.kind == RelationKind::SamePosition) return out + "s" + std::to_string(r.s);
  return out + std::to_string(r.i) + "-" + std::to_string(r.j);
}

OpraRelation parse_opra(std::string_view text) {
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
    return OpraRelation::same(m, s);
  }
  const int i = parse_sector(in, m);
  in.expect('-');
  const int j = parse_sector(in, m);
  in.expect_end();
  return OpraRelation::different(m, i, j);
}

}  // namespace qsr
