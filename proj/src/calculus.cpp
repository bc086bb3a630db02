#include "qsr/calculus.hpp"

#include "qsr/error.hpp"

namespace qsr {

namespace {

std::size_t universe_size(CalculusId id, Granularity m) {
  const std::size_t n = static_cast<std::size_t>(m.sectors());
  const std::size_t c = static_cast<std::size_t>(m.distance_classes());
  switch (id) {
    case CalculusId::Opra: return n * n + n;
    case CalculusId::Eopra: return n * n * c * c + n;
    case CalculusId::Star: return n + 1;
    case CalculusId::Estar: return n * c * c + 1;
  }
  return 0;
}

}  // namespace

std::string_view calculus_name(CalculusId id) {
  switch (id) {
    case CalculusId::Opra: return "opra";
    case CalculusId::Eopra: return "eopra";
    case CalculusId::Star: return "star";
    case CalculusId::Estar: return "estar";
  }
  return "?";
}

CalculusId parse_calculus_id(std::string_view name) {
  if (name == "opra") return CalculusId::Opra;
  if (name == "eopra") return CalculusId::Eopra;
  if (name == "star") return CalculusId::Star;
  if (name == "estar") return CalculusId::Estar;
  throw InvalidArgument("unknown calculus '" + std::string(name) + "'");
}

Calculus::Calculus(CalculusId id, Granularity m, TolerancePolicy tol)
    : id_(id), m_(m), tol_(tol), frame_(m), classifier_(m),
      size_(universe_size(id, m)) {
  tol_.validate();
}

Calculus::Calculus(CalculusId id, StarFrame frame, TolerancePolicy tol)
    : id_(id), m_(frame.granularity()), tol_(tol), frame_(std::move(frame)),
      classifier_(m_), size_(universe_size(id, m_)) {
  if (id != CalculusId::Star && id != CalculusId::Estar) {
    throw InvalidArgument("only star calculi take a frame");
  }
  tol_.validate();
}

void Calculus::check(RelationIndex r) const {
  if (r >= size_) throw InvalidArgument("relation index outside the universe");
}

RelationIndex Calculus::relate(const EOPoint& a, const EOPoint& b) const {
  switch (id_) {
    case CalculusId::Opra: return index_of(relate_opra(a, b, m_, tol_));
    case CalculusId::Eopra:
      return index_of(relate_eopra(a, b, classifier_, tol_));
    case CalculusId::Star:
      return index_of(relate_star(a.position(), b.position(), frame_, tol_));
    case CalculusId::Estar:
      return index_of(relate_estar(a, b, frame_, classifier_, tol_));
  }
  return 0;
}

RelationIndex Calculus::converse(RelationIndex r) const {
  switch (id_) {
    case CalculusId::Opra: return index_of(converse_opra(opra(r)));
    case CalculusId::Eopra: return index_of(converse_eopra(eopra(r)));
    case CalculusId::Star:
    case CalculusId::Estar: return index_of(converse_star(star(r)));
  }
  return r;
}

RelationIndex Calculus::identity() const {
  switch (id_) {
    case CalculusId::Opra: return index_of(OpraRelation::same(m_, 0));
    case CalculusId::Eopra: return index_of(EopraRelation::same(m_, 0));
    case CalculusId::Star:
    case CalculusId::Estar:
      return index_of(StarRelation::same(m_, elevated()));
  }
  return 0;
}

bool Calculus::is_same_position(RelationIndex r) const {
  check(r);
  if (oriented()) {
    return r >= size_ - static_cast<std::size_t>(m_.sectors());
  }
  return r == size_ - 1;
}

OpraRelation Calculus::opra(RelationIndex r) const {
  if (id_ != CalculusId::Opra) throw InvalidArgument("not an OPRA calculus");
  check(r);
  const auto n = static_cast<RelationIndex>(m_.sectors());
  if (r >= n * n) return OpraRelation::same(m_, static_cast<int>(r - n * n));
  return OpraRelation::different(m_, static_cast<int>(r / n),
                                 static_cast<int>(r % n));
}

EopraRelation Calculus::eopra(RelationIndex r) const {
  if (id_ != CalculusId::Eopra) throw InvalidArgument("not an EOPRA calculus");
  check(r);
  const auto n = static_cast<RelationIndex>(m_.sectors());
  const auto c = static_cast<RelationIndex>(m_.distance_classes());
  const RelationIndex different = n * n * c * c;
  if (r >= different) {
    return EopraRelation::same(m_, static_cast<int>(r - different));
  }
  const auto l = static_cast<int>(r % c);
  r /= c;
  const auto j = static_cast<int>(r % n);
  r /= n;
  const auto k = static_cast<int>(r % c);
  const auto i = static_cast<int>(r / c);
  return EopraRelation::different(m_, i, k, j, l);
}

StarRelation Calculus::star(RelationIndex r) const {
  if (oriented()) throw InvalidArgument("not a star calculus");
  check(r);
  if (r == size_ - 1) return StarRelation::same(m_, elevated());
  if (!elevated()) return StarRelation::different(m_, static_cast<int>(r));
  const auto c = static_cast<RelationIndex>(m_.distance_classes());
  return StarRelation::different_elevated(m_, static_cast<int>(r / (c * c)),
                                          static_cast<int>((r / c) % c),
                                          static_cast<int>(r % c));
}

RelationIndex Calculus::index_of(const OpraRelation& r) const {
  if (id_ != CalculusId::Opra || !(r.m == m_)) {
    throw InvalidArgument("relation does not belong to this calculus");
  }
  const auto n = static_cast<RelationIndex>(m_.sectors());
  if (r.kind == RelationKind::SamePosition) {
    return n * n + static_cast<RelationIndex>(r.s);
  }
  return static_cast<RelationIndex>(r.i) * n + static_cast<RelationIndex>(r.j);
}

RelationIndex Calculus::index_of(const EopraRelation& r) const {
  if (id_ != CalculusId::Eopra || !(r.m == m_)) {
    throw InvalidArgument("relation does not belong to this calculus");
  }
  const auto n = static_cast<RelationIndex>(m_.sectors());
  const auto c = static_cast<RelationIndex>(m_.distance_classes());
  if (r.kind == RelationKind::SamePosition) {
    return n * n * c * c + static_cast<RelationIndex>(r.s);
  }
  return ((static_cast<RelationIndex>(r.i) * c + static_cast<RelationIndex>(r.k)) *
              n + static_cast<RelationIndex>(r.j)) * c +
         static_cast<RelationIndex>(r.l);
}

RelationIndex Calculus::index_of(const StarRelation& r) const {
  if (oriented() || r.elevated != elevated() || !(r.m == m_)) {
    throw InvalidArgument("relation does not belong to this calculus");
  }
  if (r.kind == RelationKind::SamePosition) {
    return static_cast<RelationIndex>(size_ - 1);
  }
  if (!elevated()) return static_cast<RelationIndex>(r.d);
  const auto c = static_cast<RelationIndex>(m_.distance_classes());
  return (static_cast<RelationIndex>(r.d) * c + static_cast<RelationIndex>(r.k)) *
             c + static_cast<RelationIndex>(r.l);
}

std::string Calculus::format(RelationIndex r) const {
  switch (id_) {
    case CalculusId::Opra: return format_opra(opra(r));
    case CalculusId::Eopra: return format_eopra(eopra(r));
    case CalculusId::Star:
    case CalculusId::Estar: return format_star(star(r));
  }
  return {};
}

RelationIndex Calculus::parse(std::string_view text) const {
  Granularity parsed_m{1};
  RelationIndex index = 0;
  switch (id_) {
    case CalculusId::Opra: {
      const OpraRelation r = parse_opra(text);
      parsed_m = r.m;
      if (r.m == m_) index = index_of(r);
      break;
    }
    case CalculusId::Eopra: {
      const EopraRelation r = parse_eopra(text);
      parsed_m = r.m;
      if (r.m == m_) index = index_of(r);
      break;
    }
    case CalculusId::Star:
    case CalculusId::Estar: {
      const StarRelation r = parse_star(text);
      if (r.elevated != elevated()) {
        throw ParseError(0, 1, "expected a " + std::string(calculus_name(id_)) +
                                   " relation");
      }
      parsed_m = r.m;
      if (r.m == m_) index = index_of(r);
      break;
    }
  }
  if (!(parsed_m == m_)) {
    throw ParseError(0, 1, "relation granularity " +
                               std::to_string(parsed_m.value()) +
                               " does not match m = " +
                               std::to_string(m_.value()));
  }
  return index;
}

ParsedRelation parse_relation_auto(std::string_view text) {
  CalculusId id = CalculusId::Opra;
  if (text.starts_with("estar-")) {
    id = CalculusId::Estar;
  } else if (text.starts_with("star-")) {
    id = CalculusId::Star;
  } else if (text.find('.') != std::string_view::npos) {
    id = CalculusId::Eopra;
  }
  // The granularity is only known after a first parse.
  Granularity m{1};
  switch (id) {
    case CalculusId::Opra: m = parse_opra(text).m; break;
    case CalculusId::Eopra: m = parse_eopra(text).m; break;
    case CalculusId::Star:
    case CalculusId::Estar: m = parse_star(text).m; break;
  }
  Calculus calculus(id, m);
  const RelationIndex index = calculus.parse(text);
  return ParsedRelation{std::move(calculus), index};
}

}  // namespace qsr
