#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qsr/eopra.hpp"
#include "qsr/geometry.hpp"
#include "qsr/granularity.hpp"
#include "qsr/opra.hpp"
#include "qsr/star.hpp"

namespace qsr {

enum class CalculusId { Opra, Eopra, Star, Estar };

std::string_view calculus_name(CalculusId id);
/// Accepts opra, eopra, star, estar. Throws InvalidArgument otherwise.
CalculusId parse_calculus_id(std::string_view name);

/// Dense index of a base relation within one calculus' universe. The order
/// matches enumerate_opra / enumerate_eopra / enumerate_star.
using RelationIndex = std::uint32_t;

/// One calculus at one granularity, viewed as a finite universe of base
/// relations addressed by RelationIndex. This is the interface composition
/// and constraint solving are written against.
class Calculus {
 public:
  Calculus(CalculusId id, Granularity m, TolerancePolicy tol = {});
  /// Star calculi with a custom frame.
  Calculus(CalculusId id, StarFrame frame, TolerancePolicy tol = {});

  CalculusId id() const { return id_; }
  Granularity granularity() const { return m_; }
  const TolerancePolicy& tolerance() const { return tol_; }
  const StarFrame& frame() const { return frame_; }
  bool elevated() const {
    return id_ == CalculusId::Eopra || id_ == CalculusId::Estar;
  }
  bool oriented() const {
    return id_ == CalculusId::Opra || id_ == CalculusId::Eopra;
  }

  std::size_t size() const { return size_; }

  RelationIndex relate(const EOPoint& a, const EOPoint& b) const;
  RelationIndex converse(RelationIndex r) const;
  /// Same position, same heading (or plain "same" for star calculi).
  RelationIndex identity() const;
  bool is_same_position(RelationIndex r) const;

  OpraRelation opra(RelationIndex r) const;
  EopraRelation eopra(RelationIndex r) const;
  StarRelation star(RelationIndex r) const;
  RelationIndex index_of(const OpraRelation& r) const;
  RelationIndex index_of(const EopraRelation& r) const;
  RelationIndex index_of(const StarRelation& r) const;

  std::string format(RelationIndex r) const;
  /// Throws ParseError for bad syntax or a relation of another
  /// calculus/granularity.
  RelationIndex parse(std::string_view text) const;

  bool same_universe(const Calculus& other) const {
    return id_ == other.id_ && m_ == other.m_;
  }

 private:
  void check(RelationIndex r) const;

  CalculusId id_;
  Granularity m_;
  TolerancePolicy tol_;
  StarFrame frame_;
  DistanceClassifier classifier_;
  std::size_t size_ = 0;
};

/// Guesses the calculus from relation syntax: `star-`/`estar-` prefixes,
/// dotted EOPRA tokens, otherwise OPRA. Same-position tokens `m:s<k>` read as
/// OPRA.
struct ParsedRelation {
  Calculus calculus;
  RelationIndex index;
};
ParsedRelation parse_relation_auto(std::string_view text);

}  // namespace qsr
