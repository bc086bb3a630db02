#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsr/calculus.hpp"

namespace qsr {

/// A general relation: a set of base relations of one calculus at one
/// granularity, stored as a bitset over the calculus universe.
class RelationSet {
 public:
  /// Largest universe a RelationSet will allocate for.
  static constexpr std::size_t kMaxUniverse = std::size_t{1} << 24;

  static RelationSet empty(const Calculus& calculus);
  static RelationSet universal(const Calculus& calculus);
  static RelationSet singleton(const Calculus& calculus, RelationIndex r);

  CalculusId calculus_id() const { return id_; }
  int m() const { return m_; }
  std::size_t universe() const { return universe_; }
  bool matches(const Calculus& calculus) const {
    return id_ == calculus.id() && m_ == calculus.granularity().value();
  }
  bool same_universe(const RelationSet& other) const {
    return id_ == other.id_ && m_ == other.m_;
  }

  void insert(RelationIndex r);
  void erase(RelationIndex r);
  bool contains(RelationIndex r) const;
  std::size_t count() const;
  bool is_empty() const;
  bool is_universal() const;
  bool is_subset_of(const RelationSet& other) const;

  std::vector<RelationIndex> members() const;

  /// Returns true when the set changed.
  bool intersect_with(const RelationSet& other);
  void unite_with(const RelationSet& other);
  void unite_with_words(std::span<const std::uint64_t> words);

  RelationSet converse(const Calculus& calculus) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  /// `{ r1 r2 ... }` with members sorted by their text form.
  std::string format(const Calculus& calculus) const;

  friend bool operator==(const RelationSet&, const RelationSet&) = default;

 private:
  RelationSet(const Calculus& calculus, bool full);
  void check_same(const RelationSet& other) const;

  CalculusId id_;
  int m_;
  std::size_t universe_;
  std::vector<std::uint64_t> words_;
};

inline std::size_t words_for(std::size_t universe) { return (universe + 63) / 64; }

}  // namespace qsr
