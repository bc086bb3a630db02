#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qsr/calculus.hpp"
#include "qsr/relation_set.hpp"

namespace qsr {

/// How densely each open qualitative dimension is sampled when building
/// representative configurations.
struct SamplingPlan {
  int density = 3;
  std::uint64_t seed = 42;
  double unbounded_cap = 8.0;

  void validate() const;
};

/// Relative positions within an open interval, as fractions in (0, 1). The
/// sequence for a given seed is prefix-stable: a lower density always yields
/// a prefix of a higher one, so sampled tables only grow with density.
std::vector<double> open_fractions(const SamplingPlan& plan);

/// A metric witness of one base relation: relate(a, b) equals the relation.
struct Configuration {
  EOPoint a;
  EOPoint b;
};

/// Representative configurations of `r`, normalized so that `a` sits at the
/// origin with heading 0 and elevation 1. Boundary dimensions (rays,
/// boundary circles) are pinned exactly; open dimensions are sampled
/// `plan.density` times, and unbounded ones get one extra far (or near)
/// sample at 4 * unbounded_cap times the boundary.
std::vector<Configuration> representatives(const Calculus& calculus,
                                           RelationIndex r,
                                           const SamplingPlan& plan);
std::vector<Configuration> representatives(const OpraRelation& r,
                                           const SamplingPlan& plan);
std::vector<Configuration> representatives(const EopraRelation& r,
                                           const SamplingPlan& plan);
std::vector<Configuration> representatives(const StarRelation& r,
                                           const SamplingPlan& plan);

struct TableMeta {
  int density = 3;
  std::uint64_t seed = 42;
  double unbounded_cap = 8.0;
  TolerancePolicy tolerance;
  int generator_version = 1;
  /// True when triangle closure had to add entries after sampling.
  bool symmetrized = false;
};

/// Composition table over the base relations of one calculus. Entry (r, s)
/// holds every relation seen between A and C in the sampled triangles with
/// r(A, B) and s(B, C).
class CompositionTable {
 public:
  /// `words` holds size()^2 bitsets, row-major in (r, s).
  CompositionTable(CalculusId id, Granularity m, TableMeta meta,
                   std::vector<std::uint64_t> words);

  CalculusId calculus_id() const { return id_; }
  Granularity granularity() const { return m_; }
  const TableMeta& meta() const { return meta_; }
  /// Calculus object using the tolerance the table was generated with.
  const Calculus& calculus() const { return calculus_; }
  std::size_t size() const { return size_; }

  std::span<const std::uint64_t> entry_words(RelationIndex r,
                                             RelationIndex s) const;
  RelationSet entry(RelationIndex r, RelationIndex s) const;
  bool entry_contains(RelationIndex r, RelationIndex s, RelationIndex t) const;

  /// Union of row r: r composed with the universal relation.
  const RelationSet& row_union(RelationIndex r) const { return row_union_[r]; }
  /// Union of column s: the universal relation composed with s.
  const RelationSet& column_union(RelationIndex s) const {
    return column_union_[s];
  }

  std::span<const std::uint64_t> raw_words() const { return words_; }

  friend bool operator==(const CompositionTable& a, const CompositionTable& b) {
    return a.id_ == b.id_ && a.m_ == b.m_ && a.words_ == b.words_;
  }

 private:
  CalculusId id_;
  Granularity m_;
  TableMeta meta_;
  Calculus calculus_;
  std::size_t size_;
  std::size_t stride_;
  std::vector<std::uint64_t> words_;
  std::vector<RelationSet> row_union_;
  std::vector<RelationSet> column_union_;
};

/// Largest table, in bytes of bitset storage, the generator will build.
inline constexpr std::size_t kMaxTableBytes = std::size_t{1} << 30;

/// Generates the table with OpenMP across rows. Supports opra, eopra and the
/// default-frame star calculi. Throws UnsupportedConfiguration otherwise or
/// when the table would exceed kMaxTableBytes.
CompositionTable compose_tablegen(CalculusId id, Granularity m,
                                  const SamplingPlan& plan,
                                  const TolerancePolicy& tol = {});

/// Single-threaded reference generator built directly on apply_similarity
/// and the calculus relate functions. Produces the same table as
/// compose_tablegen.
CompositionTable compose_tablegen_serial(CalculusId id, Granularity m,
                                         const SamplingPlan& plan,
                                         const TolerancePolicy& tol = {});

/// The sampled triangles alone, before symmetrize(). compose_tablegen is
/// symmetrize(sample_table(...)).
CompositionTable sample_table(CalculusId id, Granularity m,
                              const SamplingPlan& plan,
                              const TolerancePolicy& tol = {});
CompositionTable sample_table_serial(CalculusId id, Granularity m,
                                     const SamplingPlan& plan,
                                     const TolerancePolicy& tol = {});

/// Union of the entries over all base pairs of r x s.
RelationSet compose_lookup(const CompositionTable& table, const RelationSet& r,
                           const RelationSet& s);

struct Violation {
  std::uint64_t trial;
  EOPoint a;
  EOPoint b;
  EOPoint c;
  RelationIndex ab;
  RelationIndex bc;
  RelationIndex ac;
};

struct VerificationReport {
  std::uint64_t trials = 0;
  std::vector<Violation> violations;
};

/// Samples random triples (positions uniform in [-10, 10]^2, headings
/// uniform, elevations log-uniform in [0.1, 10]) and records every triple
/// whose A-C relation is missing from entry(rel(A, B), rel(B, C)). Trial t
/// depends only on (seed, t), so results do not depend on thread count.
VerificationReport verify_table(const CompositionTable& table,
                                std::uint64_t trials, std::uint64_t seed);
VerificationReport verify_table_serial(const CompositionTable& table,
                                       std::uint64_t trials,
                                       std::uint64_t seed);

/// The three random eo-points of verification trial `trial`.
std::array<EOPoint, 3> verification_triple(std::uint64_t seed,
                                           std::uint64_t trial);

/// (r, s, t) with t in entry(r, s) but converse(t) missing from
/// entry(converse(s), converse(r)).
struct DualityReport {
  std::vector<std::array<RelationIndex, 3>> missing;
  bool ok() const { return missing.empty(); }
};

DualityReport check_duality(const CompositionTable& table);
bool converse_table_check(const CompositionTable& table);

/// Closes the table under relabeling of triangle corners: a fact t in
/// entry(r, s) also yields conv(t) in entry(conv(s), conv(r)) and the four
/// rotated facts. This includes the converse duality. Sets
/// meta().symmetrized when anything was added.
CompositionTable symmetrize(const CompositionTable& table);

}  // namespace qsr
