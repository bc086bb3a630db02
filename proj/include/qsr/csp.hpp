#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsr/calculus.hpp"
#include "qsr/composition.hpp"
#include "qsr/relation_set.hpp"

namespace qsr {

/// Binary qualitative constraint network. Each unordered node pair stores at
/// most one RelationSet, oriented from the lower to the higher node index;
/// absent pairs stand for the universal relation.
class ConstraintNetwork {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  explicit ConstraintNetwork(Calculus calculus);

  const Calculus& calculus() const { return calculus_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Names are nonempty identifiers of letters, digits, '_' and '-'.
  /// Throws InvalidArgument for invalid or duplicate names.
  std::size_t add_node(std::string name);
  /// Throws InvalidArgument for unknown names.
  std::size_t node_index(std::string_view name) const;

  /// Constraint from `from` to `to`; the converse of the stored set when
  /// read against its orientation.
  RelationSet constraint(std::size_t from, std::size_t to) const;
  bool has_constraint(std::size_t from, std::size_t to) const;
  /// Replaces the constraint.
  void set_constraint(std::size_t from, std::size_t to, const RelationSet& rel);
  /// Intersects the existing constraint with `rel`.
  void add_constraint(std::size_t from, std::size_t to, const RelationSet& rel);

  const std::map<Pair, RelationSet>& stored() const { return constraints_; }

 private:
  void check_pair(std::size_t from, std::size_t to) const;

  Calculus calculus_;
  std::vector<std::string> nodes_;
  std::map<Pair, RelationSet> constraints_;
};

enum class ClosureStatus { ConsistentSoFar, Inconsistent };

std::string_view status_name(ClosureStatus status);

struct Refinement {
  std::size_t from;
  std::size_t to;
  std::size_t before;
  std::size_t after;
};

struct ClosureResult {
  ConstraintNetwork network;
  ClosureStatus status;
  std::vector<Refinement> trace;
};

/// Path consistency: repeatedly C_ij <- C_ij & (C_ik o C_kj) until nothing
/// changes or a constraint becomes empty. Pairs are processed from an
/// ordered queue, so the trace is deterministic.
ClosureResult algebraic_closure(ConstraintNetwork net,
                                const CompositionTable& table);

/// Every node pair must carry a singleton. Consistent-so-far means the
/// closure kept all singletons; this is necessary, not sufficient, for
/// global consistency.
ClosureStatus scenario_check(const ConstraintNetwork& net,
                             const CompositionTable& table);

// Network file format:
//
//   #qsr-net v1
//   calculus <id> <m>
//   node <name>
//   constraint <a> <b> { <rel> <rel> ... }
//   #end
//
// ';' starts a comment running to the end of the line.

/// Throws ParseError with line and column.
ConstraintNetwork parse_network(std::string_view text);

/// Canonical text: nodes sorted by name, one line per non-universal pair
/// oriented by name order, relations sorted.
std::string serialize_network(const ConstraintNetwork& net);

}  // namespace qsr
