#include "qsr/csp.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "qsr/error.hpp"

namespace qsr {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace

ConstraintNetwork::ConstraintNetwork(Calculus calculus)
    : calculus_(std::move(calculus)) {}

std::size_t ConstraintNetwork::add_node(std::string name) {
  if (!valid_name(name)) throw InvalidArgument("invalid node name '" + name + "'");
  if (std::find(nodes_.begin(), nodes_.end(), name) != nodes_.end()) {
    throw InvalidArgument("duplicate node '" + name + "'");
  }
  nodes_.push_back(std::move(name));
  return nodes_.size() - 1;
}

std::size_t ConstraintNetwork::node_index(std::string_view name) const {
  const auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) {
    throw InvalidArgument("undeclared node '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

void ConstraintNetwork::check_pair(std::size_t from, std::size_t to) const {
  if (from >= nodes_.size() || to >= nodes_.size()) {
    throw InvalidArgument("node index out of range");
  }
  if (from == to) throw InvalidArgument("constraints need two distinct nodes");
}

RelationSet ConstraintNetwork::constraint(std::size_t from, std::size_t to) const {
  check_pair(from, to);
  const auto it = constraints_.find({std::min(from, to), std::max(from, to)});
  if (it == constraints_.end()) return RelationSet::universal(calculus_);
  return from < to ? it->second : it->second.converse(calculus_);
}

bool ConstraintNetwork::has_constraint(std::size_t from, std::size_t to) const {
  check_pair(from, to);
  return constraints_.contains({std::min(from, to), std::max(from, to)});
}

void ConstraintNetwork::set_constraint(std::size_t from, std::size_t to,
                                       const RelationSet& rel) {
  check_pair(from, to);
  if (!rel.matches(calculus_)) {
    throw InvalidArgument("constraint does not match the network calculus");
  }
  const Pair key{std::min(from, to), std::max(from, to)};
  constraints_.insert_or_assign(key, from < to ? rel : rel.converse(calculus_));
}

void ConstraintNetwork::add_constraint(std::size_t from, std::size_t to,
                                       const RelationSet& rel) {
  RelationSet merged = constraint(from, to);
  if (!rel.matches(calculus_)) {
    throw InvalidArgument("constraint does not match the network calculus");
  }
  merged.intersect_with(rel);
  set_constraint(from, to, merged);
}

std::string_view status_name(ClosureStatus status) {
  return status == ClosureStatus::Inconsistent ? "inconsistent"
                                               : "consistent-so-far";
}

ClosureResult algebraic_closure(ConstraintNetwork net,
                                const CompositionTable& table) {
  if (!net.calculus().same_universe(table.calculus())) {
    throw InvalidArgument("table calculus does not match the network");
  }
  const std::size_t n = net.size();
  std::vector<Refinement> trace;
  for (const auto& [pair, rel] : net.stored()) {
    if (rel.is_empty()) {
      return {std::move(net), ClosureStatus::Inconsistent, std::move(trace)};
    }
  }

  std::set<ConstraintNetwork::Pair> queue;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) queue.insert({i, j});

  // C_ab <- C_ab & composed. Returns false once the network is inconsistent.
  auto refine = [&](std::size_t a, std::size_t b, const RelationSet& composed) {
    RelationSet current = net.constraint(a, b);
    const std::size_t before = current.count();
    if (!current.intersect_with(composed)) return true;
    const std::size_t after = current.count();
    trace.push_back({a, b, before, after});
    net.set_constraint(a, b, current);
    queue.insert({std::min(a, b), std::max(a, b)});
    return after > 0;
  };

  while (!queue.empty()) {
    const auto [i, j] = *queue.begin();
    queue.erase(queue.begin());
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const RelationSet ij = net.constraint(i, j);
      if (!refine(i, k, compose_lookup(table, ij, net.constraint(j, k))) ||
          !refine(k, j, compose_lookup(table, net.constraint(k, i), ij))) {
        return {std::move(net), ClosureStatus::Inconsistent, std::move(trace)};
      }
    }
  }
  return {std::move(net), ClosureStatus::ConsistentSoFar, std::move(trace)};
}

ClosureStatus scenario_check(const ConstraintNetwork& net,
                             const CompositionTable& table) {
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!net.has_constraint(i, j) || net.constraint(i, j).count() != 1) {
        throw InvalidArgument("scenario constraint between '" + net.nodes()[i] +
                              "' and '" + net.nodes()[j] +
                              "' is not a singleton");
      }
    }
  }
  return algebraic_closure(net, table).status;
}

ConstraintNetwork parse_network(std::string_view text) {
  std::optional<ConstraintNetwork> net;
  bool header = false;
  bool ended = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (!ended && std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto semi = line.find(';'); semi != std::string_view::npos) {
      line = line.substr(0, semi);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    auto fail = [&](std::size_t column, const std::string& what) -> ParseError {
      return ParseError(line_no, column, what);
    };
    const std::string_view head = tokens[0].text;

    if (!header) {
      if (tokens.size() != 2 || head != "#qsr-net" || tokens[1].text != "v1") {
        throw fail(tokens[0].column, "expected '#qsr-net v1'");
      }
      header = true;
    } else if (head == "#end") {
      ended = true;
    } else if (head == "calculus") {
      if (net) throw fail(tokens[0].column, "calculus declared twice");
      if (tokens.size() != 3) throw fail(tokens[0].column, "expected 'calculus <id> <m>'");
      CalculusId id;
      try {
        id = parse_calculus_id(tokens[1].text);
      } catch (const InvalidArgument& e) {
        throw fail(tokens[1].column, e.what());
      }
      int m = 0;
      std::istringstream ss{std::string(tokens[2].text)};
      if (!(ss >> m) || !ss.eof() || m < 1 || m > Granularity::kMax) {
        throw fail(tokens[2].column, "bad granularity");
      }
      net.emplace(Calculus(id, Granularity(m)));
    } else if (!net) {
      throw fail(tokens[0].column, "expected 'calculus <id> <m>' before nodes");
    } else if (head == "node") {
      if (tokens.size() != 2) throw fail(tokens[0].column, "expected 'node <name>'");
      try {
        net->add_node(std::string(tokens[1].text));
      } catch (const InvalidArgument& e) {
        throw fail(tokens[1].column, e.what());
      }
    } else if (head == "constraint") {
      if (tokens.size() < 5 || tokens[3].text != "{" || tokens.back().text != "}") {
        throw fail(tokens[0].column, "expected 'constraint <a> <b> { <rel>... }'");
      }
      std::size_t a = 0;
      std::size_t b = 0;
      try {
        a = net->node_index(tokens[1].text);
      } catch (const InvalidArgument& e) {
        throw fail(tokens[1].column, e.what());
      }
      try {
        b = net->node_index(tokens[2].text);
      } catch (const InvalidArgument& e) {
        throw fail(tokens[2].column, e.what());
      }
      if (a == b) throw fail(tokens[2].column, "constraint needs two distinct nodes");
      RelationSet rel = RelationSet::empty(net->calculus());
      for (std::size_t t = 4; t + 1 < tokens.size(); ++t) {
        try {
          rel.insert(net->calculus().parse(tokens[t].text));
        } catch (const ParseError& e) {
          throw fail(tokens[t].column + e.column() - 1, e.message());
        }
      }
      net->add_constraint(a, b, rel);
    } else {
      throw fail(tokens[0].column, "unknown directive '" + std::string(head) + "'");
    }
  }
  if (!header) throw ParseError(line_no, 1, "expected '#qsr-net v1'");
  if (!net) throw ParseError(line_no, 1, "missing 'calculus <id> <m>'");
  if (!ended) throw ParseError(line_no, 1, "missing '#end'");
  return std::move(*net);
}

std::string serialize_network(const ConstraintNetwork& net) {
  const Calculus& calculus = net.calculus();
  std::vector<std::size_t> order(net.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.nodes()[a] < net.nodes()[b];
  });

  std::ostringstream out;
  out << "#qsr-net v1\n"
      << "calculus " << calculus_name(calculus.id()) << " "
      << calculus.granularity().value() << "\n";
  for (std::size_t i : order) out << "node " << net.nodes()[i] << "\n";
  for (std::size_t x = 0; x < order.size(); ++x) {
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const std::size_t a = order[x];
      const std::size_t b = order[y];
      if (!net.has_constraint(a, b)) continue;
      const RelationSet rel = net.constraint(a, b);
      if (rel.is_universal()) continue;
      out << "constraint " << net.nodes()[a] << " " << net.nodes()[b] << " "
          << rel.format(calculus) << "\n";
    }
  }
  out << "#end\n";
  return out.str();
}

}  // namespace qsr
