#include "qsr/relation_set.hpp"

#include <algorithm>
#include <bit>

#include "qsr/error.hpp"

namespace qsr {

RelationSet::RelationSet(const Calculus& calculus, bool full)
    : id_(calculus.id()),
      m_(calculus.granularity().value()),
      universe_(calculus.size()) {
  if (universe_ > kMaxUniverse) {
    throw UnsupportedConfiguration("relation universe too large for sets");
  }
  words_.assign(words_for(universe_), full ? ~std::uint64_t{0} : 0);
  if (full && universe_ % 64 != 0) {
    words_.back() = (std::uint64_t{1} << (universe_ % 64)) - 1;
  }
}

RelationSet RelationSet::empty(const Calculus& calculus) {
  return RelationSet(calculus, false);
}

RelationSet RelationSet::universal(const Calculus& calculus) {
  return RelationSet(calculus, true);
}

RelationSet RelationSet::singleton(const Calculus& calculus, RelationIndex r) {
  RelationSet out(calculus, false);
  out.insert(r);
  return out;
}

void RelationSet::check_same(const RelationSet& other) const {
  if (!same_universe(other)) {
    throw InvalidArgument("relation sets belong to different calculi");
  }
}

void RelationSet::insert(RelationIndex r) {
  if (r >= universe_) throw InvalidArgument("relation index outside the universe");
  words_[r / 64] |= std::uint64_t{1} << (r % 64);
}

void RelationSet::erase(RelationIndex r) {
  if (r >= universe_) throw InvalidArgument("relation index outside the universe");
  words_[r / 64] &= ~(std::uint64_t{1} << (r % 64));
}

bool RelationSet::contains(RelationIndex r) const {
  if (r >= universe_) return false;
  return (words_[r / 64] >> (r % 64)) & 1U;
}

std::size_t RelationSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool RelationSet::is_empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool RelationSet::is_universal() const { return count() == universe_; }

bool RelationSet::is_subset_of(const RelationSet& other) const {
  check_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::vector<RelationIndex> RelationSet::members() const {
  std::vector<RelationIndex> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<RelationIndex>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

bool RelationSet::intersect_with(const RelationSet& other) {
  check_same(other);
  bool changed = false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t next = words_[w] & other.words_[w];
    changed |= next != words_[w];
    words_[w] = next;
  }
  return changed;
}

void RelationSet::unite_with(const RelationSet& other) {
  check_same(other);
  unite_with_words(other.words_);
}

void RelationSet::unite_with_words(std::span<const std::uint64_t> words) {
  if (words.size() != words_.size()) {
    throw InvalidArgument("word count does not match the universe");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= words[w];
}

RelationSet RelationSet::converse(const Calculus& calculus) const {
  if (!matches(calculus)) throw InvalidArgument("calculus mismatch");
  RelationSet out(calculus, false);
  for (RelationIndex r : members()) out.insert(calculus.converse(r));
  return out;
}

std::string RelationSet::format(const Calculus& calculus) const {
  if (!matches(calculus)) throw InvalidArgument("calculus mismatch");
  std::vector<std::string> names;
  for (RelationIndex r : members()) names.push_back(calculus.format(r));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (const auto& n : names) out += " " + n;
  out += " }";
  return out;
}

}  // namespace qsr
