#pragma once

#include <filesystem>
#include <iosfwd>

#include "qsr/composition.hpp"

namespace qsr {

// Line-oriented ASCII table format:
//
//   #qsr-table v1
//   calculus <id>
//   m <int>
//   density <int>
//   seed <int>
//   symmetrized <true|false>
//   <R> <S> -> <T1> <T2> ...      one line per ordered base pair
//   #end
//
// Entry lines are sorted lexicographically, as are the relations within a
// line.

void write_table(std::ostream& out, const CompositionTable& table);
/// Throws ParseError (with line numbers) on malformed input.
CompositionTable read_table(std::istream& in);

void save_table(const std::filesystem::path& path, const CompositionTable& table);
/// Throws std::runtime_error when the file cannot be opened.
CompositionTable load_table(const std::filesystem::path& path);

}  // namespace qsr
