#include "qsr/table_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "qsr/error.hpp"

namespace qsr {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::string expect_line() {
    std::string line;
    if (!next(line)) throw ParseError(number_ + 1, 1, "unexpected end of file");
    return line;
  }

  /// Reads `<key> <value>` and returns the value token.
  std::string expect_field(std::string_view key) {
    const std::string line = expect_line();
    const auto tokens = split(line);
    if (tokens.size() != 2 || tokens[0].text != key) {
      throw ParseError(number_, 1, "expected '" + std::string(key) + " <value>'");
    }
    return std::string(tokens[1].text);
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

template <typename T>
T parse_number(const std::string& text, std::size_t line) {
  std::istringstream ss(text);
  T value{};
  ss >> value;
  if (!ss || !ss.eof()) throw ParseError(line, 1, "bad number '" + text + "'");
  return value;
}

}  // namespace

void write_table(std::ostream& out, const CompositionTable& table) {
  const Calculus& calculus = table.calculus();
  const std::size_t n = table.size();
  std::vector<std::string> names(n);
  for (std::size_t r = 0; r < n; ++r) {
    names[r] = calculus.format(static_cast<RelationIndex>(r));
  }
  std::vector<RelationIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](RelationIndex a, RelationIndex b) { return names[a] < names[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t p = 0; p < n; ++p) rank[order[p]] = p;

  const TableMeta& meta = table.meta();
  out << "#qsr-table v1\n"
      << "calculus " << calculus_name(table.calculus_id()) << "\n"
      << "m " << table.granularity().value() << "\n"
      << "density " << meta.density << "\n"
      << "seed " << meta.seed << "\n"
      << "symmetrized " << (meta.symmetrized ? "true" : "false") << "\n";
  std::string line;
  for (RelationIndex r : order) {
    for (RelationIndex s : order) {
      auto members = table.entry(r, s).members();
      std::sort(members.begin(), members.end(),
                [&](RelationIndex a, RelationIndex b) { return rank[a] < rank[b]; });
      line.clear();
      line += names[r];
      line += ' ';
      line += names[s];
      line += " ->";
      for (RelationIndex t : members) {
        line += ' ';
        line += names[t];
      }
      line += '\n';
      out << line;
    }
  }
  out << "#end\n";
}

CompositionTable read_table(std::istream& in) {
  LineReader reader(in);
  if (reader.expect_line() != "#qsr-table v1") {
    throw ParseError(reader.number(), 1, "expected '#qsr-table v1'");
  }
  CalculusId id;
  try {
    id = parse_calculus_id(reader.expect_field("calculus"));
  } catch (const InvalidArgument& e) {
    throw ParseError(reader.number(), 10, e.what());
  }
  const std::string m_text = reader.expect_field("m");
  const int mv = parse_number<int>(m_text, reader.number());
  if (mv < 1 || mv > Granularity::kMax) {
    throw ParseError(reader.number(), 3, "granularity out of range");
  }
  TableMeta meta;
  const std::string density_text = reader.expect_field("density");
  meta.density = parse_number<int>(density_text, reader.number());
  const std::string seed_text = reader.expect_field("seed");
  meta.seed = parse_number<std::uint64_t>(seed_text, reader.number());
  const std::string sym = reader.expect_field("symmetrized");
  if (sym != "true" && sym != "false") {
    throw ParseError(reader.number(), 13, "expected true or false");
  }
  meta.symmetrized = sym == "true";

  const Calculus calculus(id, Granularity(mv));
  const std::size_t n = calculus.size();
  if (n * n * words_for(n) * sizeof(std::uint64_t) > kMaxTableBytes) {
    throw UnsupportedConfiguration("table exceeds the size limit");
  }
  std::unordered_map<std::string, RelationIndex> lookup;
  for (std::size_t r = 0; r < n; ++r) {
    lookup.emplace(calculus.format(static_cast<RelationIndex>(r)),
                   static_cast<RelationIndex>(r));
  }
  auto resolve = [&](const Token& token, std::size_t line_no) {
    const auto it = lookup.find(std::string(token.text));
    if (it != lookup.end()) return it->second;
    try {
      return calculus.parse(token.text);
    } catch (const ParseError& e) {
      throw ParseError(line_no, token.column + e.column() - 1, e.message());
    }
  };

  const std::size_t stride = words_for(n);
  std::vector<std::uint64_t> words(n * n * stride, 0);
  std::vector<bool> seen(n * n, false);
  std::size_t filled = 0;
  std::string line;
  bool ended = false;
  while (reader.next(line)) {
    if (line == "#end") {
      ended = true;
      break;
    }
    const auto tokens = split(line);
    if (tokens.size() < 3 || tokens[2].text != "->") {
      throw ParseError(reader.number(), 1, "expected '<R> <S> -> <T>...'");
    }
    const RelationIndex r = resolve(tokens[0], reader.number());
    const RelationIndex s = resolve(tokens[1], reader.number());
    const std::size_t cell = static_cast<std::size_t>(r) * n + s;
    if (seen[cell]) {
      throw ParseError(reader.number(), 1, "duplicate entry for this pair");
    }
    seen[cell] = true;
    ++filled;
    for (std::size_t t = 3; t < tokens.size(); ++t) {
      const RelationIndex rel = resolve(tokens[t], reader.number());
      words[cell * stride + rel / 64] |= std::uint64_t{1} << (rel % 64);
    }
  }
  if (!ended) throw ParseError(reader.number() + 1, 1, "missing '#end'");
  if (filled != n * n) {
    throw ParseError(reader.number(), 1,
                     "table has " + std::to_string(filled) + " of " +
                         std::to_string(n * n) + " entries");
  }
  return CompositionTable(id, Granularity(mv), meta, std::move(words));
}

void save_table(const std::filesystem::path& path, const CompositionTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_table(out, table);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

CompositionTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_table(in);
}

}  // namespace qsr
