#ifndef STM_IO_HPP
#define STM_IO_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stm/convert.hpp"
#include "stm/distance.hpp"
#include "stm/error.hpp"
#include "stm/graph.hpp"
#include "stm/matmul.hpp"
#include "stm/sequence.hpp"
#include "stm/tree_model.hpp"

namespace stm::io {

// Whitespace-separated tokens per line; blank lines and '#' comments are skipped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
      tokens_.clear();
      std::istringstream split(text);
      for (std::string tok; split >> tok;) tokens_.push_back(tok);
      if (!tokens_.empty()) return true;
    }
    tokens_.clear();
    return false;
  }

  void expect_line(const char* what) {
    if (!next()) throw ParseError(line_, std::string("unexpected end of input, expected ") + what);
  }

  void expect_end() {
    if (next()) throw ParseError(line_, "unexpected trailing content");
  }

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::size_t line() const noexcept { return line_; }

  void expect_count(std::size_t count) const {
    if (tokens_.size() != count) {
      throw ParseError(line_, "expected " + std::to_string(count) + " fields, got " + std::to_string(tokens_.size()));
    }
  }

  std::int64_t integer(std::size_t i) const {
    const std::string& tok = tokens_.at(i);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError(line_, "'" + tok + "' is not an integer");
    return value;
  }

  std::int32_t int32(std::size_t i) const {
    const auto v = integer(i);
    if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max()) {
      throw ParseError(line_, "value out of range");
    }
    return static_cast<std::int32_t>(v);
  }

  std::size_t count(std::size_t i) const {
    const auto v = integer(i);
    if (v < 0) throw ParseError(line_, "count must be nonnegative");
    return static_cast<std::size_t>(v);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::vector<std::string> tokens_;
};

// ---- graph: "n m", then "u v" with u < v

inline Graph read_graph(std::istream& in) {
  LineReader r(in);
  r.expect_line("header 'n m'");
  r.expect_count(2);
  const std::size_t n = r.count(0);
  const std::size_t m = r.count(1);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.expect_line("edge 'u v'");
    r.expect_count(2);
    const Vertex u = r.int32(0);
    const Vertex v = r.int32(1);
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
      throw ParseError(r.line(), "vertex out of range");
    }
    if (u == v) throw ParseError(r.line(), "self-loop");
    edges.emplace_back(u, v);
  }
  r.expect_end();
  Graph g(n, edges);
  if (g.edge_count() != m) throw ParseError(r.line(), "edge list contains duplicates");
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// ---- signed tree model: "n", internal nodes "id left right" (root last), then "A x y" / "B x y"

inline SignedTreeModel read_stm(std::istream& in, bool strict = true) {
  LineReader r(in);
  r.expect_line("leaf count");
  r.expect_count(1);
  const std::size_t n = r.count(0);
  if (n == 0) throw ParseError(r.line(), "leaf count must be positive");
  std::vector<InternalNode> internals;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    r.expect_line("internal node 'id left right'");
    r.expect_count(3);
    internals.push_back({r.int32(0), r.int32(1), r.int32(2)});
  }
  std::vector<NodePair> neg, pos;
  std::map<PairRef, std::size_t> line_of;
  while (r.next()) {
    r.expect_count(3);
    const std::string& tag = r.tokens()[0];
    if (tag != "A" && tag != "B") throw ParseError(r.line(), "expected 'A' or 'B', got '" + tag + "'");
    auto& list = tag == "A" ? neg : pos;
    line_of[{tag == "A" ? Sign::Negative : Sign::Positive, list.size()}] = r.line();
    list.push_back({r.int32(1), r.int32(2)});
  }
  SignedTreeModel stm;
  try {
    stm = SignedTreeModel(n, std::move(internals), std::move(neg), std::move(pos));
  } catch (const InputError& e) {
    throw ValidationError(0, e.what());
  }
  if (auto report = validate(stm, strict); !report) {
    std::size_t line = 0;
    for (const auto& ref : report.pairs) line = std::max(line, line_of[ref]);
    throw ValidationError(line, report.message);
  }
  return stm;
}

inline void write_stm(std::ostream& out, const SignedTreeModel& stm) {
  out << stm.leaf_count() << '\n';
  InternalNode root_rec{};
  for (const auto& rec : stm.internal_nodes()) {
    if (rec.id == stm.root()) {
      root_rec = rec;
      continue;
    }
    out << rec.id << ' ' << rec.left << ' ' << rec.right << '\n';
  }
  if (root_rec.id != 0) out << root_rec.id << ' ' << root_rec.left << ' ' << root_rec.right << '\n';
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    for (NodePair p : stm.pairs(s)) out << sign_letter(s) << ' ' << p.x << ' ' << p.y << '\n';
  }
}

// ---- interval biclique partition: "n k", the order (vertex at each position), then "a b c d"

inline IntervalBicliquePartition read_ibp(std::istream& in) {
  LineReader r(in);
  r.expect_line("header 'n k'");
  r.expect_count(2);
  const std::size_t n = r.count(0);
  const std::size_t k = r.count(1);
  std::vector<Vertex> seq;
  if (n > 0) {
    r.expect_line("order");
    r.expect_count(n);
    for (std::size_t i = 0; i < n; ++i) seq.push_back(r.int32(i));
  }
  IntervalBicliquePartition ibp;
  try {
    ibp.order = LinearOrder::from_sequence(std::move(seq));
  } catch (const InputError& e) {
    throw ValidationError(r.line(), e.what());
  }
  for (std::size_t i = 0; i < k; ++i) {
    r.expect_line("biclique 'a b c d'");
    r.expect_count(4);
    const Biclique q{r.int32(0), r.int32(1), r.int32(2), r.int32(3)};
    if (!(1 <= q.a && q.a <= q.b && q.b < q.c && q.c <= q.d && static_cast<std::size_t>(q.d) <= n)) {
      throw ValidationError(r.line(), "biclique must satisfy 1 <= a <= b < c <= d <= n");
    }
    ibp.bicliques.push_back(q);
  }
  r.expect_end();
  return ibp;
}

inline void write_ibp(std::ostream& out, const IntervalBicliquePartition& ibp) {
  out << ibp.size() << ' ' << ibp.bicliques.size() << '\n';
  const auto& seq = ibp.order.sequence();
  for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? " " : "") << seq[i];
  if (!seq.empty()) out << '\n';
  for (const Biclique& q : ibp.bicliques) out << q.a << ' ' << q.b << ' ' << q.c << ' ' << q.d << '\n';
}

// ---- construction sequence: "M i j" | "R+ i j" | "R- i j"

inline ConstructionSequence read_cseq(std::istream& in) {
  LineReader r(in);
  ConstructionSequence seq;
  while (r.next()) {
    r.expect_count(3);
    const std::string& tag = r.tokens()[0];
    CsKind kind;
    if (tag == "M") {
      kind = CsKind::Merge;
    } else if (tag == "R+") {
      kind = CsKind::ResolvePositive;
    } else if (tag == "R-") {
      kind = CsKind::ResolveNegative;
    } else {
      throw ParseError(r.line(), "unknown operation '" + tag + "'");
    }
    seq.ops.push_back({kind, r.int32(1), r.int32(2)});
  }
  return seq;
}

inline void write_cseq(std::ostream& out, const ConstructionSequence& seq) {
  for (const CsOp& op : seq.ops) {
    const char* tag = op.kind == CsKind::Merge ? "M" : op.kind == CsKind::ResolvePositive ? "R+" : "R-";
    out << tag << ' ' << op.a << ' ' << op.b << '\n';
  }
}

// ---- sd-degeneracy sequence: "u v" per step

inline SdDegenSequence read_sdseq(std::istream& in) {
  LineReader r(in);
  SdDegenSequence seq;
  while (r.next()) {
    r.expect_count(2);
    seq.pairs.push_back({r.int32(0), r.int32(1)});
  }
  return seq;
}

inline void write_sdseq(std::ostream& out, const SdDegenSequence& seq) {
  for (const auto& [u, v] : seq.pairs) out << u << ' ' << v << '\n';
}

// ---- DAG compression: "nodes vertices", then "E parent child" and "C x y"

inline DagCompression read_dag(std::istream& in) {
  LineReader r(in);
  r.expect_line("header 'nodes vertices'");
  r.expect_count(2);
  DagCompression dc;
  dc.node_count = r.count(0);
  dc.vertex_count = r.count(1);
  while (r.next()) {
    r.expect_count(3);
    const std::string& tag = r.tokens()[0];
    if (tag == "E") {
      dc.arcs.emplace_back(r.int32(1), r.int32(2));
    } else if (tag == "C") {
      dc.compressed.emplace_back(r.int32(1), r.int32(2));
    } else {
      throw ParseError(r.line(), "expected 'E' or 'C', got '" + tag + "'");
    }
  }
  try {
    check_dag(dc);
  } catch (const InputError& e) {
    throw ValidationError(0, e.what());
  }
  return dc;
}

inline void write_dag(std::ostream& out, const DagCompression& dc) {
  out << dc.node_count << ' ' << dc.vertex_count << '\n';
  for (auto [p, c] : dc.arcs) out << "E " << p << ' ' << c << '\n';
  for (auto [x, y] : dc.compressed) out << "C " << x << ' ' << y << '\n';
}

// ---- matrices: "n", then n rows

inline GroupMatrix<std::int64_t> read_matrix(std::istream& in) {
  LineReader r(in);
  r.expect_line("matrix size");
  r.expect_count(1);
  const std::size_t n = r.count(0);
  GroupMatrix<std::int64_t> m(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    r.expect_line("matrix row");
    r.expect_count(n);
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = r.integer(j);
  }
  r.expect_end();
  return m;
}

inline void write_matrix(std::ostream& out, const GroupMatrix<std::int64_t>& m) {
  out << m.n << '\n';
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) out << (j ? " " : "") << m.at(i, j);
    out << '\n';
  }
}

inline void write_distance_matrix(std::ostream& out, const DistanceMatrix& d) {
  for (const auto& row : d) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << (row[j] == kUnreachable ? -1 : row[j]);
    out << '\n';
  }
}

inline void write_spt(std::ostream& out, const ShortestPathTree& t) {
  for (std::size_t i = 0; i < t.dist.size(); ++i) {
    out << i + 1 << ' ' << (t.dist[i] == kUnreachable ? -1 : t.dist[i]) << ' ' << t.parent[i] << '\n';
  }
}

// Round-trip helpers.
template <class T, class Writer>
std::string to_text(const T& value, Writer write) {
  std::ostringstream os;
  write(os, value);
  return os.str();
}

template <class Reader>
auto from_text(const std::string& text, Reader read) {
  std::istringstream is(text);
  return read(is);
}

}  // namespace stm::io

#endif  // STM_IO_HPP
