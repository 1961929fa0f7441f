#include "q2cert/graph6.hpp"

namespace q2cert {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("graph6 parse error at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

Graph parse_graph6(std::string_view text) {
  constexpr std::string_view kHeader = ">>graph6<<";
  std::size_t pos = 0;
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }
  auto value_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("truncated input", i);
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("character out of range", i);
    return c - 63;
  };
  if (pos >= text.size()) throw ParseError("empty graph6 word", pos);
  long n = value_at(pos);
  ++pos;
  if (n == 63) {
    if (pos < text.size() && text[pos] == '~') throw ParseError("orders above 258047 unsupported", pos);
    n = 0;
    for (int k = 0; k < 3; ++k) n = (n << 6) | value_at(pos++);
  }
  if (n > Graph::kMaxVertices) throw ParseError("more than 64 vertices", 0);
  Graph g(static_cast<int>(n));
  const std::size_t bits = static_cast<std::size_t>(n * (n - 1) / 2);
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() < pos + bytes) throw ParseError("truncated bit field", text.size());
  if (text.size() > pos + bytes) throw ParseError("trailing data", pos + bytes);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int word = value_at(pos + k / 6);
      if ((word >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (; k < bytes * 6; ++k) {
    if ((value_at(pos + k / 6) >> (5 - k % 6)) & 1) throw ParseError("nonzero padding bits", pos + k / 6);
  }
  return g;
}

std::string write_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int word = 0, filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      word = (word << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + word));
        word = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (word << (6 - filled))));
  return out;
}

}  // namespace q2cert
