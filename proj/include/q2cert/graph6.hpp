#ifndef Q2CERT_GRAPH6_HPP
#define Q2CERT_GRAPH6_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "q2cert/graph.hpp"

namespace q2cert {

/// Malformed graph6 input; `offset()` is the byte position of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Decodes one graph6 word. A leading ">>graph6<<" header and trailing
/// whitespace are stripped.
Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph& g);

}  // namespace q2cert

#endif
