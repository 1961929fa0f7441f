#ifndef Q2CERT_FAMILIES_HPP
#define Q2CERT_FAMILIES_HPP

#include <string>

#include "q2cert/graph.hpp"

namespace q2cert {

/// Named graph families the decision procedure dispatches on. Parameters use
/// the conventions of the constructors below; degenerate members that
/// coincide with a more general family (W(1,.,.) is a path or double star) are
/// reported under that family.
struct SpecialFamily {
  enum class Kind {
    None,
    Complete,
    Empty,
    C4,
    Path,          // a = order
    DoubleStar,    // S_{a,b}, a >= b >= 0
    WStar,         // W(a,0,1), a >= 2
    WStarPlus,     // W(a,1,1), a >= 2
    SabUnionK1,    // S_{a,b} plus an isolated vertex, a >= b
    WPlusUnionK1,  // W(a,1,1) plus an isolated vertex, a >= 2
    BoxProduct,    // K_a x K_2, a >= 2
  };
  Kind kind = Kind::None;
  int a = 0;
  int b = 0;

  friend bool operator==(const SpecialFamily&, const SpecialFamily&) = default;
};

std::string to_string(const SpecialFamily& f);

/// Most specific family label in the order
/// C4 > WPlusUnionK1 > SabUnionK1 > WStarPlus > WStar > DoubleStar > Path >
/// BoxProduct > Complete > Empty > None.
SpecialFamily recognize(const Graph& g);

/// S_{a,b}: centers 0 and 1, leaves 2..a+1 on 0, the rest on 1.
Graph double_star(int a, int b);
/// W(k,0,1): center 0, middles 1..k, leaves k+1..2k with middle i on leaf i+k.
Graph w_star(int k);
/// W(k,1,1): w_star(k) plus leaf 2k+1 on the center.
Graph w_star_plus(int k);
/// K_s x K_2: cliques 0..s-1 and s..2s-1, matching i ~ i+s.
Graph box_product(int s);
/// Adds one isolated vertex (last label).
Graph with_isolated(const Graph& g);

}  // namespace q2cert

#endif
