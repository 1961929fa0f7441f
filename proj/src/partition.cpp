#include "q2cert/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace q2cert {

namespace {

void check_sequence(const std::vector<int>& t) {
  if (t.empty()) throw HypothesisError("empty size sequence");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1) throw HypothesisError("sizes must be positive");
    if (i > 0 && t[i] > t[i - 1]) throw HypothesisError("sizes must be non-increasing");
  }
}

BalancedPartition balance(const std::vector<int>& t) {
  const int k = static_cast<int>(t.size());
  BalancedPartition p;
  auto put = [&](int i, bool to_a) {
    (to_a ? p.a : p.b).push_back(i);
    (to_a ? p.sum_a : p.sum_b) += t[i];
  };
  if (t.front() <= 2) {
    const int m = static_cast<int>(std::count(t.begin(), t.end(), 2));
    if (m % 2 == 0 || k % 2 == 0) {
      for (int i = 0; i < k; ++i) put(i, i % 2 == 0);
    } else {
      for (int i = 0; i < k - 1; ++i) put(i, i % 2 == 0);
      put(k - 1, false);
    }
    return p;
  }
  const int x = static_cast<int>(std::count(t.begin(), t.end(), 1));
  const int y = static_cast<int>(std::count_if(t.begin(), t.end(), [](int v) { return v > 2; }));
  if (x < y + 2) {
    throw LemmaContradiction("x >= y + 2 fails: x = " + std::to_string(x) + ", y = " + std::to_string(y));
  }
  std::vector<int> reduced;
  for (int i = 0; i < y; ++i) reduced.push_back(t[i] - 1);
  for (int i = y; i < k - y; ++i) reduced.push_back(t[i]);
  const BalancedPartition sub = balance(reduced);
  for (int i : sub.a) put(i, true);
  for (int i : sub.b) put(i, false);
  for (int i = k - y; i < k; ++i) put(i, p.sum_a <= p.sum_b);
  return p;
}

}  // namespace

BalancedPartition balance_partition(const std::vector<int>& t) {
  check_sequence(t);
  const int n = std::accumulate(t.begin(), t.end(), 0);
  const int excess = n - static_cast<int>(t.size());
  if (2 * excess > n - 2) throw HypothesisError("sum(t_i - 1) exceeds n/2 - 1");
  BalancedPartition p = balance(t);
  std::sort(p.a.begin(), p.a.end());
  std::sort(p.b.begin(), p.b.end());
  if (p.diff() > 1) throw LemmaContradiction("balanced partition has difference " + std::to_string(p.diff()));
  return p;
}

ExhaustivePartition brute_force_partition(const std::vector<int>& t) {
  const int k = static_cast<int>(t.size());
  if (k > 24) throw std::invalid_argument("brute force limited to 24 parts");
  if (k == 0) throw std::invalid_argument("empty sequence");
  const int n = std::accumulate(t.begin(), t.end(), 0);
  std::uint32_t best_mask = 0;
  int best_diff = n + 1;
  // Part 0 always goes to A.
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (k - 1)); ++mask) {
    const std::uint32_t full = (mask << 1) | 1U;
    int sa = 0;
    for (int i = 0; i < k; ++i) {
      if ((full >> i) & 1U) sa += t[i];
    }
    const int d = std::abs(2 * sa - n);
    if (d < best_diff) {
      best_diff = d;
      best_mask = full;
      if (d == 0) break;
    }
  }
  ExhaustivePartition out;
  for (int i = 0; i < k; ++i) {
    if ((best_mask >> i) & 1U) {
      out.best.a.push_back(i);
      out.best.sum_a += t[i];
    } else {
      out.best.b.push_back(i);
      out.best.sum_b += t[i];
    }
  }
  out.feasible = out.best.diff() <= 1;
  return out;
}

namespace {

JoinDecomposition decompose(const Graph& g) {
  const int n = g.order();
  const Graph gbar = complement(g);
  if (gbar.size() > n / 2 - 1) throw HypothesisError("complement has more than floor(n/2) - 1 edges");

  if (n % 2 == 1) {
    std::vector<int> isolated;
    for (int v = n - 1; v >= 0 && isolated.size() < 2; --v) {
      if (gbar.degree(v) == 0) isolated.push_back(v);
    }
    if (isolated.size() < 2) throw LemmaContradiction("odd order with fewer than two complement-isolated vertices");
    const int w = isolated[0], z = isolated[1];
    JoinDecomposition inner = decompose(remove_vertex(g, w));
    auto lift = [&](VertexSet s) {
      VertexSet out = 0;
      for (int v : members(s)) out |= bit(v < w ? v : v + 1);
      return out;
    };
    return {JoinDecomposition::Route::OddViaJdup, lift(inner.part_a), lift(inner.part_b), w, z};
  }

  const auto comps = components(gbar);
  std::vector<int> t;
  for (const auto& c : comps) t.push_back(static_cast<int>(c.size()));
  const BalancedPartition p = balance_partition(t);
  if (p.sum_a != p.sum_b) throw LemmaContradiction("even order but unequal part sums");
  const int k = static_cast<int>(comps.size());
  if (k < 2 || t[k - 1] != 1 || t[k - 2] != 1) {
    throw LemmaContradiction("last two complement components are not singletons");
  }
  JoinDecomposition d;
  VertexSet a = 0, b = 0;
  bool last_in_a = false, second_in_a = false;
  for (int i : p.a) {
    a |= set_of(comps[i]);
    last_in_a |= i == k - 1;
    second_in_a |= i == k - 2;
  }
  for (int i : p.b) b |= set_of(comps[i]);
  if (last_in_a == second_in_a) {
    const VertexSet moved = bit(comps[k - 1].front());
    if (last_in_a) {
      a &= ~moved;
      b |= moved;
    } else {
      b &= ~moved;
      a |= moved;
    }
    d.route = JoinDecomposition::Route::OrderDiff2;
  }
  d.part_a = a;
  d.part_b = b;
  if (!induced(g, a).graph.connected() || !induced(g, b).graph.connected()) {
    throw LemmaContradiction("join part is disconnected");
  }
  return d;
}

}  // namespace

JoinDecomposition join_decomposition(const Graph& g) {
  if (g.order() < 3) throw HypothesisError("order below 3");
  return decompose(g);
}

}  // namespace q2cert
