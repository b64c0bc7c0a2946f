#ifndef HOLOMORPH_GROUP_OPS_HPP_
#define HOLOMORPH_GROUP_OPS_HPP_

#include <algorithm>
#include <numeric>
#include <vector>

#include "holomorph/base.hpp"

namespace holomorph {

// x^e by binary powering; e = 0 gives the identity.
template <GroupModel G>
int pow_elt(const G& g, int x, u64 e) {
  int r = 0;
  int b = x;
  while (e > 0) {
    if (e & 1) r = g.mul(r, b);
    b = g.mul(b, b);
    e >>= 1;
  }
  return r;
}

template <GroupModel G>
u64 element_order(const G& g, int x) {
  u64 ord = 1;
  int t = x;
  while (t != 0) {
    t = g.mul(t, x);
    ++ord;
  }
  return ord;
}

template <GroupModel G>
u64 group_exponent(const G& g) {
  u64 e = 1;
  for (int x = 0; x < g.size(); ++x) e = std::lcm(e, element_order(g, x));
  return e;
}

template <GroupModel G>
bool is_abelian(const G& g) {
  const int n = g.size();
  for (int x = 1; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

template <GroupModel G>
int commutator(const G& g, int x, int y) {
  return g.mul(g.mul(g.mul(x, y), g.inv(x)), g.inv(y));
}

// Subgroup generated by gens, as a sorted element list.
template <GroupModel G>
std::vector<elem_t> subgroup_closure(const G& g, const std::vector<int>& gens) {
  std::vector<char> seen(g.size(), 0);
  std::vector<elem_t> out;
  seen[0] = 1;
  out.push_back(0);
  for (size_t i = 0; i < out.size(); ++i) {
    for (int gen : gens) {
      int z = g.mul(out[i], gen);
      if (!seen[z]) {
        seen[z] = 1;
        out.push_back(static_cast<elem_t>(z));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <GroupModel G>
bool generates(const G& g, const std::vector<int>& gens) {
  return static_cast<int>(subgroup_closure(g, gens).size()) == g.size();
}

// Small generating set: repeatedly adjoin the least element outside the
// subgroup generated so far.
template <GroupModel G>
std::vector<int> greedy_generators(const G& g) {
  std::vector<int> gens;
  std::vector<elem_t> have{0};
  while (static_cast<int>(have.size()) < g.size()) {
    int next = -1;
    int idx = 0;
    for (int x = 0; x < g.size(); ++x) {
      if (idx < static_cast<int>(have.size()) && have[idx] == x) {
        ++idx;
        continue;
      }
      next = x;
      break;
    }
    gens.push_back(next);
    have = subgroup_closure(g, gens);
  }
  return gens;
}

}  // namespace holomorph

#endif  // HOLOMORPH_GROUP_OPS_HPP_
