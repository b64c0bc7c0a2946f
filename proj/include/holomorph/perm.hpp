#ifndef HOLOMORPH_PERM_HPP_
#define HOLOMORPH_PERM_HPP_

#include <numeric>
#include <span>
#include <vector>

#include "holomorph/base.hpp"
#include "holomorph/group_ops.hpp"

namespace holomorph {

// A permutation of {0..n-1}, stored as its image array. Composition is
// (f o g)(x) = f(g(x)) throughout.
using Perm = std::vector<elem_t>;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(std::span<const elem_t> map, int n) {
  if (static_cast<int>(map.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (elem_t v : map) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Perm compose_perm(const Perm& f, const Perm& g) {
  Perm h(g.size());
  for (size_t x = 0; x < g.size(); ++x) h[x] = f[g[x]];
  return h;
}

inline Perm inverse_perm(const Perm& f) {
  Perm h(f.size());
  for (size_t x = 0; x < f.size(); ++x) h[f[x]] = static_cast<elem_t>(x);
  return h;
}

// Order of a permutation: lcm of its cycle lengths.
inline u64 perm_order(std::span<const elem_t> f) {
  std::vector<char> done(f.size(), 0);
  u64 ord = 1;
  for (size_t x = 0; x < f.size(); ++x) {
    if (done[x]) continue;
    u64 len = 0;
    size_t y = x;
    do {
      done[y] = 1;
      y = f[y];
      ++len;
    } while (y != x);
    ord = std::lcm(ord, len);
  }
  return ord;
}

// Left regular representation: x -> g*x.
template <GroupModel G>
Perm lambda_rep(const G& grp, int g) {
  Perm p(grp.size());
  for (int x = 0; x < grp.size(); ++x) p[x] = static_cast<elem_t>(grp.mul(g, x));
  return p;
}

// Right regular representation: x -> x*g^-1.
template <GroupModel G>
Perm rho_rep(const G& grp, int g) {
  const int gi = grp.inv(g);
  Perm p(grp.size());
  for (int x = 0; x < grp.size(); ++x) p[x] = static_cast<elem_t>(grp.mul(x, gi));
  return p;
}

// x -> x^-1.
template <GroupModel G>
Perm inversion_perm(const G& grp) {
  Perm p(grp.size());
  for (int x = 0; x < grp.size(); ++x) p[x] = static_cast<elem_t>(grp.inv(x));
  return p;
}

// x -> x^ell; a bijection exactly when gcd(ell, exp(G)) = 1.
template <GroupModel G>
Perm power_perm(const G& grp, u64 ell) {
  if (std::gcd(ell, group_exponent(grp)) != 1)
    throw InputError("power_perm: exponent not coprime to the group exponent");
  Perm p(grp.size());
  for (int x = 0; x < grp.size(); ++x) p[x] = static_cast<elem_t>(pow_elt(grp, x, ell));
  if (!is_permutation(p, grp.size()))
    throw std::logic_error("power_perm: map is not bijective");
  return p;
}

}  // namespace holomorph

#endif  // HOLOMORPH_PERM_HPP_
