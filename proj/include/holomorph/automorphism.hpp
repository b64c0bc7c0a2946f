#ifndef HOLOMORPH_AUTOMORPHISM_HPP_
#define HOLOMORPH_AUTOMORPHISM_HPP_

#include <numeric>
#include <span>
#include <vector>

#include "holomorph/base.hpp"
#include "holomorph/group_ops.hpp"
#include "holomorph/group_table.hpp"
#include "holomorph/perm.hpp"

namespace holomorph {

// An automorphism of a finite group, stored as its permutation of indices.
struct Automorphism {
  Perm map;

  int size() const { return static_cast<int>(map.size()); }
  int operator()(int x) const { return map[x]; }
  bool operator==(const Automorphism&) const = default;
};

template <GroupModel G>
bool is_homomorphism(const G& grp, std::span<const elem_t> map) {
  const int n = grp.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (map[grp.mul(x, y)] != grp.mul(map[x], map[y])) return false;
  return true;
}

template <GroupModel G>
bool is_automorphism(const G& grp, std::span<const elem_t> map) {
  return is_permutation(map, grp.size()) && map[0] == 0 && is_homomorphism(grp, map);
}

inline Automorphism identity_aut(int n) { return Automorphism{identity_perm(n)}; }

inline Automorphism compose(const Automorphism& f, const Automorphism& g) {
  return Automorphism{compose_perm(f.map, g.map)};
}

inline Automorphism inverse(const Automorphism& f) { return Automorphism{inverse_perm(f.map)}; }

inline u64 aut_order(const Automorphism& f) { return perm_order(f.map); }

// x -> g*x*g^-1.
template <GroupModel G>
Automorphism conjugation_aut(const G& grp, int g) {
  Perm p(grp.size());
  const int gi = grp.inv(g);
  for (int x = 0; x < grp.size(); ++x)
    p[x] = static_cast<elem_t>(grp.mul(grp.mul(g, x), gi));
  return Automorphism{std::move(p)};
}

// The power map a -> a^ell on an abelian group with gcd(ell, exp(A)) = 1.
inline Automorphism power_map_aut(const GroupTable& a, u64 ell) {
  if (!a.abelian()) throw InputError("power_map_aut: group is not abelian");
  if (std::gcd(ell, a.exponent()) != 1)
    throw InputError("power_map_aut: exponent not coprime to the group exponent");
  Perm p(a.size());
  for (int x = 0; x < a.size(); ++x) p[x] = static_cast<elem_t>(pow_elt(a, x, ell));
  Automorphism f{std::move(p)};
  if (!is_automorphism(a, f.map))
    throw std::logic_error("power_map_aut: power map failed the automorphism check");
  return f;
}

}  // namespace holomorph

#endif  // HOLOMORPH_AUTOMORPHISM_HPP_
