#ifndef HOLOMORPH_HOL_HPP_
#define HOLOMORPH_HOL_HPP_

#include <optional>
#include <unordered_set>
#include <vector>

#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/perm.hpp"

namespace holomorph {

// Witness that f lies in Hol(G) = rho(G) x| Aut(G): f(x) = alpha(x) * g with
// g = f(identity), i.e. f = rho(g^-1) o alpha.
struct HolDecomposition {
  int g = 0;
  Automorphism alpha;
};

// f is in Hol(G) iff x -> f(x) * f(0)^-1 is an automorphism.
template <GroupModel G>
std::optional<HolDecomposition> hol_membership(const G& grp, const Perm& f) {
  const int n = grp.size();
  const int g = f[0];
  const int gi = grp.inv(g);
  Perm alpha(n);
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    int v = grp.mul(f[x], gi);
    if (seen[v]) return std::nullopt;
    seen[v] = 1;
    alpha[x] = static_cast<elem_t>(v);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (alpha[grp.mul(x, y)] != grp.mul(alpha[x], alpha[y])) return std::nullopt;
  return HolDecomposition{g, Automorphism{std::move(alpha)}};
}

// Generators of Hol(G): the rho-images of a generating set of G together
// with generators of Aut(G) (automorphisms are the identity-fixing elements
// of Hol(G)).
struct HolGenSet {
  std::vector<Perm> gens;
};

template <GroupModel G>
HolGenSet hol_genset(const G& grp, const std::vector<int>& group_gens,
                     const std::vector<Automorphism>& aut_gens) {
  HolGenSet h;
  for (int g : group_gens) h.gens.push_back(rho_rep(grp, g));
  for (const auto& a : aut_gens) h.gens.push_back(a.map);
  return h;
}

// f normalizes Hol(G) iff it conjugates each generator back into Hol(G);
// finiteness upgrades containment to equality.
template <GroupModel G>
bool nhol_membership(const G& grp, const Perm& f, const HolGenSet& hol) {
  const Perm finv = inverse_perm(f);
  for (const Perm& h : hol.gens) {
    Perm conj = compose_perm(f, compose_perm(h, finv));
    if (!hol_membership(grp, conj)) return false;
  }
  return true;
}

// Smallest l >= 1 with f^l in Hol(G). Requires f in NHol(G) and a bound at
// least the true order.
template <GroupModel G>
u64 coset_order_in_T(const G& grp, const Perm& f, u64 bound) {
  Perm power = f;
  for (u64 l = 1; l <= bound; ++l) {
    if (hol_membership(grp, power)) return l;
    power = compose_perm(power, f);
  }
  throw std::logic_error("coset_order_in_T: no power within bound " + std::to_string(bound) +
                         " lies in Hol(G)");
}

template <GroupModel G>
u64 default_coset_bound(const G& grp) {
  u64 maxord = 1;
  for (int x = 0; x < grp.size(); ++x) maxord = std::max(maxord, element_order(grp, x));
  return static_cast<u64>(grp.size()) * maxord;
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 0x811c9dc5u;
    for (elem_t v : p) h = (h ^ static_cast<size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

// Full closure of a permutation set under composition; throws once the
// closure grows past cap. Oracle- and test-scale only.
inline std::vector<Perm> perm_closure(const std::vector<Perm>& gens, size_t cap) {
  if (gens.empty()) return {};
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> out;
  out.push_back(identity_perm(static_cast<int>(gens[0].size())));
  seen.insert(out[0]);
  for (size_t i = 0; i < out.size(); ++i) {
    for (const Perm& g : gens) {
      Perm prod = compose_perm(out[i], g);
      if (seen.insert(prod).second) {
        if (out.size() >= cap) throw CapExceeded("perm_closure: cap exceeded");
        out.push_back(std::move(prod));
      }
    }
  }
  return out;
}

}  // namespace holomorph

#endif  // HOLOMORPH_HOL_HPP_
