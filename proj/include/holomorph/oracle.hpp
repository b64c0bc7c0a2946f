#ifndef HOLOMORPH_ORACLE_HPP_
#define HOLOMORPH_ORACLE_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "holomorph/aut_enum.hpp"
#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/group_table.hpp"
#include "holomorph/hol.hpp"
#include "holomorph/parallel.hpp"
#include "holomorph/perm.hpp"

namespace holomorph {

namespace oracle_detail {

inline u64 factorial_or_cap(int n, u64 cap) {
  u64 f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

// Enumerates identity-fixing permutations with f(1) = first in lexicographic
// order, invoking visit(f) on each complete one.
template <class Visit>
void scan_identity_fixing(int n, int first, Visit&& visit) {
  Perm f(n);
  f[0] = 0;
  if (n == 1) {
    visit(f);
    return;
  }
  f[1] = static_cast<elem_t>(first);
  std::vector<elem_t> rest;
  for (int v = 1; v < n; ++v)
    if (v != first) rest.push_back(static_cast<elem_t>(v));
  if (rest.empty()) {
    visit(f);
    return;
  }
  do {
    for (size_t i = 0; i < rest.size(); ++i) f[i + 2] = rest[i];
    visit(f);
  } while (std::next_permutation(rest.begin(), rest.end()));
}

}  // namespace oracle_detail

// All automorphisms by exhaustive scan over identity-fixing bijections,
// in lexicographic order with subtree pruning: images are assigned one
// element at a time, and every product relation whose three participants are
// already assigned is checked immediately.
inline std::vector<Automorphism> brute_aut(const GroupTable& g, u64 scan_cap = 40'000'000) {
  const int n = g.size();
  if (oracle_detail::factorial_or_cap(n - 1, scan_cap) > scan_cap)
    throw CapExceeded("brute_aut: (n-1)! exceeds the scan cap");

  // pairs_by_product[z]: all (x, y) with x*y = z.
  std::vector<std::vector<std::pair<elem_t, elem_t>>> pairs(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      pairs[g.mul(x, y)].push_back({static_cast<elem_t>(x), static_cast<elem_t>(y)});

  std::vector<Automorphism> out;
  Perm img(n, -1);
  std::vector<char> used(n, 0);
  img[0] = 0;
  used[0] = 1;

  auto consistent = [&](int t) {
    // products x*y = t with x, y assigned
    for (auto [x, y] : pairs[t])
      if (img[x] >= 0 && img[y] >= 0 && g.mul(img[x], img[y]) != img[t]) return false;
    // products involving t as an operand whose result is assigned
    for (int y = 0; y <= t; ++y) {
      if (img[y] < 0) continue;
      int p1 = g.mul(t, y);
      if (p1 <= t && img[p1] >= 0 && g.mul(img[t], img[y]) != img[p1]) return false;
      int p2 = g.mul(y, t);
      if (p2 <= t && img[p2] >= 0 && g.mul(img[y], img[t]) != img[p2]) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int t) -> void {
    if (t == n) {
      out.push_back(Automorphism{img});
      return;
    }
    for (int c = 1; c < n; ++c) {
      if (used[c] || g.order(c) != g.order(t)) continue;
      img[t] = static_cast<elem_t>(c);
      used[c] = 1;
      if (consistent(t)) self(self, t + 1);
      used[c] = 0;
      img[t] = -1;
    }
  };
  rec(rec, 1);
  return out;
}

// Order and element orders of T(G) = NHol(G)/Hol(G), by scanning
// identity-fixing permutations: Hol(G) is transitive, so every coset of
// Hol(G) in NHol(G) contains an identity-fixing representative.
struct TStructure {
  u64 t_order = 0;
  std::vector<u64> element_orders;  // sorted multiset
  u64 pi_minus1_coset_order = 0;
  u64 aut_order = 0;

  bool elementary_abelian_2() const {
    for (u64 o : element_orders)
      if (o > 2) return false;
    return true;
  }
};

inline TStructure brute_nhol(const GroupTable& g, u64 scan_cap = 40'000'000,
                             int threads = 1) {
  const int n = g.size();
  if (oracle_detail::factorial_or_cap(n - 1, scan_cap) > scan_cap)
    throw CapExceeded("brute_nhol: (n-1)! exceeds the scan cap");

  auto auts = enumerate_aut(g);
  HolGenSet hol = hol_genset(g, greedy_generators(g), aut_generators(auts));

  // Members of NHol(G) fixing the identity, scanned in lexicographic order
  // partitioned by the image of point 1; the conjugation test aborts on the
  // first generator that leaves Hol(G).
  std::vector<std::vector<Perm>> found(std::max(threads, 1));
  if (n == 1) {
    found[0].push_back(identity_perm(1));
  } else {
    run_chunked(n - 1, threads, [&](int worker, long begin, long end) {
      for (long v = begin; v < end; ++v) {
        oracle_detail::scan_identity_fixing(n, static_cast<int>(v) + 1, [&](const Perm& f) {
          if (nhol_membership(g, f, hol)) found[worker].push_back(f);
        });
      }
    });
  }
  std::vector<Perm> members;
  for (auto& part : found)
    for (auto& f : part) members.push_back(std::move(f));

  // Group the members into cosets of Hol(G).
  std::vector<Perm> reps;
  for (const Perm& f : members) {
    bool fresh = true;
    for (const Perm& r : reps) {
      if (hol_membership(g, compose_perm(inverse_perm(r), f))) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(f);
  }

  TStructure t;
  t.aut_order = auts.size();
  t.t_order = reps.size();
  if (members.size() != t.t_order * auts.size())
    throw std::logic_error("brute_nhol: identity-fixing member count is not |T| * |Aut|");
  for (const Perm& r : reps) t.element_orders.push_back(coset_order_in_T(g, r, t.t_order));
  std::sort(t.element_orders.begin(), t.element_orders.end());
  t.pi_minus1_coset_order = coset_order_in_T(g, inversion_perm(g), 2);
  return t;
}

// Counts the regular subgroups N of Perm(G) with N isomorphic to G (order
// spectra suffice at this size) and normalizer exactly Hol(G), and compares
// the count with |T(G)|. Groups of order at most 6 are 2-generated, so
// closures of element pairs reach every candidate subgroup.
inline bool regular_subgroup_check(const GroupTable& g) {
  const int n = g.size();
  if (n > 6) throw CapExceeded("regular_subgroup_check: order above 6");

  std::vector<Perm> sym;
  Perm p = identity_perm(n);
  std::vector<elem_t> tail(p.begin(), p.end());
  std::sort(tail.begin(), tail.end());
  do {
    sym.push_back(Perm(tail.begin(), tail.end()));
  } while (std::next_permutation(tail.begin(), tail.end()));

  auto auts = enumerate_aut(g);
  HolGenSet holgens = hol_genset(g, greedy_generators(g), aut_generators(auts));
  std::vector<Perm> hol = perm_closure(holgens.gens, 1'000'000);
  std::set<Perm> hol_set(hol.begin(), hol.end());

  std::multiset<u64> g_spectrum;
  for (int x = 0; x < n; ++x) g_spectrum.insert(g.order(x));

  std::set<std::vector<Perm>> subgroups;
  for (const Perm& a : sym) {
    for (const Perm& b : sym) {
      std::vector<Perm> cl;
      try {
        cl = perm_closure({a, b}, static_cast<size_t>(n));
      } catch (const CapExceeded&) {
        continue;
      }
      if (static_cast<int>(cl.size()) != n) continue;
      std::sort(cl.begin(), cl.end());
      subgroups.insert(std::move(cl));
    }
  }

  u64 count = 0;
  for (const auto& sub : subgroups) {
    // regular: transitive of order n
    std::vector<char> hit(n, 0);
    for (const Perm& s : sub) hit[s[0]] = 1;
    if (std::count(hit.begin(), hit.end(), char(1)) != n) continue;
    std::multiset<u64> spectrum;
    for (const Perm& s : sub) spectrum.insert(perm_order(s));
    if (spectrum != g_spectrum) continue;
    std::set<Perm> sub_set(sub.begin(), sub.end());
    std::set<Perm> normalizer;
    for (const Perm& s : sym) {
      const Perm si = inverse_perm(s);
      bool normalizes = true;
      for (const Perm& h : sub) {
        if (!sub_set.contains(compose_perm(s, compose_perm(h, si)))) {
          normalizes = false;
          break;
        }
      }
      if (normalizes) normalizer.insert(s);
    }
    if (normalizer == hol_set) ++count;
  }

  TStructure t = brute_nhol(g);
  return count == t.t_order;
}

}  // namespace holomorph

#endif  // HOLOMORPH_ORACLE_HPP_
