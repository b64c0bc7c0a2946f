#ifndef HOLOMORPH_AUT_ENUM_HPP_
#define HOLOMORPH_AUT_ENUM_HPP_

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/group_ops.hpp"
#include "holomorph/hol.hpp"
#include "holomorph/parallel.hpp"
#include "holomorph/perm.hpp"

namespace holomorph {

// Backtracking enumeration of Aut(G) over images of a generating set.
//
// Candidates for the image of each generator are pruned by element order and
// (on table-sized groups) centralizer size. A candidate assignment is
// extended through the multiplication table along a precomputed subgroup
// chain H_1 < H_2 < ... < H_t = G, checking multiplicativity against every
// generator and injectivity as it goes; a map that survives all levels is a
// bijection multiplicative on all pairs (x, g_i), which forces it to be an
// automorphism. Leaves are re-validated on all pairs up to
// kFullPairValidateLimit elements.
namespace aut_detail {

struct Def {
  elem_t elem;
  elem_t parent;
  elem_t gen;
};

template <GroupModel G>
struct Chain {
  const G& grp;
  std::vector<int> gens;
  int levels = 0;
  std::vector<elem_t> level_of;               // min level whose subgroup contains x
  std::vector<std::vector<Def>> defs;         // defs[j]: new elements of H_j
  std::vector<std::vector<elem_t>> old_elems; // old_elems[j]: elements of H_{j-1}
  std::vector<std::vector<elem_t>> cands;     // candidate images per generator
  // Conjugation words g_j g_i g_j^-1 and g_i g_j g_i^-1 for i < j, used as a
  // cheap filter before extending a candidate.
  struct ConjWord {
    elem_t w1, w2;
  };
  std::vector<std::vector<ConjWord>> conj;

  explicit Chain(const G& g, std::vector<int> generators) : grp(g) {
    const int n = grp.size();
    // Drop generators already contained in the subgroup of the earlier ones.
    for (int cand : generators) {
      auto cl = subgroup_closure(grp, gens);
      if (std::binary_search(cl.begin(), cl.end(), static_cast<elem_t>(cand))) continue;
      gens.push_back(cand);
    }
    levels = static_cast<int>(gens.size());
    level_of.assign(n, static_cast<elem_t>(levels + 1));
    level_of[0] = 0;
    defs.resize(levels + 1);
    old_elems.resize(levels + 1);
    std::vector<elem_t> all{0};
    for (int j = 1; j <= levels; ++j) {
      old_elems[j] = all;
      for (size_t idx = 0; idx < all.size(); ++idx) {
        int x = all[idx];
        for (int i = 0; i < j; ++i) {
          int z = grp.mul(x, gens[i]);
          if (level_of[z] > levels) {
            level_of[z] = static_cast<elem_t>(j);
            defs[j].push_back(Def{static_cast<elem_t>(z), static_cast<elem_t>(x),
                                  static_cast<elem_t>(i)});
            all.push_back(static_cast<elem_t>(z));
          }
        }
      }
    }
    if (static_cast<int>(all.size()) != n)
      throw InputError("enumerate_aut: the given elements do not generate the group");

    std::vector<u64> orders(n);
    for (int x = 0; x < n; ++x) orders[x] = element_order(grp, x);
    std::vector<u64> cent;
    if (n <= GroupTable::kDefaultCap) {
      cent.assign(n, 0);
      for (int x = 0; x < n; ++x) {
        u64 c = 0;
        for (int z = 0; z < n; ++z)
          if (grp.mul(x, z) == grp.mul(z, x)) ++c;
        cent[x] = c;
      }
    }
    cands.resize(levels);
    for (int j = 0; j < levels; ++j) {
      for (int x = 1; x < n; ++x) {
        if (orders[x] != orders[gens[j]]) continue;
        if (!cent.empty() && cent[x] != cent[gens[j]]) continue;
        cands[j].push_back(static_cast<elem_t>(x));
      }
    }
    conj.resize(levels);
    for (int j = 0; j < levels; ++j) {
      for (int i = 0; i < j; ++i) {
        int w1 = grp.mul(grp.mul(gens[j], gens[i]), grp.inv(gens[j]));
        int w2 = grp.mul(grp.mul(gens[i], gens[j]), grp.inv(gens[i]));
        conj[j].push_back({static_cast<elem_t>(w1), static_cast<elem_t>(w2)});
      }
    }
  }
};

template <GroupModel G>
struct Search {
  static constexpr int kFullPairValidateLimit = 2048;

  const Chain<G>& chain;
  const G& grp;
  Perm img;
  std::vector<char> used;
  std::vector<elem_t> trail;

  explicit Search(const Chain<G>& c)
      : chain(c), grp(c.grp), img(c.grp.size(), -1), used(c.grp.size(), 0) {
    img[0] = 0;
    used[0] = 1;
  }

  template <class Sink>
  void run(int j, Sink&& sink) {
    if (j == chain.levels) {
      if (grp.size() <= kFullPairValidateLimit && !is_homomorphism(grp, img))
        throw std::logic_error("enumerate_aut: candidate survived levels but is not a "
                               "homomorphism");
      sink(img);
      return;
    }
    for (elem_t c : chain.cands[j]) descend(j, c, sink);
  }

  template <class Sink>
  void descend(int j, elem_t c, Sink&& sink) {
    if (used[c]) return;
    const auto& gens = chain.gens;
    for (int i = 0; i < j; ++i) {
      const auto& cw = chain.conj[j][i];
      int ic = grp.inv(c);
      if (chain.level_of[cw.w1] <= j &&
          grp.mul(grp.mul(c, img[gens[i]]), ic) != img[cw.w1])
        return;
      if (chain.level_of[cw.w2] <= j &&
          grp.mul(grp.mul(img[gens[i]], c), grp.inv(img[gens[i]])) != img[cw.w2])
        return;
    }

    size_t mark = trail.size();
    bool ok = true;
    for (const auto& d : chain.defs[j + 1]) {
      int gi_img = d.gen == j ? c : img[gens[d.gen]];
      int v = grp.mul(img[d.parent], gi_img);
      if (used[v]) {
        ok = false;
        break;
      }
      used[v] = 1;
      img[d.elem] = static_cast<elem_t>(v);
      trail.push_back(d.elem);
    }
    if (ok) {
      for (const auto& d : chain.defs[j + 1]) {
        for (int i = 0; i <= j && ok; ++i)
          if (img[grp.mul(d.elem, gens[i])] != grp.mul(img[d.elem], img[gens[i]])) ok = false;
        if (!ok) break;
      }
    }
    if (ok) {
      for (elem_t x : chain.old_elems[j + 1]) {
        if (img[grp.mul(x, gens[j])] != grp.mul(img[x], img[gens[j]])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) run(j + 1, sink);
    while (trail.size() > mark) {
      elem_t e = trail.back();
      trail.pop_back();
      used[img[e]] = 0;
      img[e] = -1;
    }
  }
};

}  // namespace aut_detail

// Streams every automorphism of grp to sink(worker, map), in a fixed DFS
// order partitioned by the first generator image. The map span is only valid
// during the call.
template <GroupModel G, class Sink>
void aut_walk(const G& grp, const std::vector<int>& gens, int threads, Sink&& sink) {
  aut_detail::Chain<G> chain(grp, gens);
  if (chain.levels == 0) {
    Perm id = identity_perm(grp.size());
    sink(0, id);
    return;
  }
  long count = static_cast<long>(chain.cands[0].size());
  run_chunked(count, threads, [&](int worker, long begin, long end) {
    aut_detail::Search<G> search(chain);
    for (long i = begin; i < end; ++i) {
      search.descend(0, chain.cands[0][i],
                     [&](const Perm& map) { sink(worker, map); });
    }
  });
}

// Full automorphism group as a list, in the deterministic walk order.
template <GroupModel G>
std::vector<Automorphism> enumerate_aut(const G& grp, std::vector<int> gens = {},
                                        int threads = 1) {
  if (gens.empty()) gens = greedy_generators(grp);
  if (threads < 1) threads = 1;
  std::vector<std::vector<Automorphism>> found(threads);
  aut_walk(grp, gens, threads,
           [&](int worker, const Perm& map) { found[worker].push_back(Automorphism{map}); });
  std::vector<Automorphism> out;
  for (auto& part : found)
    for (auto& a : part) out.push_back(std::move(a));
  return out;
}

// Greedy generating subset of a full automorphism list.
inline std::vector<Automorphism> aut_generators(const std::vector<Automorphism>& all) {
  if (all.empty()) return {};
  std::vector<Automorphism> gens;
  std::unordered_set<Perm, PermHash> have;
  have.insert(identity_perm(static_cast<int>(all[0].map.size())));
  for (const auto& a : all) {
    if (have.size() == all.size()) break;
    if (have.contains(a.map)) continue;
    gens.push_back(a);
    std::vector<Perm> gp;
    for (const auto& g : gens) gp.push_back(g.map);
    have.clear();
    for (auto& p : perm_closure(gp, all.size() + 1)) have.insert(std::move(p));
  }
  if (have.size() != all.size())
    throw std::logic_error("aut_generators: closure does not reach the full group");
  return gens;
}

}  // namespace holomorph

#endif  // HOLOMORPH_AUT_ENUM_HPP_
