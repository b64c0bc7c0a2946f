#ifndef HOLOMORPH_SDP_HPP_
#define HOLOMORPH_SDP_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/group_ops.hpp"
#include "holomorph/group_table.hpp"
#include "holomorph/modarith.hpp"

namespace holomorph {

// One cyclic factor <tau> of order p^n acting on the normal part A through
// psi, with twist unit k = 1 + u*p^m.
struct SdpFactorSpec {
  u64 p = 0;
  u64 n = 0;
  u64 m = 0;
  u64 u = 1;
  Automorphism psi;
  bool psi_is_power = false;  // psi was given as a power map a -> a^exponent
  u64 psi_exponent = 0;
};

struct SdpFactor {
  u64 p, n, m, u;
  u64 pn;         // p^n
  u64 psi_order;  // order of psi, always a power of p
  u64 y;          // psi_order = p^y
  Automorphism psi;
  bool psi_is_power = false;
  u64 psi_exponent = 0;

  u64 eps() const { return p == 2 ? 1 : 0; }
  u64 k() const { return GeomParams(p, u, m).k(); }
};

// G = A x| (<tau_1> x ... x <tau_r>) in normal form (a, e_1..e_r) with
// tau_s * a * tau_s^-1 = psi_s(a). Elements are indexed lexicographically on
// (a, e_1, ..., e_r), so the identity is index 0 and A embeds as the indices
// that are multiples of prod(p_s^n_s).
class SdpGroup {
 public:
  static constexpr u64 kSizeCap = 1u << 20;

  SdpGroup(GroupTable a, std::vector<SdpFactorSpec> specs) : a_(std::move(a)) {
    const int na = a_.size();
    d_ = 1;
    for (auto& spec : specs) {
      GeomParams params(spec.p, spec.u, spec.m);  // validates p, u, m
      if (spec.m > spec.n) throw InputError("build_sdp: m must not exceed n");
      for (const auto& f : factors_)
        if (f.p == spec.p) throw InputError("build_sdp: duplicate factor prime");
      if (static_cast<int>(spec.psi.map.size()) != na)
        throw InputError("build_sdp: psi does not act on A");
      if (!is_automorphism(a_, spec.psi.map))
        throw InputError("build_sdp: psi is not an automorphism of A");
      u64 ord = aut_order(spec.psi);
      u64 y = 0;
      for (u64 o = ord; o > 1; o /= spec.p, ++y)
        if (o % spec.p != 0)
          throw InputError("build_sdp: psi order is not a power of the factor prime");
      if (y > spec.n)
        throw InputError("build_sdp: psi^(p^n) is not the identity");
      u64 pn = pow_u64(spec.p, spec.n);
      if (pn > kSizeCap / d_ || d_ * pn > kSizeCap / static_cast<u64>(na))
        throw CapExceeded("build_sdp: group too large");
      factors_.push_back(SdpFactor{spec.p, spec.n, spec.m, spec.u, pn, ord, y,
                                   std::move(spec.psi), spec.psi_is_power, spec.psi_exponent});
      d_ *= pn;
    }
    for (size_t s = 0; s < factors_.size(); ++s)
      for (size_t t = s + 1; t < factors_.size(); ++t)
        if (compose_perm(factors_[s].psi.map, factors_[t].psi.map) !=
            compose_perm(factors_[t].psi.map, factors_[s].psi.map))
          throw InputError("build_sdp: the psi actions do not commute");

    n_ = static_cast<int>(d_ * na);
    const int r = static_cast<int>(factors_.size());
    strides_.assign(r, 1);
    for (int s = r - 2; s >= 0; --s) strides_[s] = strides_[s + 1] * factors_[s + 1].pn;

    psi_pows_.resize(r);
    for (int s = 0; s < r; ++s) {
      psi_pows_[s].reserve(factors_[s].psi_order);
      Perm cur = identity_perm(na);
      for (u64 j = 0; j < factors_[s].psi_order; ++j) {
        psi_pows_[s].push_back(cur);
        cur = compose_perm(factors_[s].psi.map, cur);
      }
    }

    a_of_.resize(n_);
    e_of_.assign(r, std::vector<elem_t>(n_));
    e_red_.assign(r, std::vector<elem_t>(n_));
    for (int x = 0; x < n_; ++x) {
      u64 rest = static_cast<u64>(x);
      a_of_[x] = static_cast<elem_t>(rest / d_);
      rest %= d_;
      for (int s = 0; s < r; ++s) {
        u64 e = rest / strides_[s];
        rest %= strides_[s];
        e_of_[s][x] = static_cast<elem_t>(e);
        e_red_[s][x] = static_cast<elem_t>(e % factors_[s].psi_order);
      }
    }
  }

  int size() const { return n_; }
  const GroupTable& a_part() const { return a_; }
  const std::vector<SdpFactor>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  u64 tau_block() const { return d_; }

  int mul(int x, int y) const {
    int b = a_of_[y];
    for (size_t s = 0; s < factors_.size(); ++s)
      b = psi_pows_[s][e_red_[s][x]][b];
    u64 idx = static_cast<u64>(a_.mul(a_of_[x], b)) * d_;
    for (size_t s = 0; s < factors_.size(); ++s) {
      u64 e = static_cast<u64>(e_of_[s][x]) + static_cast<u64>(e_of_[s][y]);
      if (e >= factors_[s].pn) e -= factors_[s].pn;
      idx += e * strides_[s];
    }
    return static_cast<int>(idx);
  }

  int inv(int x) const {
    int b = a_.inv(a_of_[x]);
    u64 idx = 0;
    for (size_t s = 0; s < factors_.size(); ++s) {
      u64 e = static_cast<u64>(e_of_[s][x]);
      u64 einv = e == 0 ? 0 : factors_[s].pn - e;
      u64 red = (factors_[s].psi_order - e_red_[s][x]) % factors_[s].psi_order;
      b = psi_pows_[s][red][b];
      idx += einv * strides_[s];
    }
    return static_cast<int>(static_cast<u64>(b) * d_ + idx);
  }

  int a_index(int a) const { return static_cast<int>(static_cast<u64>(a) * d_); }

  int tau_index(int s) const { return static_cast<int>(strides_[s]); }

  int a_of(int x) const { return a_of_[x]; }

  u64 exp_of(int x, int s) const { return static_cast<u64>(e_of_[s][x]); }

  bool in_a_part(int x) const { return static_cast<u64>(x) % d_ == 0; }

  int encode(int a, std::span<const u64> e) const {
    u64 idx = static_cast<u64>(a) * d_;
    for (size_t s = 0; s < factors_.size(); ++s) idx += (e[s] % factors_[s].pn) * strides_[s];
    return static_cast<int>(idx);
  }

  // psi_s^j(a) for arbitrary j (reduced modulo the order of psi_s).
  int psi_pow(int s, u64 j, int a) const { return psi_pows_[s][j % factors_[s].psi_order][a]; }

  // Generators of A (lifted) followed by the tau_s; this order makes the
  // automorphism backtracking prune on the tau conjugation relations.
  std::vector<int> preferred_gens() const {
    std::vector<int> gens;
    for (int g : greedy_generators(a_)) gens.push_back(a_index(g));
    for (int s = 0; s < rank(); ++s) gens.push_back(tau_index(s));
    return gens;
  }

 private:
  GroupTable a_;
  std::vector<SdpFactor> factors_;
  int n_ = 0;
  u64 d_ = 1;                   // prod p_s^n_s
  std::vector<u64> strides_;
  std::vector<elem_t> a_of_;
  std::vector<std::vector<elem_t>> e_of_;
  std::vector<std::vector<elem_t>> e_red_;
  std::vector<std::vector<Perm>> psi_pows_;
};

inline SdpGroup build_sdp(GroupTable a, std::vector<SdpFactorSpec> specs) {
  return SdpGroup(std::move(a), std::move(specs));
}

// Flatten to a materialized table with the same element indexing.
inline GroupTable sdp_to_table(const SdpGroup& g, int cap = GroupTable::kDefaultCap) {
  if (g.size() > cap) throw CapExceeded("sdp_to_table: group order " +
                                        std::to_string(g.size()) + " exceeds cap " +
                                        std::to_string(cap));
  const int n = g.size();
  std::vector<elem_t> mul(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mul[static_cast<size_t>(x) * n + y] = static_cast<elem_t>(g.mul(x, y));
  return GroupTable(n, std::move(mul));
}

}  // namespace holomorph

#endif  // HOLOMORPH_SDP_HPP_
