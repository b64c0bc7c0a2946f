#ifndef HOLOMORPH_NILPOTENT_HPP_
#define HOLOMORPH_NILPOTENT_HPP_

#include <numeric>
#include <vector>

#include "holomorph/aut_enum.hpp"
#include "holomorph/base.hpp"
#include "holomorph/group_table.hpp"
#include "holomorph/hol.hpp"
#include "holomorph/modarith.hpp"
#include "holomorph/perm.hpp"

namespace holomorph {

// Center, lower central series, nilpotency class, and the two exponents
// exp(G/Z(G)) = p^r and exp(gamma_3(G)) = p^t of a finite p-group.
struct NilpotencyData {
  u64 p = 0;
  int cls = 0;                                // nilpotency class
  std::vector<elem_t> center;                 // sorted
  std::vector<std::vector<elem_t>> series;    // gamma_1 > gamma_2 > ...; ends trivial
  u64 r = 0;                                  // exp(G/Z(G)) = p^r
  u64 t = 0;                                  // exp(gamma_3(G)) = p^t
};

inline NilpotencyData nilpotency_data(const GroupTable& g, u64 p) {
  if (!is_prime(p)) throw InputError("nilpotency_data: p must be prime");
  u64 n = static_cast<u64>(g.size());
  while (n > 1) {
    if (n % p != 0) throw InputError("nilpotency_data: group order is not a power of p");
    n /= p;
  }

  NilpotencyData data;
  data.p = p;
  for (int z = 0; z < g.size(); ++z) {
    bool central = true;
    for (int x = 0; x < g.size(); ++x) {
      if (g.mul(z, x) != g.mul(x, z)) {
        central = false;
        break;
      }
    }
    if (central) data.center.push_back(static_cast<elem_t>(z));
  }

  std::vector<elem_t> whole(g.size());
  std::iota(whole.begin(), whole.end(), 0);
  data.series.push_back(whole);
  while (data.series.back().size() > 1) {
    std::vector<int> comms;
    for (int x = 0; x < g.size(); ++x)
      for (elem_t y : data.series.back()) comms.push_back(commutator(g, x, y));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    auto next = subgroup_closure(g, comms);
    if (next.size() == data.series.back().size())
      throw std::logic_error("nilpotency_data: lower central series stalled (non-nilpotent?)");
    data.series.push_back(std::move(next));
  }
  data.cls = static_cast<int>(data.series.size()) - 1;

  // exp(G/Z): least l with x^l central, per element, then the lcm.
  std::vector<char> central(g.size(), 0);
  for (elem_t z : data.center) central[z] = 1;
  u64 quotient_exp = 1;
  for (int x = 0; x < g.size(); ++x) {
    u64 l = 1;
    int pw = x;
    while (!central[pw]) {
      pw = g.mul(pw, x);
      ++l;
    }
    quotient_exp = std::lcm(quotient_exp, l);
  }
  data.r = padic_val(p, quotient_exp);

  u64 gamma3_exp = 1;
  if (data.series.size() > 2)
    for (elem_t x : data.series[2]) gamma3_exp = std::lcm(gamma3_exp, g.order(x));
  data.t = padic_val(p, gamma3_exp);
  return data;
}

// The group of order p^3 on triples (a, b, c) mod p with
// (a1,b1,c1)*(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2); class 2, exponent p
// for odd p.
inline GroupTable build_heisenberg(u64 p) {
  if (!is_prime(p) || p == 2) throw InputError("build_heisenberg: p must be an odd prime");
  if (p > 7) throw CapExceeded("build_heisenberg: p above 7");
  const int n = static_cast<int>(p * p * p);
  std::vector<elem_t> mul(static_cast<size_t>(n) * n);
  auto enc = [p](u64 a, u64 b, u64 c) { return a * p * p + b * p + c; };
  for (int x = 0; x < n; ++x) {
    u64 a1 = x / (p * p), b1 = (x / p) % p, c1 = x % p;
    for (int y = 0; y < n; ++y) {
      u64 a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      mul[static_cast<size_t>(x) * n + y] =
          static_cast<elem_t>(enc((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p));
    }
  }
  return GroupTable(n, std::move(mul));
}

// Power-map membership test against the predictions for p-groups of class
// 2 <= cls <= p-1: x -> x^ell normalizes Hol(G) whenever ell = 1 mod p^t,
// and its coset is trivial exactly when ell = 1 mod p^r.
struct PowerMapCheck {
  bool applicable = false;
  bool in_nhol = false;
  bool coset_trivial = false;
  bool predicted_in_nhol = false;
  bool predicted_trivial = false;
  NilpotencyData data;

  bool agrees() const {
    return in_nhol == predicted_in_nhol && coset_trivial == predicted_trivial;
  }
};

inline PowerMapCheck power_map_check(const GroupTable& g, u64 p, u64 ell, int threads = 1) {
  PowerMapCheck res;
  res.data = nilpotency_data(g, p);
  const u64 pt = pow_u64(p, res.data.t);
  const u64 pr = pow_u64(p, res.data.r);
  res.predicted_in_nhol = ell % pt == 1 % pt;
  res.predicted_trivial = ell % pr == 1 % pr;
  res.applicable = res.data.cls >= 2 && static_cast<u64>(res.data.cls) <= p - 1 &&
                   std::gcd(ell, p) == 1 && res.predicted_in_nhol;
  if (std::gcd(ell, g.exponent()) != 1) return res;  // power map not bijective

  Perm f = power_perm(g, ell);
  auto auts = enumerate_aut(g, {}, threads);
  HolGenSet hol = hol_genset(g, greedy_generators(g), aut_generators(auts));
  res.in_nhol = nhol_membership(g, f, hol);
  res.coset_trivial = hol_membership(g, f).has_value();
  return res;
}

}  // namespace holomorph

#endif  // HOLOMORPH_NILPOTENT_HPP_
