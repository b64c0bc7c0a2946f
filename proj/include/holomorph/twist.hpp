#ifndef HOLOMORPH_TWIST_HPP_
#define HOLOMORPH_TWIST_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holomorph/automorphism.hpp"
#include "holomorph/base.hpp"
#include "holomorph/hol.hpp"
#include "holomorph/modarith.hpp"
#include "holomorph/perm.hpp"
#include "holomorph/sdp.hpp"

namespace holomorph {

// The twist permutation of G = A x| (<tau_1> x ... x <tau_r>):
//   (a, e_1, ..., e_r) -> (a, S(k_1, e_1) mod p_1^n_1, ..., S(k_r, e_r) mod p_r^n_r)
// with k_s = 1 + u_s * p_s^m_s. Bijective because each coordinate map is; it
// fixes the identity, A pointwise, and every tau_s.
struct TwistMap {
  Perm perm;
  std::vector<GeomSumTable> tables;  // per factor, modulus p_s^n_s
};

inline TwistMap build_twist(const SdpGroup& g) {
  TwistMap t;
  for (const auto& f : g.factors())
    t.tables.push_back(build_geom_sum_table(GeomParams(f.p, f.u, f.m), f.n));
  const int n = g.size();
  t.perm.resize(n);
  const int r = g.rank();
  std::vector<u64> e(r);
  for (int x = 0; x < n; ++x) {
    for (int s = 0; s < r; ++s) e[s] = t.tables[s].image[g.exp_of(x, s)];
    t.perm[x] = static_cast<elem_t>(g.encode(g.a_of(x), e));
  }
  if (!is_permutation(t.perm, n)) throw std::logic_error("build_twist: map is not bijective");
  if (t.perm[0] != 0) throw std::logic_error("build_twist: identity not fixed");
  for (int a = 0; a < g.a_part().size(); ++a)
    if (t.perm[g.a_index(a)] != g.a_index(a))
      throw std::logic_error("build_twist: A not fixed pointwise");
  for (int s = 0; s < r; ++s)
    if (t.perm[g.tau_index(s)] != g.tau_index(s))
      throw std::logic_error("build_twist: tau not fixed");
  return t;
}

// theta(tau_s) written in normal form c * tau_s^e; rejects images with a
// component in another cyclic factor.
struct ThetaDecomposition {
  int c = 0;   // element of A
  u64 e = 0;   // exponent of tau_s
};

inline ThetaDecomposition extract_theta(const SdpGroup& g, std::span<const elem_t> theta,
                                        int s) {
  int image = theta[g.tau_index(s)];
  for (int t = 0; t < g.rank(); ++t) {
    if (t == s) continue;
    if (g.exp_of(image, t) != 0)
      throw DecompositionError("extract_theta: theta(tau_" + std::to_string(s) +
                               ") has a nonzero tau_" + std::to_string(t) + " component");
  }
  return ThetaDecomposition{g.a_of(image), g.exp_of(image, s)};
}

struct FactorConditionDetail {
  u64 p, n, m, u, y, k;
  bool c2 = false;
  bool c4 = false;
  u64 c3_modulus = 1;  // p^(n-m+eps)
};

struct C3Witness {
  Perm theta;
  int factor = 0;
  u64 theta_exp = 0;   // the offending exponent
  u64 modulus = 1;
};

// The four hypotheses on G:
//   c1: exp(A) coprime to every factor prime;
//   c2: psi_s has order dividing p_s^m_s;
//   c3: every automorphism sends tau_s to c*tau_s^e with e = 1 mod p_s^(n_s-m_s+eps_s);
//   c4: n_s <= 2*m_s - eps_s.
// c3 can be established either by full enumeration of Aut(G) or, for abelian
// A with central psi (power maps), by the inequality n-m+eps <= y <= m.
struct ConditionReport {
  bool c1 = false, c2 = false, c3 = false, c4 = false;
  std::vector<FactorConditionDetail> factors;
  std::optional<int> c1_bad_factor, c2_bad_factor, c4_bad_factor;
  std::optional<C3Witness> c3_witness;
  std::optional<bool> c3_enumeration;  // set when Aut(G) was enumerated
  std::optional<bool> c3_fastpath;     // set when the power-map criterion applied

  bool all() const { return c1 && c2 && c3 && c4; }

  // The fast path is sufficient, not necessary: it may only disagree by
  // being false while enumeration says true.
  bool c3_consistent() const {
    if (!c3_enumeration || !c3_fastpath) return true;
    return !*c3_fastpath || *c3_enumeration;
  }
};

inline ConditionReport check_conditions_base(const SdpGroup& g) {
  ConditionReport rep;
  rep.c1 = rep.c2 = rep.c4 = true;
  const u64 exp_a = g.a_part().exponent();
  for (int s = 0; s < g.rank(); ++s) {
    const auto& f = g.factors()[s];
    FactorConditionDetail d{f.p, f.n, f.m, f.u, f.y, f.k(), false, false, 1};
    if (exp_a % f.p == 0) {
      rep.c1 = false;
      if (!rep.c1_bad_factor) rep.c1_bad_factor = s;
    }
    d.c2 = f.y <= f.m;
    if (!d.c2) {
      rep.c2 = false;
      if (!rep.c2_bad_factor) rep.c2_bad_factor = s;
    }
    d.c4 = f.n <= 2 * f.m - f.eps();
    if (!d.c4) {
      rep.c4 = false;
      if (!rep.c4_bad_factor) rep.c4_bad_factor = s;
    }
    d.c3_modulus = pow_u64(f.p, f.n - f.m + f.eps());
    rep.factors.push_back(d);
  }
  return rep;
}

// Per-automorphism c3 predicate; returns the offending factor if any.
inline std::optional<C3Witness> c3_violation(const SdpGroup& g, const ConditionReport& rep,
                                             std::span<const elem_t> theta) {
  for (int s = 0; s < g.rank(); ++s) {
    auto dec = extract_theta(g, theta, s);
    u64 mod = rep.factors[s].c3_modulus;
    if (dec.e % mod != 1 % mod)
      return C3Witness{Perm(theta.begin(), theta.end()), s, dec.e, mod};
  }
  return std::nullopt;
}

inline void apply_c3_from_list(const SdpGroup& g, ConditionReport& rep,
                               const std::vector<Automorphism>& auts) {
  rep.c3_enumeration = true;
  for (const auto& a : auts) {
    if (auto w = c3_violation(g, rep, a.map)) {
      rep.c3_enumeration = false;
      if (!rep.c3_witness) rep.c3_witness = std::move(*w);
      break;
    }
  }
  rep.c3 = *rep.c3_enumeration;
}

// Power-map criterion: with A abelian and psi_s central in Aut(A), the
// inequalities n-m+eps <= y <= m (plus c1) force c2..c4. psi is known to be
// central when it was supplied as a power map or when A is cyclic.
inline std::optional<bool> c3_fastpath_value(const SdpGroup& g) {
  const GroupTable& a = g.a_part();
  if (!a.abelian()) return std::nullopt;
  const bool cyclic = a.exponent() == static_cast<u64>(a.size());
  for (const auto& f : g.factors())
    if (!f.psi_is_power && !cyclic) return std::nullopt;
  ConditionReport base = check_conditions_base(g);
  if (!base.c1) return false;
  for (const auto& f : g.factors())
    if (!(f.n - f.m + f.eps() <= f.y && f.y <= f.m)) return false;
  return true;
}

inline void apply_c3_fastpath(const SdpGroup& g, ConditionReport& rep) {
  rep.c3_fastpath = c3_fastpath_value(g);
  if (rep.c3_fastpath && !rep.c3_enumeration) rep.c3 = *rep.c3_fastpath;
}

inline ConditionReport check_conditions(const SdpGroup& g,
                                        const std::vector<Automorphism>* auts,
                                        bool try_fastpath = true) {
  ConditionReport rep = check_conditions_base(g);
  if (auts) apply_c3_from_list(g, rep, *auts);
  if (try_fastpath) apply_c3_fastpath(g, rep);
  return rep;
}

// prod p_s^(n_s - m_s): the order the twist coset must have once all four
// conditions hold.
inline u64 theoretical_coset_order(const SdpGroup& g, const ConditionReport& rep) {
  if (!rep.all())
    throw InputError("theoretical_coset_order: the four conditions are not all verified");
  u64 ord = 1;
  for (const auto& f : g.factors()) ord *= pow_u64(f.p, f.n - f.m);
  return ord;
}

// --- rho-conjugation checks --------------------------------------------
//
// (a) the twist commutes with rho(b) for every b in A;
// (b) for each s, rho(tau_s^S(k_s, p_s^n_s - 1)) o twist o rho(tau_s) o
//     twist^-1 is an automorphism of G.

struct RhoConjugationResult {
  bool part_a = true;
  bool part_b = true;
  std::optional<std::pair<int, int>> a_witness;  // (b, x) with pi(rho_b(x)) != rho_b(pi(x))
  std::optional<int> b_witness;                  // failing factor

  bool ok() const { return part_a && part_b; }
};

template <GroupModel M>
RhoConjugationResult verify_rho_conjugation(const M& grp, const SdpGroup& g,
                                            const TwistMap& twist) {
  RhoConjugationResult res;
  const int n = grp.size();
  for (int b = 0; b < g.a_part().size() && res.part_a; ++b) {
    const int bg = g.a_index(b);
    const int bgi = grp.inv(bg);
    for (int x = 0; x < n; ++x) {
      if (twist.perm[grp.mul(x, bgi)] != grp.mul(twist.perm[x], bgi)) {
        res.part_a = false;
        res.a_witness = {b, x};
        break;
      }
    }
  }
  const Perm tinv = inverse_perm(twist.perm);
  for (int s = 0; s < g.rank(); ++s) {
    const auto& f = g.factors()[s];
    const u64 shift = geom_sum_mod(f.k(), f.pn - 1, f.pn);
    const int tau = g.tau_index(s);
    const int taui = grp.inv(tau);
    const int tshift_inv = grp.inv(pow_elt(grp, tau, shift));
    Perm theta(n);
    for (int x = 0; x < n; ++x)
      theta[x] = static_cast<elem_t>(grp.mul(twist.perm[grp.mul(tinv[x], taui)], tshift_inv));
    if (theta[0] != 0 || !is_automorphism(grp, theta)) {
      res.part_b = false;
      if (!res.b_witness) res.b_witness = s;
    }
  }
  return res;
}

// --- automorphism-commutation checks ------------------------------------
//
// With the hypotheses in force every theta in Aut(G) commutes with the
// twist, and the orbit products c_s psi_s^e(c_s) ... psi_s^(e(p^m-1))(c_s)
// collapse to the identity.

struct AutCommutationResult {
  bool commutes = true;
  bool orbit_products_trivial = true;
  u64 checked = 0;
  std::optional<Perm> commute_witness;
  std::optional<std::pair<Perm, int>> product_witness;

  bool ok() const { return commutes && orbit_products_trivial; }
};

inline bool twist_commutes_with(const TwistMap& twist, std::span<const elem_t> theta) {
  const int n = static_cast<int>(twist.perm.size());
  for (int x = 0; x < n; ++x)
    if (twist.perm[theta[x]] != theta[twist.perm[x]]) return false;
  return true;
}

inline bool orbit_product_trivial(const SdpGroup& g, std::span<const elem_t> theta, int s) {
  auto dec = extract_theta(g, theta, s);
  const auto& f = g.factors()[s];
  const GroupTable& a = g.a_part();
  u64 pm = pow_u64(f.p, f.m);
  int acc = dec.c;
  for (u64 j = 1; j < pm; ++j) acc = a.mul(acc, g.psi_pow(s, dec.e * j, dec.c));
  return acc == 0;
}

inline void fold_aut_commutation(const SdpGroup& g, const TwistMap& twist,
                                 std::span<const elem_t> theta, AutCommutationResult& res) {
  ++res.checked;
  if (res.commutes && !twist_commutes_with(twist, theta)) {
    res.commutes = false;
    res.commute_witness = Perm(theta.begin(), theta.end());
  }
  for (int s = 0; s < g.rank(); ++s) {
    if (!res.orbit_products_trivial) break;
    if (!orbit_product_trivial(g, theta, s)) {
      res.orbit_products_trivial = false;
      res.product_witness = {Perm(theta.begin(), theta.end()), s};
    }
  }
}

inline AutCommutationResult verify_aut_commutation(const SdpGroup& g, const TwistMap& twist,
                                                   const std::vector<Automorphism>& auts) {
  AutCommutationResult res;
  for (const auto& a : auts) fold_aut_commutation(g, twist, a.map, res);
  return res;
}

}  // namespace holomorph

#endif  // HOLOMORPH_TWIST_HPP_
