#ifndef HOLOMORPH_RECIPE_HPP_
#define HOLOMORPH_RECIPE_HPP_

#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "holomorph/base.hpp"
#include "holomorph/modarith.hpp"
#include "holomorph/sdp.hpp"
#include "holomorph/twist.hpp"

namespace holomorph {

// Restriction identity for theta in Aut(G) stabilizing A: as maps on A,
//   theta|_A o psi_s = conj(c_s) o psi_s^e o theta|_A
// where theta(tau_s) = c_s tau_s^e. When A is abelian and psi_s commutes
// with theta|_A this forces psi_s^(e-1) = id, i.e. e = 1 mod p_s^y_s.
template <GroupModel M>
bool verify_restriction_identity(const M& grp, const SdpGroup& g,
                                 std::span<const elem_t> theta, int s) {
  const GroupTable& a = g.a_part();
  for (int b = 0; b < a.size(); ++b)
    if (!g.in_a_part(theta[g.a_index(b)]))
      throw InputError("verify_restriction_identity: theta does not stabilize A");
  auto dec = extract_theta(g, theta, s);
  const auto& f = g.factors()[s];

  auto theta_a = [&](int b) { return g.a_of(theta[g.a_index(b)]); };
  bool commutes_with_psi = true;
  for (int b = 0; b < a.size(); ++b) {
    int lhs = theta_a(f.psi(b));
    int rhs = a.mul(a.mul(dec.c, g.psi_pow(s, dec.e, theta_a(b))), a.inv(dec.c));
    if (lhs != rhs) return false;
    if (theta_a(f.psi(b)) != f.psi(theta_a(b))) commutes_with_psi = false;
  }
  if (a.abelian() && commutes_with_psi) {
    u64 py = pow_u64(f.p, f.y);
    if (dec.e % py != 1 % py) return false;
    for (int b = 0; b < a.size(); ++b)  // psi^(e-1) must be the identity map
      if (g.psi_pow(s, dec.e + f.psi_order - 1, b) != b) return false;
  }
  return true;
}

// One factor of a power-map recipe: tau of order p^n acting by a -> a^ell
// where ell has multiplicative order p^y mod exp(A), with twist level m.
struct RecipeFactor {
  u64 p = 0, y = 0, n = 0, m = 0, ell = 0;
};

struct RecipeSpec {
  std::vector<u64> a_cyclic;  // cyclic factors of the abelian base group
  std::vector<RecipeFactor> factors;
};

inline u64 recipe_exponent(const RecipeSpec& spec) {
  u64 e = 1;
  for (u64 f : spec.a_cyclic) e = std::lcm(e, f);
  return e;
}

inline u64 recipe_target_order(const RecipeSpec& spec) {
  u64 t = 1;
  for (const auto& f : spec.factors) t *= pow_u64(f.p, f.n - f.m);
  return t;
}

// Power maps on an abelian group are central in Aut(A), so the inequalities
//   n_s - m_s + eps_s <= y_s <= m_s <= n_s
// together with coprimality of exp(A) and the factor primes guarantee the
// remaining hypotheses.
inline bool check_power_recipe(const RecipeSpec& spec) {
  const u64 exp_a = recipe_exponent(spec);
  for (size_t s = 0; s < spec.factors.size(); ++s) {
    const auto& f = spec.factors[s];
    if (!is_prime(f.p)) return false;
    for (size_t t = s + 1; t < spec.factors.size(); ++t)
      if (spec.factors[t].p == f.p) return false;
    if (exp_a % f.p == 0) return false;
    const u64 eps = f.p == 2 ? 1 : 0;
    if (f.m < 1 || f.m > f.n) return false;
    if (f.p == 2 && f.m < 2) return false;
    if (!(f.n - f.m + eps <= f.y && f.y <= f.m)) return false;
    if (std::gcd(f.ell, exp_a) != 1) return false;
    if (mult_order_mod(f.ell, exp_a) != pow_u64(f.p, f.y)) return false;
  }
  return true;
}

// Smallest l whose multiplicative order mod modulus is exactly target.
inline std::optional<u64> unit_order_element(u64 modulus, u64 target) {
  if (modulus < 2) throw InputError("unit_order_element: modulus must be at least 2");
  for (u64 l = 1; l < modulus; ++l) {
    if (std::gcd(l, modulus) != 1) continue;
    if (mult_order_mod(l, modulus) == target) return l;
  }
  return std::nullopt;
}

// Single-factor specs with the minimal profile y = e, m = e, n = 2e over
// cyclic bases C_q, for primes q <= q_bound with q = 1 mod p^e. Each spec
// passes check_power_recipe and targets coset order p^e.
inline std::vector<RecipeSpec> recipe_search(u64 p, u64 e, u64 q_bound) {
  if (!is_prime(p) || p == 2) throw InputError("recipe_search: p must be an odd prime");
  if (e < 1) throw InputError("recipe_search: e must be at least 1");
  const u64 pe = pow_u64(p, e);
  std::vector<RecipeSpec> out;
  for (u64 q = 2; q <= q_bound; ++q) {
    if (!is_prime(q) || q % pe != 1) continue;
    auto ell = unit_order_element(q, pe);
    if (!ell) continue;  // cannot happen for prime q with q = 1 mod p^e
    RecipeSpec spec;
    spec.a_cyclic = {q};
    spec.factors.push_back(RecipeFactor{p, e, 2 * e, e, *ell});
    if (!check_power_recipe(spec))
      throw std::logic_error("recipe_search: emitted spec fails its own criterion");
    out.push_back(std::move(spec));
  }
  return out;
}

// Materialize a recipe as a semidirect product group.
inline SdpGroup build_recipe_group(const RecipeSpec& spec,
                                   int cap = GroupTable::kDefaultCap) {
  GroupTable a = build_abelian(spec.a_cyclic, cap);
  std::vector<SdpFactorSpec> factors;
  for (const auto& f : spec.factors) {
    SdpFactorSpec fs;
    fs.p = f.p;
    fs.n = f.n;
    fs.m = f.m;
    fs.u = 1;
    fs.psi = power_map_aut(a, f.ell);
    fs.psi_is_power = true;
    fs.psi_exponent = f.ell;
    factors.push_back(std::move(fs));
  }
  return build_sdp(std::move(a), std::move(factors));
}

}  // namespace holomorph

#endif  // HOLOMORPH_RECIPE_HPP_
