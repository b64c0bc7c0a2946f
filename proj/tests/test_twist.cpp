#include <catch2/catch_amalgamated.hpp>

#include "holomorph/aut_enum.hpp"
#include "holomorph/hol.hpp"
#include "holomorph/twist.hpp"

using namespace holomorph;

namespace {

SdpGroup make_g63(u64 m = 1) {
  GroupTable a = build_abelian({7});
  SdpFactorSpec f;
  f.p = 3;
  f.n = 2;
  f.m = m;
  f.u = 1;
  f.psi = power_map_aut(a, 2);
  f.psi_is_power = true;
  f.psi_exponent = 2;
  return build_sdp(std::move(a), {std::move(f)});
}

// order-171 group violating the psi-order hypothesis: psi has order 9 = p^(m+1)
SdpGroup make_broken_171() {
  GroupTable a = build_abelian({19});
  SdpFactorSpec f;
  f.p = 3;
  f.n = 2;
  f.m = 1;
  f.u = 1;
  f.psi = power_map_aut(a, 4);
  f.psi_is_power = true;
  f.psi_exponent = 4;
  return build_sdp(std::move(a), {std::move(f)});
}

}  // namespace

TEST_CASE("twist of the order-63 group") {
  SdpGroup g = make_g63();
  TwistMap t = build_twist(g);
  std::vector<u64> image{0, 1, 5, 3, 4, 8, 6, 7, 2};
  REQUIRE(t.tables.size() == 1);
  CHECK(t.tables[0].image == image);
  for (int a = 0; a < 7; ++a)
    for (u64 i = 0; i < 9; ++i) {
      std::vector<u64> e{i};
      std::vector<u64> ei{image[i]};
      REQUIRE(t.perm[g.encode(a, e)] == g.encode(a, ei));
    }
}

TEST_CASE("twist is the identity when m = n or r = 0") {
  SdpGroup g = make_g63(2);
  CHECK(build_twist(g).perm == identity_perm(63));

  SdpGroup a_only = build_sdp(build_abelian({7}), {});
  CHECK(build_twist(a_only).perm == identity_perm(7));
}

TEST_CASE("decomposing automorphism images of tau") {
  SdpGroup g = make_g63();
  GroupTable flat = sdp_to_table(g);

  auto id_dec = extract_theta(g, identity_perm(63), 0);
  CHECK(id_dec.c == 0);
  CHECK(id_dec.e == 1);

  for (int a = 0; a < 7; ++a) {
    Automorphism conj = conjugation_aut(flat, g.a_index(a));
    auto dec = extract_theta(g, conj.map, 0);
    CHECK(dec.e == 1);
    int expected_c = g.a_part().mul(a, g.factors()[0].psi(g.a_part().inv(a)));
    CHECK(dec.c == expected_c);
  }

  auto auts = enumerate_aut(flat, g.preferred_gens());
  CHECK(auts.size() == 126);
  for (const auto& th : auts) {
    auto dec = extract_theta(g, th.map, 0);
    REQUIRE(dec.e % 3 == 1);
  }
}

TEST_CASE("conditions on the order-63 group") {
  SdpGroup g = make_g63();
  GroupTable flat = sdp_to_table(g);
  auto auts = enumerate_aut(flat, g.preferred_gens());
  ConditionReport rep = check_conditions(g, &auts);
  CHECK(rep.c1);
  CHECK(rep.c2);
  CHECK(rep.c3);
  CHECK(rep.c4);
  CHECK(rep.all());
  REQUIRE(rep.c3_enumeration.has_value());
  REQUIRE(rep.c3_fastpath.has_value());
  CHECK(*rep.c3_enumeration);
  CHECK(*rep.c3_fastpath);
  CHECK(rep.c3_consistent());
  CHECK(rep.factors[0].c3_modulus == 3);
  CHECK(theoretical_coset_order(g, rep) == 3);
}

TEST_CASE("conditions with m = n: congruence modulus collapses to 1") {
  SdpGroup g = make_g63(2);
  GroupTable flat = sdp_to_table(g);
  auto auts = enumerate_aut(flat, g.preferred_gens());
  ConditionReport rep = check_conditions(g, &auts);
  CHECK(rep.all());
  CHECK(rep.factors[0].c3_modulus == 1);
  CHECK(theoretical_coset_order(g, rep) == 1);
}

TEST_CASE("condition 3 fails for C5 x| C8 with inversion") {
  GroupTable a = build_abelian({5});
  SdpFactorSpec f;
  f.p = 2;
  f.n = 3;
  f.m = 2;
  f.u = 1;
  f.psi = power_map_aut(a, 4);
  f.psi_is_power = true;
  f.psi_exponent = 4;
  SdpGroup g = build_sdp(std::move(a), {std::move(f)});
  CHECK(g.size() == 40);
  GroupTable flat = sdp_to_table(g);
  auto auts = enumerate_aut(flat, g.preferred_gens());
  ConditionReport rep = check_conditions(g, &auts);
  CHECK(rep.c1);
  CHECK(rep.c2);   // order 2 divides 2^2
  CHECK(rep.c4);   // 3 <= 2*2 - 1
  CHECK(!rep.c3);  // some theta sends tau to c*tau^e with e = 3 mod 4
  REQUIRE(rep.c3_witness.has_value());
  CHECK(rep.c3_witness->modulus == 4);
  CHECK(rep.c3_witness->theta_exp % 4 == 3);
  // the witness really is an automorphism of G
  CHECK(is_automorphism(flat, rep.c3_witness->theta));
  // fast path inapplicable as a certificate here: inequality fails
  REQUIRE(rep.c3_fastpath.has_value());
  CHECK(!*rep.c3_fastpath);
  CHECK(rep.c3_consistent());
  CHECK_THROWS_AS(theoretical_coset_order(g, rep), InputError);
}

TEST_CASE("rho-conjugation identities") {
  SdpGroup g = make_g63();
  GroupTable flat = sdp_to_table(g);
  TwistMap t = build_twist(g);
  auto res = verify_rho_conjugation(flat, g, t);
  CHECK(res.part_a);
  CHECK(res.part_b);
  CHECK(res.ok());

  SdpGroup trivial = build_sdp(build_abelian({7}), {});
  auto res0 = verify_rho_conjugation(trivial, trivial, build_twist(trivial));
  CHECK(res0.ok());

  SdpGroup broken = make_broken_171();
  ConditionReport rep = check_conditions_base(broken);
  CHECK(!rep.c2);  // psi order 9 exceeds p^m = 3
  TwistMap bt = build_twist(broken);
  auto bres = verify_rho_conjugation(sdp_to_table(broken), broken, bt);
  CHECK(!bres.part_a);
  REQUIRE(bres.a_witness.has_value());
  auto [b, x] = *bres.a_witness;
  // replay the witness: the twist fails to commute with rho(b) at x
  GroupTable flat171 = sdp_to_table(broken);
  int bg = broken.a_index(b);
  CHECK(bt.perm[flat171.mul(x, flat171.inv(bg))] !=
        flat171.mul(bt.perm[x], flat171.inv(bg)));
}

TEST_CASE("automorphism commutation and orbit products") {
  SdpGroup g = make_g63();
  GroupTable flat = sdp_to_table(g);
  TwistMap t = build_twist(g);
  auto auts = enumerate_aut(flat, g.preferred_gens());
  auto res = verify_aut_commutation(g, t, auts);
  CHECK(res.commutes);
  CHECK(res.orbit_products_trivial);
  CHECK(res.checked == 126);
}

TEST_CASE("twist powers follow the twisted-unit law under condition 4") {
  SdpGroup g = make_g63();
  const auto& f = g.factors()[0];
  TwistMap t = build_twist(g);
  const u64 pn = f.pn;
  Perm power = identity_perm(g.size());
  for (u64 l = 1; l <= 6; ++l) {
    power = compose_perm(t.perm, power);
    const u64 kl = powmod(f.k(), l, pn);
    for (int x = 0; x < g.size(); ++x) {
      std::vector<u64> e{geom_sum_mod(kl, g.exp_of(x, 0), pn)};
      REQUIRE(power[x] == g.encode(g.a_of(x), e));
    }
  }
}

TEST_CASE("order-63 group end to end: membership and coset order") {
  SdpGroup g = make_g63();
  GroupTable flat = sdp_to_table(g);
  TwistMap t = build_twist(g);
  auto auts = enumerate_aut(flat, g.preferred_gens());
  HolGenSet hol = hol_genset(flat, g.preferred_gens(), aut_generators(auts));
  CHECK(nhol_membership(flat, t.perm, hol));
  CHECK(coset_order_in_T(flat, t.perm, 3) == 3);
  // pi^l lies in Hol exactly when it is the identity
  Perm sq = compose_perm(t.perm, t.perm);
  CHECK(!hol_membership(flat, t.perm).has_value());
  CHECK(!hol_membership(flat, sq).has_value());
  Perm cube = compose_perm(sq, t.perm);
  CHECK(cube == identity_perm(63));
  // the unit order matches p^(n-m)
  CHECK(mult_order_mod(g.factors()[0].k(), g.factors()[0].pn) == 3);
}
