#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "holomorph/aut_enum.hpp"
#include "holomorph/nilpotent.hpp"
#include "holomorph/oracle.hpp"

using namespace holomorph;

TEST_CASE("automorphism counts of small groups") {
  CHECK(enumerate_aut(build_abelian({7})).size() == 6);
  CHECK(enumerate_aut(build_dihedral(3)).size() == 6);
  CHECK(enumerate_aut(build_abelian({3, 3})).size() == 48);   // |GL(2,3)|
  CHECK(enumerate_aut(build_abelian({2, 2})).size() == 6);    // |GL(2,2)|
  CHECK(enumerate_aut(build_dihedral(4)).size() == 8);
  CHECK(enumerate_aut(build_quaternion8()).size() == 24);
}

TEST_CASE("every enumerated map is an automorphism and the set is a group") {
  GroupTable g = build_abelian({3, 3});
  auto auts = enumerate_aut(g);
  std::set<Perm> seen;
  for (const auto& a : auts) {
    REQUIRE(is_automorphism(g, a.map));
    seen.insert(a.map);
  }
  CHECK(seen.size() == auts.size());  // no duplicates
  for (size_t i = 0; i < 8; ++i) {
    for (size_t j = 0; j < 8; ++j)
      CHECK(seen.contains(compose(auts[i], auts[j]).map));
    CHECK(seen.contains(inverse(auts[i]).map));
  }
}

TEST_CASE("agreement with the exhaustive oracle") {
  for (const GroupTable& g : {build_abelian({5}), build_dihedral(3), build_abelian({2, 2}),
                              build_abelian({8}), build_quaternion8()}) {
    auto fast = enumerate_aut(g);
    auto brute = brute_aut(g);
    std::set<Perm> fast_set, brute_set;
    for (const auto& a : fast) fast_set.insert(a.map);
    for (const auto& a : brute) brute_set.insert(a.map);
    REQUIRE(fast_set == brute_set);
  }
}

TEST_CASE("heisenberg group has 432 automorphisms") {
  // |Aut| = |Inn| * |GL(2,3)| for the extraspecial group of order 27 and
  // exponent 3; both factors are computed here rather than assumed.
  GroupTable h = build_heisenberg(3);
  auto auts = enumerate_aut(h);
  u64 center = 0;
  for (int z = 0; z < h.size(); ++z) {
    bool central = true;
    for (int x = 0; x < h.size() && central; ++x)
      if (h.mul(z, x) != h.mul(x, z)) central = false;
    if (central) ++center;
  }
  u64 inn = static_cast<u64>(h.size()) / center;
  u64 gl23 = (9 - 1) * (9 - 3);
  CHECK(auts.size() == inn * gl23);
  CHECK(auts.size() == 432);
  // inner automorphisms all occur
  std::set<Perm> seen;
  for (const auto& a : auts) seen.insert(a.map);
  for (int g = 0; g < h.size(); ++g) REQUIRE(seen.contains(conjugation_aut(h, g).map));
}

TEST_CASE("explicit generators and failure cases") {
  GroupTable s3 = build_dihedral(3);
  CHECK(enumerate_aut(s3, {1, 3}).size() == 6);
  CHECK(enumerate_aut(s3, {1, 3, 4}).size() == 6);  // redundant generator is fine
  CHECK_THROWS_AS(enumerate_aut(s3, {1}), InputError);  // <r> is proper
}

TEST_CASE("walk is deterministic across thread counts") {
  GroupTable g = build_abelian({3, 3});
  auto one = enumerate_aut(g, {}, 1);
  auto four = enumerate_aut(g, {}, 4);
  REQUIRE(one.size() == four.size());
  for (size_t i = 0; i < one.size(); ++i) REQUIRE(one[i].map == four[i].map);
}

TEST_CASE("generator reduction reaches the full group") {
  GroupTable g = build_abelian({3, 3});
  auto auts = enumerate_aut(g);
  auto gens = aut_generators(auts);
  CHECK(gens.size() <= 4);
  std::vector<Perm> gp;
  for (const auto& a : gens) gp.push_back(a.map);
  CHECK(perm_closure(gp, auts.size() + 1).size() == auts.size());
}

TEST_CASE("trivial group") {
  GroupTable t = build_abelian({});
  auto auts = enumerate_aut(t);
  REQUIRE(auts.size() == 1);
  CHECK(auts[0].map == identity_perm(1));
}
