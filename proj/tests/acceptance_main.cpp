// Acceptance suite: runs each end-to-end criterion at its stated tolerance
// and prints one [PASS]/[FAIL] line per criterion. Exit code 0 only if all
// criteria pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "holomorph/nilpotent.hpp"
#include "holomorph/oracle.hpp"
#include "holomorph/parallel.hpp"
#include "holomorph/pipeline.hpp"

using namespace holomorph;

namespace {

int g_failures = 0;

struct Checker {
  std::string detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

void criterion(int number, const std::string& name, double budget_s,
               const std::function<void(Checker&)>& body) {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && elapsed > budget_s)
    c.expect(false, "runtime " + std::to_string(elapsed) + "s exceeds " +
                        std::to_string(budget_s) + "s");
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", number,
              name.c_str(), elapsed, c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

SdpGroup power_map_sdp(const std::vector<u64>& a_factors,
                       const std::vector<std::array<u64, 4>>& pnmu_ell) {
  GroupTable a = build_abelian(a_factors);
  std::vector<SdpFactorSpec> specs;
  for (const auto& [p, n, m, ell] : pnmu_ell) {
    SdpFactorSpec f;
    f.p = p;
    f.n = n;
    f.m = m;
    f.u = 1;
    f.psi = power_map_aut(a, ell);
    f.psi_is_power = true;
    f.psi_exponent = ell;
    specs.push_back(std::move(f));
  }
  return build_sdp(std::move(a), std::move(specs));
}

void flagship_order_63(Checker& c) {
  SdpGroup g = power_map_sdp({7}, {{{3, 2, 1, 2}}});
  VerifyOptions opt;
  opt.threads = default_thread_count();
  VerifyResult res = run_verify_built(g, opt);
  c.expect(res.confirmed, "not confirmed: " + res.failure);
  c.expect(res.report["conditions"]["c1"] == true && res.report["conditions"]["c2"] == true &&
               res.report["conditions"]["c3"] == true && res.report["conditions"]["c4"] == true,
           "conditions not all true");
  c.expect(res.report["nhol_method"] == "generator-conjugation",
           "membership not certified by generator conjugation");
  c.expect(res.report["pi_in_nhol"] == true, "twist not in NHol");
  c.expect(res.report["coset_order_computed"] == 3, "computed order != 3");
  c.expect(res.report["coset_order_theoretical"] == 3, "theoretical order != 3");
}

void large_run_1539(Checker& c) {
  SdpGroup g = power_map_sdp({19}, {{{3, 4, 2, 4}}});
  c.expect(g.size() == 1539, "|G| != 1539");
  VerifyOptions opt;
  opt.threads = default_thread_count();
  VerifyResult res = run_verify_built(g, opt);
  c.expect(res.confirmed, "not confirmed: " + res.failure);
  c.expect(res.report["conditions"]["c3_enumeration"] == true, "enumeration path not run");
  c.expect(res.report["conditions"]["c3_fastpath"] == true, "power-map criterion not run");
  c.expect(res.report["conditions"]["c3_consistent"] == true, "c3 paths disagree");
  c.expect(res.report["coset_order_computed"] == 9, "computed order != 9");
  c.expect(res.report["coset_order_theoretical"] == 9, "theoretical order != 9");
}

void multi_factor_17325(Checker& c) {
  auto ell3 = unit_order_element(77, 3);
  auto ell5 = unit_order_element(77, 5);
  c.expect(ell3.has_value() && ell5.has_value(), "no units of order 3 and 5 mod 77");
  SdpGroup g = power_map_sdp({77}, {{{3, 2, 1, *ell3}, {5, 2, 1, *ell5}}});
  c.expect(g.size() == 17325, "|G| != 17325");
  VerifyOptions opt;
  opt.threads = default_thread_count();
  VerifyResult res = run_verify_built(g, opt);
  c.expect(res.confirmed, "not confirmed: " + res.failure);
  c.expect(res.report["coset_order_computed"] == 15, "computed order != 15");
  c.expect(res.report["coset_order_theoretical"] == 15, "theoretical order != 15");
  c.expect(res.report["conditions"]["c3_enumeration"] == true &&
               res.report["conditions"]["c3_fastpath"] == true,
           "c3 not confirmed on both paths");
}

void modular_property_suite(Checker& c) {
  u64 checks = 0;
  for (u64 p : {2, 3, 5, 7}) {
    const u64 eps = p == 2 ? 1 : 0;
    for (u64 m = (p == 2 ? 2u : 1u); m <= 4; ++m) {
      for (u64 u = 1; u <= 10; ++u) {
        if (u % p == 0) continue;
        GeomParams gp(p, u, m);
        const u64 k = gp.k();
        for (u64 n = 1; n <= 6; ++n) {
          const u64 pn = pow_u64(p, n);
          GeomSumTable table = build_geom_sum_table(gp, n);

          // valuation equality: v_p(S(k, i)) = v_p(i), probed mod p^(v+1)
          for (u64 i = 1; i < pn; ++i) {
            const u64 v = padic_val(p, i);
            const u64 probe = pow_u64(p, v + 1);
            const u64 res = geom_sum_mod(k, i, probe);
            if (res == 0 || padic_val(p, res) != v) {
              c.expect(false, "valuation equality fails");
              return;
            }
            ++checks;
          }

          // fixed points: i = 1 mod p^(n-m+eps) when n >= m
          if (n >= m) {
            const u64 step = pow_u64(p, n - m + eps);
            for (u64 i = 1; i < pn; i += step) {
              if (table.image[i] != i) {
                c.expect(false, "fixed point fails");
                return;
              }
              ++checks;
            }
          }

          // iteration law up to 3 * p^(n-m) when n <= 2m - eps
          if (n <= 2 * m - eps) {
            std::vector<u64> iter(pn);
            for (u64 i = 0; i < pn; ++i) iter[i] = i;
            const u64 lmax = 3 * pow_u64(p, n - m);
            for (u64 l = 1; l <= lmax; ++l) {
              for (u64 i = 0; i < pn; ++i) iter[i] = table.image[iter[i]];
              const u64 kl = powmod(k, l, pn);
              u64 sum = 0, pw = 1 % pn;
              for (u64 i = 0; i < pn; ++i) {
                if (iter[i] != sum) {
                  c.expect(false, "iteration law fails");
                  return;
                }
                sum = (sum + pw) % pn;
                pw = mulmod(pw, kl, pn);
                ++checks;
              }
            }
          }

          // preimage congruence: S(k, pre(i)-1) - S(k, p^n-1) = k' i
          const u64 kinv = mod_inverse(k, pn);
          const u64 tail = table.image[pn - 1];
          for (u64 i = 0; i < pn; ++i) {
            u64 pre = table.preimage(i);
            if (pre == 0) pre = pn;
            if ((table.image[pre - 1] + pn - tail) % pn != mulmod(kinv, i, pn)) {
              c.expect(false, "preimage congruence fails");
              return;
            }
            ++checks;
          }
        }
      }
    }
  }
  c.detail = std::to_string(checks) + " checks";
}

void identity_suite(Checker& c) {
  auto run_positive = [&](const SdpGroup& g, const std::string& tag) {
    GroupTable flat = sdp_to_table(g);
    TwistMap t = build_twist(g);
    auto rho = verify_rho_conjugation(flat, g, t);
    c.expect(rho.part_a, tag + ": twist fails to commute with rho(A)");
    c.expect(rho.part_b, tag + ": tau conjugate is not an automorphism");
    auto auts = enumerate_aut(flat, g.preferred_gens());
    auto comm = verify_aut_commutation(g, t, auts);
    c.expect(comm.commutes, tag + ": some automorphism fails to commute");
    c.expect(comm.orbit_products_trivial, tag + ": orbit product not trivial");
  };
  run_positive(power_map_sdp({7}, {{{3, 2, 1, 2}}}), "g63");
  run_positive(power_map_sdp({7}, {{{3, 2, 2, 2}}}), "g63/m=2");
  run_positive(power_map_sdp({11}, {{{5, 2, 1, 3}}}), "C11x|C25");
  run_positive(build_sdp(build_abelian({7}), {}), "r=0");

  // deliberately broken: psi of order p^(m+1)
  SdpGroup broken = power_map_sdp({19}, {{{3, 2, 1, 4}}});
  ConditionReport rep = check_conditions_base(broken);
  c.expect(!rep.c2, "broken fixture unexpectedly satisfies the order hypothesis");
  TwistMap bt = build_twist(broken);
  auto bres = verify_rho_conjugation(sdp_to_table(broken), broken, bt);
  c.expect(!bres.part_a, "broken fixture not detected");
  c.expect(bres.a_witness.has_value(), "no witness for the broken fixture");
}

void oracle_concordance(Checker& c) {
  std::vector<std::pair<std::string, GroupTable>> groups;
  groups.emplace_back("C1", build_abelian({}));
  groups.emplace_back("C2", build_abelian({2}));
  groups.emplace_back("C3", build_abelian({3}));
  groups.emplace_back("C4", build_abelian({4}));
  groups.emplace_back("C2xC2", build_abelian({2, 2}));
  groups.emplace_back("C5", build_abelian({5}));
  groups.emplace_back("C6", build_abelian({6}));
  groups.emplace_back("C7", build_abelian({7}));
  groups.emplace_back("C8", build_abelian({8}));
  groups.emplace_back("C4xC2", build_abelian({4, 2}));
  groups.emplace_back("C2^3", build_abelian({2, 2, 2}));
  groups.emplace_back("C9", build_abelian({9}));
  groups.emplace_back("C3xC3", build_abelian({3, 3}));
  groups.emplace_back("C10", build_abelian({10}));
  groups.emplace_back("S3", build_dihedral(3));
  groups.emplace_back("D4", build_dihedral(4));
  groups.emplace_back("Q8", build_quaternion8());

  const int threads = default_thread_count();
  for (const auto& [name, g] : groups) {
    TStructure t = brute_nhol(g, 40'000'000, threads);
    c.expect(t.elementary_abelian_2(), name + ": T(G) not elementary 2-abelian");
    const u64 expected = g.abelian() ? 1 : 2;
    c.expect(t.pi_minus1_coset_order == expected, name + ": inversion coset order wrong");

    auto fast = enumerate_aut(g, {}, threads);
    auto brute = brute_aut(g);
    std::set<Perm> fs, bs;
    for (const auto& a : fast) fs.insert(a.map);
    for (const auto& a : brute) bs.insert(a.map);
    c.expect(fs == bs, name + ": aut enumeration disagrees with the oracle");
  }
}

void heisenberg_predictions(Checker& c) {
  GroupTable h = build_heisenberg(3);
  for (u64 ell : {2, 4, 5, 7, 8}) {
    PowerMapCheck res = power_map_check(h, 3, ell);
    c.expect(res.applicable, "ell=" + std::to_string(ell) + " not applicable");
    c.expect(res.in_nhol, "ell=" + std::to_string(ell) + " not in NHol");
    c.expect(res.agrees(), "ell=" + std::to_string(ell) + " disagrees with prediction");
    c.expect(res.coset_trivial == (ell % 3 == 1),
             "ell=" + std::to_string(ell) + " triviality wrong");
  }
  c.expect(coset_order_in_T(h, power_perm(h, 2), 4) == 2, "squaring coset order != 2");
}

void regular_subgroup_counts(Checker& c) {
  c.expect(regular_subgroup_check(build_abelian({3})), "C3 count mismatch");
  c.expect(regular_subgroup_check(build_abelian({4})), "C4 count mismatch");
  c.expect(regular_subgroup_check(build_abelian({5})), "C5 count mismatch");
  c.expect(regular_subgroup_check(build_dihedral(3)), "S3 count mismatch");
}

}  // namespace

int main() {
  criterion(1, "order-63 flagship run", 5.0, flagship_order_63);
  criterion(2, "order-1539 run with both condition-3 paths", 600.0, large_run_1539);
  criterion(3, "two-factor order-17325 run, coset order 15", 0.0, multi_factor_17325);
  criterion(4, "modular arithmetic property suite", 60.0, modular_property_suite);
  criterion(5, "conjugation identity suite with broken fixture", 120.0, identity_suite);
  criterion(6, "brute-force oracle concordance", 300.0, oracle_concordance);
  criterion(7, "power-map predictions on the order-27 group", 10.0, heisenberg_predictions);
  criterion(8, "regular subgroup correspondence", 120.0, regular_subgroup_counts);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
