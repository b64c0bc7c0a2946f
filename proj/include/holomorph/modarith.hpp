#ifndef HOLOMORPH_MODARITH_HPP_
#define HOLOMORPH_MODARITH_HPP_

#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "holomorph/base.hpp"

namespace holomorph {

using bigint = boost::multiprecision::cpp_int;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 x, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  x %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, x, m);
    x = mulmod(x, x, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for the sizes this library accepts (parameters fit in 32 bits).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d : {2ULL, 3ULL, 5ULL}) {
    if (n % d == 0) return n == d;
  }
  for (u64 d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Exact power of p dividing n. Undefined (rejected) for n = 0.
inline u64 padic_val(u64 p, u64 n) {
  if (n == 0) throw std::invalid_argument("padic_val: valuation of 0 is undefined");
  if (p < 2) throw std::invalid_argument("padic_val: p must be at least 2");
  u64 v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline u64 padic_val(u64 p, const bigint& n) {
  if (n == 0) throw std::invalid_argument("padic_val: valuation of 0 is undefined");
  if (p < 2) throw std::invalid_argument("padic_val: p must be at least 2");
  bigint m = n < 0 ? bigint(-n) : n;
  u64 v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

// x_t: exact power of p dividing (t+1)!, by the floor-sum formula.
inline u64 factorial_val(u64 p, u64 t) {
  if (p < 2) throw std::invalid_argument("factorial_val: p must be at least 2");
  u64 n = t + 1;
  u64 v = 0;
  for (u64 q = p; q <= n; q *= p) {
    v += n / q;
    if (q > n / p) break;  // next q would overflow
  }
  return v;
}

// S(x, i) = 1 + x + ... + x^(i-1), exactly. S(x, 0) = 0.
inline bigint geom_sum(const bigint& x, u64 i) {
  if (x < 1) throw std::invalid_argument("geom_sum: x must be positive");
  if (i == 0) return 0;
  if (x == 1) return bigint(i);
  bigint num = boost::multiprecision::pow(x, static_cast<unsigned>(i)) - 1;
  return num / (x - 1);
}

inline bigint geom_sum(u64 x, u64 i) { return geom_sum(bigint(x), i); }

// S(x, i) mod m in O(log i) multiplications, via the pair recursion
//   S(x, 2j)   = S(x, j) * (1 + x^j)
//   S(x, 2j+1) = S(x, 2j) + x^(2j).
inline u64 geom_sum_mod(u64 x, u64 i, u64 m) {
  if (m == 0) throw std::invalid_argument("geom_sum_mod: modulus must be positive");
  if (m == 1) return 0;
  x %= m;
  u64 sum = 0;   // S(x, prefix)
  u64 pw = 1;    // x^prefix
  for (int b = 63 - std::countl_zero(i | 1); b >= 0 && i != 0; --b) {
    sum = mulmod(sum, 1 + pw, m);
    pw = mulmod(pw, pw, m);
    if ((i >> b) & 1) {
      sum = (sum + pw) % m;
      pw = mulmod(pw, x, m);
    }
  }
  return sum;
}

// Smallest l >= 1 with k^l = 1 (mod modulus). Requires gcd(k, modulus) = 1.
inline u64 mult_order_mod(u64 k, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("mult_order_mod: modulus must be positive");
  if (modulus == 1) return 1;
  k %= modulus;
  if (std::gcd(k, modulus) != 1)
    throw std::invalid_argument("mult_order_mod: k and modulus are not coprime");
  u64 t = k;
  u64 ord = 1;
  while (t != 1) {
    t = mulmod(t, k, modulus);
    ++ord;
    if (ord > modulus) throw std::logic_error("mult_order_mod: order not found");
  }
  return ord;
}

// k' with k*k' = 1 (mod modulus), 0 <= k' < modulus. Requires coprimality.
inline u64 mod_inverse(u64 k, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (modulus == 1) return 0;
  i64 r0 = static_cast<i64>(modulus), r1 = static_cast<i64>(k % modulus);
  i64 s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: k and modulus are not coprime");
  i64 inv = s0 % static_cast<i64>(modulus);
  if (inv < 0) inv += static_cast<i64>(modulus);
  return static_cast<u64>(inv);
}

// Parameters of a unit k = 1 + u*p^m congruent to 1 mod p^m but not p^(m+1).
struct GeomParams {
  u64 p = 0;
  u64 u = 0;
  u64 m = 0;

  GeomParams(u64 p_, u64 u_, u64 m_) : p(p_), u(u_), m(m_) {
    if (!is_prime(p)) throw InputError("GeomParams: p = " + std::to_string(p) + " is not prime");
    if (u == 0 || u % p == 0)
      throw InputError("GeomParams: u must be positive and not divisible by p");
    if (m == 0) throw InputError("GeomParams: m must be at least 1");
    if (p == 2 && m < 2) throw InputError("GeomParams: m must be at least 2 when p = 2");
    unsigned __int128 k128 = 1;
    for (u64 i = 0; i < m; ++i) k128 *= p;
    k128 = k128 * u + 1;
    if (k128 > UINT64_MAX) throw InputError("GeomParams: k = 1 + u*p^m overflows");
  }

  u64 eps() const { return p == 2 ? 1 : 0; }

  u64 pm() const {
    u64 q = 1;
    for (u64 i = 0; i < m; ++i) q *= p;
    return q;
  }

  u64 k() const { return 1 + u * pm(); }
};

inline u64 pow_u64(u64 b, u64 e) {
  unsigned __int128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= b;
    if (r > UINT64_MAX) throw std::overflow_error("pow_u64: overflow");
  }
  return static_cast<u64>(r);
}

// The permutation i -> S(k, i) of Z/p^n, tabulated with its inverse.
struct GeomSumTable {
  GeomParams params;
  u64 n = 0;
  u64 modulus = 0;              // p^n
  std::vector<u64> image;      // image[i] = S(k, i) mod p^n
  std::vector<u64> pre;        // pre[image[i]] = i

  u64 preimage(u64 i) const { return pre.at(i); }
};

inline GeomSumTable build_geom_sum_table(const GeomParams& params, u64 n) {
  if (n == 0) throw InputError("build_geom_sum_table: n must be at least 1");
  u64 pn = 1;
  for (u64 i = 0; i < n; ++i) {
    if (pn > (1ULL << 26) / params.p)
      throw CapExceeded("build_geom_sum_table: p^n too large to tabulate");
    pn *= params.p;
  }
  GeomSumTable t{params, n, pn, {}, {}};
  t.image.resize(pn);
  t.pre.assign(pn, pn);  // sentinel
  u64 k = params.k() % pn;
  u64 sum = 0, pw = 1;
  for (u64 i = 0; i < pn; ++i) {
    t.image[i] = sum;
    if (t.pre[sum] != pn)
      throw std::logic_error("build_geom_sum_table: image is not injective");
    t.pre[sum] = i;
    sum = (sum + pw) % pn;
    pw = mulmod(pw, k, pn);
  }
  if (t.image[0] != 0 || (pn > 1 && t.image[1] != 1))
    throw std::logic_error("build_geom_sum_table: expected fixed points missing");
  return t;
}

}  // namespace holomorph

#endif  // HOLOMORPH_MODARITH_HPP_
