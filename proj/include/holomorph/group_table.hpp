#ifndef HOLOMORPH_GROUP_TABLE_HPP_
#define HOLOMORPH_GROUP_TABLE_HPP_

#include <fstream>
#include <istream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "holomorph/base.hpp"
#include "holomorph/group_ops.hpp"

namespace holomorph {

// A finite group given by its full multiplication table. Index 0 is the
// identity. Construction validates the table: identity row/column, Latin
// property, two-sided inverses, and associativity (all triples up to
// kFullAssocLimit elements, a fixed-seed random sample above).
class GroupTable {
 public:
  static constexpr int kDefaultCap = 4096;
  static constexpr int kFullAssocLimit = 512;
  static constexpr long kSampledTriples = 1'000'000;

  GroupTable(int n, std::vector<elem_t> table) : n_(n), mul_(std::move(table)) {
    validate();
    inv_.resize(n_);
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        if (mul(x, y) == 0) {
          if (mul(y, x) != 0) throw InputError("group table: inverse is one-sided");
          inv_[x] = static_cast<elem_t>(y);
          break;
        }
      }
    }
    order_.resize(n_);
    exponent_ = 1;
    for (int x = 0; x < n_; ++x) {
      order_[x] = element_order(*this, x);
      exponent_ = std::lcm(exponent_, order_[x]);
    }
    abelian_ = holomorph::is_abelian(*this);
  }

  int size() const { return n_; }
  int mul(int x, int y) const { return mul_[static_cast<size_t>(x) * n_ + y]; }
  int inv(int x) const { return inv_[x]; }
  u64 order(int x) const { return order_[x]; }
  u64 exponent() const { return exponent_; }
  bool abelian() const { return abelian_; }
  std::span<const elem_t> mul_table() const { return mul_; }

 private:
  void validate() const {
    if (n_ < 1) throw InputError("group table: order must be at least 1");
    if (mul_.size() != static_cast<size_t>(n_) * n_)
      throw InputError("group table: table is not n x n");
    for (elem_t v : mul_)
      if (v < 0 || v >= n_) throw InputError("group table: entry out of range");
    for (int x = 0; x < n_; ++x) {
      if (mul(0, x) != x || mul(x, 0) != x)
        throw InputError("group table: element 0 is not a two-sided identity");
    }
    std::vector<char> seen(n_);
    for (int x = 0; x < n_; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int y = 0; y < n_; ++y) {
        if (seen[mul(x, y)]++) throw InputError("group table: row " + std::to_string(x) +
                                                " is not a permutation (not a Latin square)");
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (int y = 0; y < n_; ++y) {
        if (seen[mul(y, x)]++) throw InputError("group table: column " + std::to_string(x) +
                                                " is not a permutation (not a Latin square)");
      }
    }
    if (n_ <= kFullAssocLimit) {
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          for (int z = 0; z < n_; ++z)
            if (mul(mul(x, y), z) != mul(x, mul(y, z)))
              throw InputError("group table: associativity fails at (" + std::to_string(x) +
                               "," + std::to_string(y) + "," + std::to_string(z) + ")");
    } else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
      std::uniform_int_distribution<int> pick(0, n_ - 1);
      for (long i = 0; i < kSampledTriples; ++i) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
          throw InputError("group table: associativity fails at (" + std::to_string(x) + "," +
                           std::to_string(y) + "," + std::to_string(z) + ")");
      }
    }
  }

  int n_;
  std::vector<elem_t> mul_;
  std::vector<elem_t> inv_;
  std::vector<u64> order_;
  u64 exponent_ = 1;
  bool abelian_ = true;
};

// Direct product of cyclic groups, elements in mixed-radix order.
inline GroupTable build_abelian(const std::vector<u64>& cyclic_factors,
                                int cap = GroupTable::kDefaultCap) {
  u64 n = 1;
  for (u64 f : cyclic_factors) {
    if (f < 2) throw InputError("build_abelian: cyclic factors must be at least 2");
    n *= f;
    if (n > static_cast<u64>(cap)) throw CapExceeded("build_abelian: size cap exceeded");
  }
  const int nn = static_cast<int>(n);
  const int r = static_cast<int>(cyclic_factors.size());
  std::vector<elem_t> mul(static_cast<size_t>(nn) * nn);
  std::vector<u64> strides(r, 1);
  for (int s = r - 2; s >= 0; --s) strides[s] = strides[s + 1] * cyclic_factors[s + 1];
  for (int x = 0; x < nn; ++x) {
    for (int y = 0; y < nn; ++y) {
      u64 z = 0;
      for (int s = 0; s < r; ++s) {
        u64 xs = (x / strides[s]) % cyclic_factors[s];
        u64 ys = (y / strides[s]) % cyclic_factors[s];
        z += ((xs + ys) % cyclic_factors[s]) * strides[s];
      }
      mul[static_cast<size_t>(x) * nn + y] = static_cast<elem_t>(z);
    }
  }
  return GroupTable(nn, std::move(mul));
}

inline GroupTable build_cyclic(u64 n, int cap = GroupTable::kDefaultCap) {
  return build_abelian({n}, cap);
}

// Dihedral group of order 2n: indices 0..n-1 are rotations r^i, indices
// n..2n-1 are reflections s*r^i.
inline GroupTable build_dihedral(int n) {
  if (n < 1) throw InputError("build_dihedral: n must be at least 1");
  const int nn = 2 * n;
  auto rot = [n](int i) { return ((i % n) + n) % n; };
  std::vector<elem_t> mul(static_cast<size_t>(nn) * nn);
  for (int x = 0; x < nn; ++x) {
    for (int y = 0; y < nn; ++y) {
      bool xf = x >= n, yf = y >= n;
      int a = xf ? x - n : x, b = yf ? y - n : y;
      int z;
      if (!xf && !yf) z = rot(a + b);
      else if (!xf && yf) z = n + rot(b - a);
      else if (xf && !yf) z = n + rot(a + b);
      else z = rot(b - a);
      mul[static_cast<size_t>(x) * nn + y] = static_cast<elem_t>(z);
    }
  }
  return GroupTable(nn, std::move(mul));
}

// Quaternion group of order 8: index = 2*axis + sign, axes 1,i,j,k.
inline GroupTable build_quaternion8() {
  // Multiplication of units: axis table and sign table for {1, i, j, k}.
  static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{+1, +1, +1, +1},
                                 {+1, -1, +1, -1},
                                 {+1, -1, -1, +1},
                                 {+1, +1, -1, -1}};
  std::vector<elem_t> mul(64);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int ax = x / 2, sx = x % 2 ? -1 : +1;
      int ay = y / 2, sy = y % 2 ? -1 : +1;
      int az = axis[ax][ay];
      int sz = sign[ax][ay] * sx * sy;
      mul[static_cast<size_t>(x) * 8 + y] = static_cast<elem_t>(2 * az + (sz < 0 ? 1 : 0));
    }
  }
  return GroupTable(8, std::move(mul));
}

// CSV multiplication table: N rows of N comma-separated 0-based indices,
// no header; row g, column h holds the index of g*h.
inline GroupTable parse_table_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<elem_t>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<elem_t> row;
    size_t pos = 0;
    int field = 0;
    while (pos <= line.size()) {
      size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      ++field;
      if (cell.empty() || cell.size() > 9 ||
          cell.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(source + ": line " + std::to_string(lineno) + ", field " +
                         std::to_string(field) + ": expected a non-negative integer, got '" +
                         cell + "'");
      row.push_back(static_cast<elem_t>(std::stol(cell)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": empty table");
  const int n = static_cast<int>(rows.size());
  std::vector<elem_t> mul;
  mul.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw InputError(source + ": line " + std::to_string(i + 1) + ": expected " +
                       std::to_string(n) + " fields, got " + std::to_string(rows[i].size()));
    mul.insert(mul.end(), rows[i].begin(), rows[i].end());
  }
  try {
    return GroupTable(n, std::move(mul));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline GroupTable import_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file: " + path);
  return parse_table_csv(in, path);
}

}  // namespace holomorph

#endif  // HOLOMORPH_GROUP_TABLE_HPP_
