#ifndef HOLOMORPH_BASE_HPP_
#define HOLOMORPH_BASE_HPP_

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace holomorph {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using elem_t = std::int32_t;  // element index within a finite group

// Bad user input: malformed files, invalid parameters, inconsistent specs.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested computation exceeds its configured size budget.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// theta(tau_s) does not land in the expected cyclic factor.
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite group with elements indexed 0..size()-1 and identity at index 0.
// Models: GroupTable (materialized table) and SdpGroup (computed products).
template <class G>
concept GroupModel = requires(const G& g, int x, int y) {
  { g.size() } -> std::convertible_to<int>;
  { g.mul(x, y) } -> std::convertible_to<int>;
  { g.inv(x) } -> std::convertible_to<int>;
};

}  // namespace holomorph

#endif  // HOLOMORPH_BASE_HPP_
