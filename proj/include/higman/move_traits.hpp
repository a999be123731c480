#pragma once

#include <cstddef>
#include <string>
#include <type_traits>

namespace higman {

/// How the EPS engine identifies and prints moves of type X.
///
/// `key` must return an ordered value such that equal keys denote the same
/// move; the engine shares recursion results between equal keys. The
/// default covers arithmetic moves.
template <class X>
struct MoveTraits {
  static_assert(std::is_arithmetic_v<X>, "specialize MoveTraits for non-arithmetic moves");

  static X key(const X& x) { return x; }
  static std::string describe(const X& x, std::size_t /*position*/) { return std::to_string(x); }
};

}  // namespace higman
