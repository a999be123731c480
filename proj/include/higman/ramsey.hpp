#pragma once

// Realizers for the no-counterexample reading of "every letter sequence has
// an infinite monotone subsequence": given x and a counterexample functional
// φ, produce g with g(i) < g(j) and x_{g(i)} ≤ x_{g(j)} for all i < j ≤ φ(g).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "higman/eps.hpp"
#include "higman/stream.hpp"
#include "higman/wqo.hpp"

namespace higman {

/// A strictly increasing ℕ → ℕ map, as a stream of naturals.
using MonotoneMap = Stream<std::size_t>;
using CounterexampleFn = std::function<std::size_t(const MonotoneMap&)>;
using RamseyRealizer = std::function<MonotoneMap(const LetterStream&, const CounterexampleFn&)>;

/// ∀ i < j ≤ φ(g): g(i) < g(j) ∧ x_{g(i)} ≤ x_{g(j)}.
inline bool ramsey_contract_holds(const Preorder& order, const LetterStream& x,
                                  const MonotoneMap& g, std::size_t phi_g) {
  for (std::size_t j = 1; j <= phi_g; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!(g.at(i) < g.at(j)) || !order.leq(x.at(g.at(i)), x.at(g.at(j)))) return false;
    }
  }
  return true;
}

/// Infinite pigeonhole by iterative deepening.
///
/// For scan lengths k = 1, 2, 4, …: take the most frequent letter c among
/// x_0..x_{k-1} (ties to the smallest index), let g list the m positions of
/// c and continue past them by g(i) = g(m-1) + 1 + (i - m). Accept g once
/// φ(g) < m. Every compared pair then holds equal letters.
inline MonotoneMap pigeonhole_realize(const Preorder& order, const LetterStream& x,
                                      const CounterexampleFn& phi,
                                      std::size_t scan_cap = std::size_t{1} << 20) {
  std::vector<std::size_t> counts(order.size());
  std::size_t scanned = 0;
  for (std::size_t k = 1; k <= scan_cap; k *= 2) {
    for (; scanned < k; ++scanned) {
      const Letter c = x.at(scanned);
      if (c >= counts.size()) {
        throw InvalidWord("letter " + std::to_string(c) + " at position " +
                          std::to_string(scanned) + " is outside the alphabet");
      }
      ++counts[c];
    }
    const auto best = static_cast<Letter>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < k; ++i) {
      if (x.at(i) == best) positions.push_back(i);
    }
    const std::size_t m = positions.size();
    MonotoneMap g([positions](std::size_t i) {
      return i < positions.size() ? positions[i]
                                  : positions.back() + 1 + (i - positions.size());
    });
    if (phi(g) < m) return g;
  }
  throw BudgetExhausted("pigeonhole scan cap of " + std::to_string(scan_cap) + " exceeded");
}

inline RamseyRealizer pigeonhole_realizer(Preorder order,
                                          std::size_t scan_cap = std::size_t{1} << 20) {
  return [order = std::move(order), scan_cap](const LetterStream& x, const CounterexampleFn& phi) {
    return pigeonhole_realize(order, x, phi, scan_cap);
  };
}

}  // namespace higman
