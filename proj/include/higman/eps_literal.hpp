#pragma once

// Direct transcription of the EPS recursion schema with explicitly shifted
// outcomes q_x(α) = q(x * α) and no memoization. Exponential; kept as a
// reference for differential testing of SelectionProduct on small games.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "higman/eps.hpp"
#include "higman/stream.hpp"

namespace higman {

namespace detail {

template <class X, class R>
Stream<X> eps_literal_rec(const GameInstance<X, R>& game, const std::vector<X>& s,
                          const std::function<R(const Stream<X>&)>& q, std::size_t& budget) {
  if (budget == 0) throw BudgetExhausted("literal EPS budget exhausted");
  --budget;
  if (game.control(canonical_extension(s, game.default_move)) < s.size()) {
    return Stream<X>::constant(game.default_move);
  }
  auto shifted = [&q](const X& x) {
    return std::function<R(const Stream<X>&)>(
        [q, x](const Stream<X>& alpha) { return q(prepend(std::vector<X>{x}, alpha)); });
  };
  auto extended = [&s](const X& x) {
    std::vector<X> t = s;
    t.push_back(x);
    return t;
  };
  typename GameInstance<X, R>::Evaluator k = [&](const X& x) {
    auto qx = shifted(x);
    return qx(eps_literal_rec(game, extended(x), qx, budget));
  };
  const X a = game.select(std::span<const X>(s), k);
  auto qa = shifted(a);
  return prepend(std::vector<X>{a}, eps_literal_rec(game, extended(a), qa, budget));
}

}  // namespace detail

/// EPS_{φ,ε,q}(s) evaluated literally.
template <class X, class R>
Stream<X> eps_literal(const GameInstance<X, R>& game, const std::vector<X>& s,
                      std::size_t budget = 1'000'000) {
  std::function<R(const Stream<X>&)> q = game.outcome;
  // q at history s is q shifted by s.
  if (!s.empty()) {
    q = [outcome = game.outcome, s](const Stream<X>& alpha) { return outcome(prepend(s, alpha)); };
  }
  return detail::eps_literal_rec(game, s, q, budget);
}

}  // namespace higman
