#pragma once

// Seeded generators for preorders, instances and small table-driven games.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "higman/eps.hpp"
#include "higman/instance.hpp"
#include "higman/wqo.hpp"

namespace higman {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Reflexive-transitive closure of a random relation, valid by construction.
inline Preorder random_preorder(Rng& rng, std::size_t size, double density = 0.3) {
  std::bernoulli_distribution edge(density);
  Preorder::Matrix rel(size, std::vector<bool>(size, false));
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) rel[a][b] = a == b || edge(rng);
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        if (rel[a][k] && rel[k][b]) rel[a][b] = true;
      }
    }
  }
  const auto d = static_cast<Letter>(uniform(rng, 0, size - 1));
  return Preorder::validated(std::move(rel), d);
}

inline Word random_word(Rng& rng, std::size_t alphabet, std::size_t max_length) {
  std::vector<Letter> letters(uniform(rng, 0, max_length));
  for (auto& x : letters) x = static_cast<Letter>(uniform(rng, 0, alphabet - 1));
  return Word(std::move(letters));
}

struct InstanceCaps {
  std::size_t alphabet = 3;
  std::size_t prefix_words = 4;
  std::size_t word_length = 3;
  std::size_t cycle = 2;
};

inline InstanceSpec random_instance_spec(Rng& rng, const InstanceCaps& caps = {},
                                         Budgets budgets = {}) {
  Preorder order = random_preorder(rng, uniform(rng, 1, caps.alphabet));
  std::vector<Word> prefix(uniform(rng, 0, caps.prefix_words));
  for (auto& w : prefix) w = random_word(rng, order.size(), caps.word_length);
  StreamSpec stream;
  if (std::bernoulli_distribution(0.5)(rng)) {
    stream = StreamSpec::eventually_constant(std::move(prefix),
                                             random_word(rng, order.size(), caps.word_length));
  } else {
    std::vector<Word> cycle(uniform(rng, 1, caps.cycle));
    for (auto& w : cycle) w = random_word(rng, order.size(), caps.word_length);
    stream = StreamSpec::periodic(std::move(prefix), std::move(cycle));
  }
  return InstanceSpec{std::move(order), std::move(stream), budgets, std::nullopt};
}

/// A finite game with moves 0..moves-1 and natural outcomes, all of whose
/// functionals are lookup tables over short prefixes.
///
/// φ reads the first 3 moves, q the first 5. Each history up to length 4
/// has a selection rule: argmax or argmin of the evaluator (ties to the
/// smallest move), a constant move, or the first move whose value reaches a
/// threshold (else the last move).
struct TableGame {
  enum class Rule : std::uint8_t { kArgmax, kArgmin, kConstant, kThreshold };
  struct Selector {
    Rule rule;
    unsigned constant;
    std::size_t threshold;
  };

  static constexpr std::size_t kControlDepth = 3;
  static constexpr std::size_t kOutcomeDepth = 5;
  static constexpr std::size_t kHistoryDepth = 4;

  unsigned moves = 2;
  std::size_t max_control = 3;
  std::vector<std::size_t> control;  // indexed by the code of α[0,3)
  std::vector<std::size_t> outcome;  // indexed by the code of α[0,5)
  std::vector<Selector> selectors;   // indexed by history_index

  static std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
  }

  std::size_t code(const Stream<unsigned>& alpha, std::size_t len) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < len; ++i) c = c * moves + alpha.at(i);
    return c;
  }

  std::size_t history_index(std::span<const unsigned> s) const {
    std::size_t offset = 0;
    for (std::size_t l = 0; l < s.size(); ++l) offset += power(moves, l);
    std::size_t c = 0;
    for (unsigned x : s) c = c * moves + x;
    return offset + c;
  }

  unsigned select(std::span<const unsigned> s, const std::function<std::size_t(const unsigned&)>& p) const {
    const Selector sel = s.size() <= kHistoryDepth ? selectors[history_index(s)]
                                                   : Selector{Rule::kArgmax, 0, 0};
    switch (sel.rule) {
      case Rule::kConstant:
        return sel.constant;
      case Rule::kThreshold:
        for (unsigned x = 0; x < moves; ++x) {
          if (p(x) >= sel.threshold) return x;
        }
        return moves - 1;
      case Rule::kArgmax:
      case Rule::kArgmin: {
        unsigned best = 0;
        std::size_t best_value = p(0);
        for (unsigned x = 1; x < moves; ++x) {
          const std::size_t v = p(x);
          if (sel.rule == Rule::kArgmax ? v > best_value : v < best_value) {
            best = x;
            best_value = v;
          }
        }
        return best;
      }
    }
    return 0;
  }

  static TableGame random(Rng& rng, unsigned max_moves = 3, std::size_t max_control = 3) {
    TableGame g;
    g.moves = static_cast<unsigned>(uniform(rng, 1, max_moves));
    g.max_control = max_control;
    g.control.resize(power(g.moves, kControlDepth));
    for (auto& c : g.control) c = uniform(rng, 0, max_control);
    g.outcome.resize(power(g.moves, kOutcomeDepth));
    for (auto& v : g.outcome) v = uniform(rng, 0, 9);
    std::size_t histories = 0;
    for (std::size_t l = 0; l <= kHistoryDepth; ++l) histories += power(g.moves, l);
    g.selectors.resize(histories);
    for (auto& s : g.selectors) {
      s.rule = static_cast<Rule>(uniform(rng, 0, 3));
      s.constant = static_cast<unsigned>(uniform(rng, 0, g.moves - 1));
      s.threshold = uniform(rng, 0, 9);
    }
    return g;
  }

  GameInstance<unsigned, std::size_t> instance() const {
    auto self = std::make_shared<const TableGame>(*this);
    return GameInstance<unsigned, std::size_t>{
        [self](const Stream<unsigned>& a) { return self->control[self->code(a, kControlDepth)]; },
        [self](std::span<const unsigned> s, const std::function<std::size_t(const unsigned&)>& p) {
          return self->select(s, p);
        },
        [self](const Stream<unsigned>& a) { return self->outcome[self->code(a, kOutcomeDepth)]; },
        0u,
    };
  }
};

}  // namespace higman
