#pragma once

// Independent oracles and generators shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "higman/choice.hpp"
#include "higman/mbs.hpp"
#include "higman/random.hpp"
#include "higman/wqo.hpp"

namespace higman::oracle {

/// Tries every strictly increasing map |a| -> |b|.
inline bool embeds_exhaustive(const Preorder& order, const Word& a, const Word& b) {
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t from) {
    if (i == a.size()) return true;
    for (std::size_t j = from; j < b.size(); ++j) {
      if (order.leq(a[i], b[j]) && go(i + 1, j + 1)) return true;
    }
    return false;
  };
  return go(0, 0);
}

/// Badness of u_0..u_j, by checking every pair with the exhaustive oracle.
inline bool bad_prefix(const Preorder& order, const WordStream& u, std::size_t j) {
  for (std::size_t i1 = 1; i1 <= j; ++i1) {
    for (std::size_t i0 = 0; i0 < i1; ++i0) {
      if (embeds_exhaustive(order, u.at(i0), u.at(i1))) return false;
    }
  }
  return true;
}

inline bool same_prefix(const WordStream& a, const WordStream& b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

inline bool strictly_below_at(const WordStream& a, const WordStream& b, std::size_t n) {
  return same_prefix(a, b, n) && a.at(n).is_proper_prefix_of(b.at(n));
}

/// Every preorder on `size` letters, by brute force over all matrices.
inline std::vector<Preorder> all_preorders(std::size_t size) {
  std::vector<Preorder> out;
  const std::size_t cells = size * size;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
    Preorder::Matrix m(size, std::vector<bool>(size));
    for (std::size_t c = 0; c < cells; ++c) m[c / size][c % size] = (mask >> c) & 1;
    try {
      out.push_back(Preorder::validated(std::move(m)));
    } catch (const InvalidPreorder&) {
    }
  }
  return out;
}

/// Every word of length at most `max_length` over `alphabet` letters.
inline std::vector<Word> all_words(std::size_t alphabet, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (Letter x = 0; x < alphabet; ++x) next.push_back(w.appended(x));
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// A random selection problem: a stage context plus table-driven J and Q.
///
/// Q keeps the argument's stream below the stage, puts a (table-chosen)
/// prefix of its stage word at the stage, and fills the rest from a table,
/// so the ⊏ₙ premise fires regularly. J reads the first few words of the
/// argument and the witness applied to the argument's own stream.
struct SelectionProblem {
  MbsContext ctx;
  JFn J;
  QFn Q;
};

inline std::size_t word_code(const Word& w) {
  std::size_t c = w.size();
  for (Letter x : w) c = c * 5 + x + 1;
  return c;
}

inline SelectionProblem random_selection_problem(Rng& rng, std::size_t max_word = 3) {
  const Preorder order = random_preorder(rng, uniform(rng, 1, 3));
  const std::size_t stage = uniform(rng, 0, 3);
  std::vector<Word> words(stage + 4);
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = random_word(rng, order.size(), i == stage ? max_word : 2);
  }
  if (uniform(rng, 0, 3) != 0) {
    // Mostly demand a long stage word so the search has several candidates.
    std::vector<Letter> letters(max_word);
    for (auto& x : letters) x = static_cast<Letter>(uniform(rng, 0, order.size() - 1));
    words[stage] = Word(std::move(letters));
  }
  const WordStream w = canonical_extension(words, Word{});

  std::vector<std::size_t> j_table(16);
  for (auto& v : j_table) v = uniform(rng, 0, 5);
  std::vector<std::size_t> cut_table(16);
  for (auto& v : cut_table) v = uniform(rng, 0, 4);
  std::vector<Word> fill(8);
  for (auto& f : fill) f = random_word(rng, order.size(), 2);

  JFn J = [j_table, stage](const YPair& y) {
    std::size_t h = y.witness(y.stream);
    for (std::size_t i = 0; i <= stage + 1; ++i) h = h * 31 + word_code(y.stream.at(i));
    return j_table[h % j_table.size()];
  };
  QFn Q = [cut_table, fill, stage](const YPair& y) {
    const Word at = y.stream.at(stage);
    const std::size_t key = word_code(at) + 7 * y.witness(y.stream);
    const std::size_t cut = std::min(at.size(), cut_table[key % cut_table.size()]);
    const Word head(std::vector<Letter>(at.begin(), at.begin() + static_cast<long>(cut)));
    const WordStream src = y.stream;
    return WordStream([src, head, fill, stage, key](std::size_t i) {
      if (i < stage) return src.at(i);
      if (i == stage) return head;
      return fill[(key + i) % fill.size()];
    });
  };
  return {MbsContext{order, stage, w}, std::move(J), std::move(Q)};
}

/// The three selection conjuncts evaluated directly from their definition.
struct ContractOracle {
  bool prefix_kept;
  bool badness_kept;
  bool minimal;
  bool premise;
  bool holds() const { return prefix_kept && badness_kept && minimal; }
};

inline ContractOracle selection_oracle(const SelectionProblem& p, const YPair& e) {
  const std::size_t n = p.ctx.stage;
  ContractOracle c{};
  c.prefix_kept = same_prefix(p.ctx.previous, e.stream, n);
  const std::size_t j = p.J(e);
  c.badness_kept =
      !bad_prefix(p.ctx.order, p.ctx.previous, j) || bad_prefix(p.ctx.order, e.stream, j);
  const WordStream q = p.Q(e);
  c.premise = strictly_below_at(q, e.stream, n);
  c.minimal = !c.premise || !bad_prefix(p.ctx.order, q, e.witness(q));
  return c;
}

/// Nesting, badness transfer and minimality of a finished run, evaluated
/// with the exhaustive oracle.
inline bool mbs_oracle_holds(const Preorder& order, const MbsApproximation& a) {
  const std::size_t bound = a.outcome.first;
  const WordStream& psi = a.outcome.second;
  for (std::size_t n = 0; n <= a.horizon; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const WordStream prev = a.stage(sn - 1);
    const WordStream cur = a.stage(sn);
    if (!same_prefix(prev, cur, n)) return false;
    if (bad_prefix(order, prev, bound) && !bad_prefix(order, cur, bound)) return false;
    if (strictly_below_at(psi, cur, n) && bad_prefix(order, psi, a.witness(n)(psi))) return false;
  }
  return true;
}

/// g(i) < g(j) and x_{g(i)} ≤ x_{g(j)} for all i < j ≤ bound.
inline bool monotone_below(const Preorder& order, const LetterStream& x,
                           const Stream<std::size_t>& g, std::size_t bound) {
  for (std::size_t j = 0; j <= bound; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (g.at(i) >= g.at(j) || !order.leq(x.at(g.at(i)), x.at(g.at(j)))) return false;
    }
  }
  return true;
}

}  // namespace higman::oracle
