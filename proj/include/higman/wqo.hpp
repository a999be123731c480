#pragma once

// Decidable preorders, words over them, and the Higman embedding.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "higman/stream.hpp"

namespace higman {

using Letter = std::uint32_t;

class InvalidPreorder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidWord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite alphabet 0..size-1 with a reflexive, transitive relation stored
/// as a matrix, plus the designated canonical letter 0_X.
class Preorder {
 public:
  using Matrix = std::vector<std::vector<bool>>;

  /// Checks the matrix and keeps it unchanged. Throws InvalidPreorder naming
  /// the first offending diagonal entry or triple.
  static Preorder validated(Matrix rel, Letter default_letter = 0) {
    const std::size_t n = rel.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (rel[a].size() != n) {
        throw InvalidPreorder("not square: row " + std::to_string(a) + " has " +
                              std::to_string(rel[a].size()) + " entries, expected " +
                              std::to_string(n));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!rel[a][a]) throw InvalidPreorder("not reflexive at " + std::to_string(a));
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!rel[a][b]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (rel[b][c] && !rel[a][c]) {
            throw InvalidPreorder("not transitive (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    if (n == 0) throw InvalidPreorder("empty alphabet");
    if (default_letter >= n) {
      throw InvalidPreorder("default letter " + std::to_string(default_letter) +
                            " out of range for size " + std::to_string(n));
    }
    return Preorder(std::move(rel), default_letter);
  }

  static Preorder equality(std::size_t size, Letter default_letter = 0) {
    Matrix rel(size, std::vector<bool>(size, false));
    for (std::size_t a = 0; a < size; ++a) rel[a][a] = true;
    return validated(std::move(rel), default_letter);
  }

  std::size_t size() const { return rel_.size(); }
  bool leq(Letter a, Letter b) const { return rel_[a][b]; }
  Letter default_letter() const { return default_letter_; }
  const Matrix& relation() const { return rel_; }

  friend bool operator==(const Preorder&, const Preorder&) = default;

 private:
  Preorder(Matrix rel, Letter d) : rel_(std::move(rel)), default_letter_(d) {}

  Matrix rel_;
  Letter default_letter_;
};

/// A finite word of letter indices.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  /// Builds a word and checks every letter against `order`.
  static Word over(const Preorder& order, std::vector<Letter> letters) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (letters[i] >= order.size()) {
        throw InvalidWord("letter " + std::to_string(letters[i]) + " at position " +
                          std::to_string(i) + " is outside an alphabet of size " +
                          std::to_string(order.size()));
      }
    }
    return Word(std::move(letters));
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<Letter>& letters() const { return letters_; }

  Word appended(Letter x) const {
    Word w = *this;
    w.letters_.push_back(x);
    return w;
  }

  /// a ⊴ b
  bool is_initial_segment_of(const Word& b) const {
    if (size() > b.size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      if (letters_[i] != b.letters_[i]) return false;
    }
    return true;
  }

  /// a ⊲ b
  bool is_proper_prefix_of(const Word& b) const {
    return size() < b.size() && is_initial_segment_of(b);
  }

  std::string str() const {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < letters_.size(); ++i) os << (i ? "," : "") << letters_[i];
    os << '>';
    return os.str();
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

using WordStream = Stream<Word>;
using LetterStream = Stream<Letter>;

/// Witness that u_{i0} embeds into u_{i1}.
struct GoodPair {
  std::size_t i0;
  std::size_t i1;
  friend bool operator==(const GoodPair&, const GoodPair&) = default;
};

/// a ≤_{X*} b. Greedy earliest matching: each a_i takes the first unused
/// position of b whose letter dominates it, which finds an embedding
/// whenever one exists.
inline bool word_embeds(const Preorder& order, const Word& a, const Word& b) {
  std::size_t j = 0;
  for (Letter x : a) {
    while (j < b.size() && !order.leq(x, b[j])) ++j;
    if (j == b.size()) return false;
    ++j;
  }
  return true;
}

/// θ(u, j): no i0 < i1 ≤ j has u_{i0} ≤* u_{i1}.
inline bool theta(const Preorder& order, const WordStream& u, std::size_t j) {
  std::vector<Word> prefix = initial_segment(u, j + 1);
  for (std::size_t i0 = 0; i0 < prefix.size(); ++i0) {
    for (std::size_t i1 = i0 + 1; i1 < prefix.size(); ++i1) {
      if (word_embeds(order, prefix[i0], prefix[i1])) return false;
    }
  }
  return true;
}

/// The least good pair below `bound`, ordered by i1 then i0.
inline std::optional<GoodPair> find_good_pair(const Preorder& order, const WordStream& u,
                                              std::size_t bound) {
  std::vector<Word> seen;
  seen.reserve(bound + 1);
  for (std::size_t i1 = 0; i1 <= bound; ++i1) {
    Word w = u.at(i1);
    for (std::size_t i0 = 0; i0 < i1; ++i0) {
      if (word_embeds(order, seen[i0], w)) return GoodPair{i0, i1};
    }
    seen.push_back(std::move(w));
  }
  return std::nullopt;
}

/// Splits w into (ft w, lt w); the empty word gives (⟨⟩, 0_X).
inline std::pair<Word, Letter> ft_lt(const Word& w, const Preorder& order) {
  if (w.empty()) return {Word{}, order.default_letter()};
  std::vector<Letter> front(w.begin(), w.end() - 1);
  return {Word(std::move(front)), w[w.size() - 1]};
}

/// fts(p)_i = ft(pⁱ_i) and lts(p)_i = lt(pⁱ_i).
inline std::pair<WordStream, LetterStream> diagonals(const Stream<WordStream>& family,
                                                     const Preorder& order) {
  WordStream fts([family, order](std::size_t i) {
    return ft_lt(family.at(i).at(i), order).first;
  });
  LetterStream lts([family, order](std::size_t i) {
    return ft_lt(family.at(i).at(i), order).second;
  });
  return {std::move(fts), std::move(lts)};
}

inline WordStream empty_word_stream() { return WordStream::constant(Word{}); }

}  // namespace higman
