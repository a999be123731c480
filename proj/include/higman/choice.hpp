#pragma once

// Word-stream comparators and the choice type Y = WordStream × (WordStream → ℕ).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>

#include "higman/move_traits.hpp"
#include "higman/stream.hpp"
#include "higman/wqo.hpp"

namespace higman {

/// u ⊑ₙ v: ūn = v̄n and u_n ⊴ v_n.
inline bool smin(const WordStream& u, const WordStream& v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (u.at(i) != v.at(i)) return false;
  }
  return u.at(n).is_initial_segment_of(v.at(n));
}

/// u ⊏ₙ v: ūn = v̄n and u_n ⊲ v_n.
inline bool psmin(const WordStream& u, const WordStream& v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (u.at(i) != v.at(i)) return false;
  }
  return u.at(n).is_proper_prefix_of(v.at(n));
}

/// A function value WordStream → ℕ (the fⁿ of the minimal bad sequence).
///
/// Witnesses are opaque: they are only ever applied. Results are memoized by
/// stream serial.
class MinimalityWitness {
 public:
  using Fn = std::function<std::size_t(const WordStream&)>;

  explicit MinimalityWitness(Fn fn)
      : impl_(std::make_shared<Impl>(std::move(fn), detail::next_serial())) {}

  static MinimalityWitness zero() {
    return MinimalityWitness([](const WordStream&) -> std::size_t { return 0; });
  }

  std::size_t operator()(const WordStream& q) const {
    Impl& s = *impl_;
    if (auto it = s.memo.find(q.serial()); it != s.memo.end()) return it->second;
    std::size_t v = s.fn(q);
    s.memo.emplace(q.serial(), v);
    return v;
  }

  std::uint64_t serial() const { return impl_->serial; }

 private:
  struct Impl {
    Impl(Fn f, std::uint64_t s) : fn(std::move(f)), serial(s) {}
    Fn fn;
    std::uint64_t serial;
    std::unordered_map<std::uint64_t, std::size_t> memo;
  };

  std::shared_ptr<Impl> impl_;
};

/// One move of the minimal-bad-sequence game: a stage sequence together with
/// its minimality witness.
struct YPair {
  WordStream stream;
  MinimalityWitness witness;
};

/// 0_Y: the constant-empty-word stream with the constant-zero witness.
inline YPair default_ypair() { return YPair{empty_word_stream(), MinimalityWitness::zero()}; }

template <>
struct MoveTraits<YPair> {
  static std::pair<std::uint64_t, std::uint64_t> key(const YPair& y) {
    return {y.stream.serial(), y.witness.serial()};
  }
  /// The word a stage contributes at its own position.
  static std::string describe(const YPair& y, std::size_t position) {
    return y.stream.at(position).str();
  }
};

}  // namespace higman
