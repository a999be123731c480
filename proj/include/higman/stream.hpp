#pragma once

// Total infinite sequences with memoized evaluation.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace higman {

namespace detail {

inline std::uint64_t next_serial() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace detail

/// An infinite, index-addressed sequence backed by a total generator.
///
/// Copies share the generator and the memo, so a stream behaves as a single
/// value no matter how many handles refer to it. Every stream carries a
/// process-unique serial number which memo tables use as its identity;
/// serials are never reused, so a memo keyed on them never needs to keep the
/// stream alive.
///
/// A stream is confined to one thread at a time.
template <class T>
class Stream {
 public:
  using value_type = T;
  using Generator = std::function<T(std::size_t)>;

  explicit Stream(Generator gen)
      : impl_(std::make_shared<Impl>(std::move(gen), detail::next_serial())) {}

  static Stream constant(T value) {
    return Stream([v = std::move(value)](std::size_t) { return v; });
  }

  /// Evaluates the stream at `i`; the generator runs at most once per index.
  T at(std::size_t i) const {
    Impl& s = *impl_;
    if (i < kDenseLimit) {
      if (i < s.dense.size() && s.dense[i]) return *s.dense[i];
    } else if (auto it = s.sparse.find(i); it != s.sparse.end()) {
      return it->second;
    }
    // The generator may re-enter this stream at other indices.
    T value = s.gen(i);
    if (i < kDenseLimit) {
      if (s.dense.size() <= i) s.dense.resize(i + 1);
      if (!s.dense[i]) s.dense[i] = value;
      return *s.dense[i];
    }
    return s.sparse.try_emplace(i, std::move(value)).first->second;
  }

  T operator[](std::size_t i) const { return at(i); }

  std::uint64_t serial() const { return impl_->serial; }

 private:
  static constexpr std::size_t kDenseLimit = 1u << 14;

  struct Impl {
    Impl(Generator g, std::uint64_t s) : gen(std::move(g)), serial(s) {}
    Generator gen;
    std::uint64_t serial;
    std::vector<std::optional<T>> dense;
    std::unordered_map<std::size_t, T> sparse;
  };

  std::shared_ptr<Impl> impl_;
};

/// ŝ: agrees with `s` on its indices and is `fill` everywhere after.
template <class T>
Stream<T> canonical_extension(std::vector<T> s, T fill) {
  return Stream<T>([s = std::move(s), fill = std::move(fill)](std::size_t i) {
    return i < s.size() ? s[i] : fill;
  });
}

/// ᾱn = ⟨α_0, …, α_{n-1}⟩.
template <class T>
std::vector<T> initial_segment(const Stream<T>& alpha, std::size_t n) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(alpha.at(i));
  return out;
}

/// s * α.
template <class T>
Stream<T> prepend(std::vector<T> s, Stream<T> alpha) {
  return Stream<T>([s = std::move(s), alpha = std::move(alpha)](std::size_t i) {
    return i < s.size() ? s[i] : alpha.at(i - s.size());
  });
}

/// The tail of α starting at index n.
template <class T>
Stream<T> drop(Stream<T> alpha, std::size_t n) {
  return Stream<T>([alpha = std::move(alpha), n](std::size_t i) { return alpha.at(i + n); });
}

template <class T, class F>
auto map(Stream<T> alpha, F f) {
  using U = std::invoke_result_t<F&, const T&>;
  return Stream<U>([alpha = std::move(alpha), f = std::move(f)](std::size_t i) mutable {
    return f(alpha.at(i));
  });
}

}  // namespace higman
