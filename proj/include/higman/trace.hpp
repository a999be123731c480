#pragma once

// Structured recursion records for EPS runs, selections and Ψ-splices.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace higman {

/// One EPS invocation (a non-memoized continuation computation).
struct EpsEvent {
  std::size_t depth;           // nesting depth of the invocation
  std::size_t history_length;  // |s|
  std::optional<std::string> move;
  std::size_t control;  // φ(ŝ)
  bool stopped;         // φ(ŝ) < |s|
  std::size_t call;     // running invocation counter, 1-based
};

/// One call of the minimal-bad-sequence selection function.
struct SelectionEvent {
  std::size_t stage;        // n
  std::size_t word_length;  // |w_n|
  std::size_t chosen;       // the index i of the returned ⟨p_i, f_i⟩
  std::size_t candidates;   // how many indices were tested
  bool premise_fired;       // Qε ⊏ₙ ε⁰ at the returned pair, when checked
};

/// One evaluation of Ψ on a play, for inspecting lexicographic descent.
struct SpliceEvent {
  std::size_t g0;
  std::size_t phi_g;
  std::size_t bound;
  std::vector<std::string> prefix;  // the first words of Ψ
};

using TraceRecord = std::variant<EpsEvent, SelectionEvent, SpliceEvent>;

class TraceLog {
 public:
  void add(TraceRecord r) { records_.push_back(std::move(r)); }

  const std::vector<TraceRecord>& records() const { return records_; }

  template <class T>
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& r : records_) n += std::holds_alternative<T>(r) ? 1 : 0;
    return n;
  }

  void clear() { records_.clear(); }

  static nlohmann::json to_json(const TraceRecord& r) {
    using nlohmann::json;
    return std::visit(
        [](const auto& e) -> json {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, EpsEvent>) {
            return json{{"kind", "eps"},
                        {"depth", e.depth},
                        {"history_length", e.history_length},
                        {"move", e.move ? json(*e.move) : json(nullptr)},
                        {"control", e.control},
                        {"stopped", e.stopped},
                        {"call", e.call}};
          } else if constexpr (std::is_same_v<E, SelectionEvent>) {
            return json{{"kind", "selection"},
                        {"stage", e.stage},
                        {"word_length", e.word_length},
                        {"chosen", e.chosen},
                        {"candidates", e.candidates},
                        {"premise_fired", e.premise_fired}};
          } else {
            return json{{"kind", "splice"},
                        {"g0", e.g0},
                        {"phi_g", e.phi_g},
                        {"bound", e.bound},
                        {"prefix", e.prefix}};
          }
        },
        r);
  }

  /// One JSON object per line.
  void write_json_lines(std::ostream& os) const {
    for (const auto& r : records_) os << to_json(r).dump() << '\n';
  }

 private:
  std::vector<TraceRecord> records_;
};

}  // namespace higman
