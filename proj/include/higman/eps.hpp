#pragma once

// The explicitly controlled product of selection functions.
//
//   EPS(s) = 0^ω                    if φ(ŝ) < |s|
//          = a_s * EPS_{q_{a_s}}(s * a_s)  otherwise,
//   a_s    = ε_s(λx. q_x(EPS_{q_x}(s * x))),   q_x(α) = q(x * α).
//
// Instead of building the shifted outcomes q_x, the engine threads the whole
// history: the play reached from s is always ŝ' for the history s' at which
// the control stops, so q_x(EPS(s * x)) is q applied to that extended
// history. Every history is a node in a tree owned by the engine, and both
// the stop node of a continuation and the outcome at a stop node are
// memoized there.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "higman/move_traits.hpp"
#include "higman/stream.hpp"
#include "higman/trace.hpp"

namespace higman {

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a continuation depends on itself, which no well-founded
/// game can do.
class NonWellFounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpsOptions {
  std::size_t max_calls = 1'000'000;
  std::size_t max_depth = 2'000;
  TraceLog* trace = nullptr;
};

/// φ, ε, q and the default move used for canonical extension.
template <class X, class R>
struct GameInstance {
  using Evaluator = std::function<R(const X&)>;
  using Control = std::function<std::size_t(const Stream<X>&)>;
  using Selection = std::function<X(std::span<const X>, const Evaluator&)>;
  using Outcome = std::function<R(const Stream<X>&)>;

  Control control;
  Selection select;
  Outcome outcome;
  X default_move;
};

template <class X, class R>
class SelectionProduct {
 public:
  using Game = GameInstance<X, R>;
  using Evaluator = typename Game::Evaluator;

  explicit SelectionProduct(Game game, EpsOptions options = {})
      : game_(std::move(game)), options_(options), root_(std::make_unique<Node>()) {}

  SelectionProduct(const SelectionProduct&) = delete;
  SelectionProduct& operator=(const SelectionProduct&) = delete;

  /// α = EPS(⟨⟩), as the canonical extension of the final history.
  Stream<X> play() { return hat(run(root_.get())); }

  /// The moves of α up to the point where the control stopped.
  std::vector<X> played_moves() { return run(root_.get())->history; }

  /// EPS(s): the moves after s, followed by default moves.
  Stream<X> continuation(std::span<const X> s) {
    Node* stop = run(node_for(s));
    std::vector<X> tail(stop->history.begin() + static_cast<std::ptrdiff_t>(s.size()),
                        stop->history.end());
    return canonical_extension(std::move(tail), game_.default_move);
  }

  /// p_s = λx. q_{s*x}(EPS(s * x)).
  Evaluator evaluator(std::span<const X> s) { return evaluator_at(node_for(s)); }

  /// q(α).
  R outcome() { return value_at(run(root_.get())); }

  std::size_t calls() const { return calls_; }
  std::size_t peak_depth() const { return peak_depth_; }
  const Game& game() const { return game_; }

 private:
  using Key = decltype(MoveTraits<X>::key(std::declval<const X&>()));

  struct Node {
    std::vector<X> history;
    std::map<Key, std::unique_ptr<Node>> children;
    std::optional<Stream<X>> hat;
    Node* stop = nullptr;
    bool active = false;
    std::optional<R> value;
  };

  struct Frame {
    Frame(Node* n, std::size_t& d) : node(n), depth(d) {
      node->active = true;
      ++depth;
    }
    ~Frame() {
      node->active = false;
      --depth;
    }
    Node* node;
    std::size_t& depth;
  };

  Node* child(Node* node, const X& x) {
    auto [it, fresh] = node->children.try_emplace(MoveTraits<X>::key(x));
    if (fresh) {
      it->second = std::make_unique<Node>();
      it->second->history = node->history;
      it->second->history.push_back(x);
    }
    return it->second.get();
  }

  Node* node_for(std::span<const X> s) {
    Node* n = root_.get();
    for (const X& x : s) n = child(n, x);
    return n;
  }

  const Stream<X>& hat(Node* node) {
    if (!node->hat) node->hat = canonical_extension(node->history, game_.default_move);
    return *node->hat;
  }

  Evaluator evaluator_at(Node* node) {
    return [this, node](const X& x) { return value_at(run(child(node, x))); };
  }

  R value_at(Node* stop) {
    if (!stop->value) {
      R v = game_.outcome(hat(stop));
      if (!stop->value) stop->value = std::move(v);
    }
    return *stop->value;
  }

  Node* run(Node* node) {
    if (node->stop) return node->stop;
    if (node->active) {
      throw NonWellFounded("continuation at history length " +
                           std::to_string(node->history.size()) + " depends on itself");
    }
    if (calls_ >= options_.max_calls) {
      throw BudgetExhausted("EPS call budget of " + std::to_string(options_.max_calls) +
                            " exhausted");
    }
    if (depth_ >= options_.max_depth) {
      throw BudgetExhausted("EPS nesting depth of " + std::to_string(options_.max_depth) +
                            " exhausted");
    }
    ++calls_;
    const std::size_t call = calls_;
    Frame frame(node, depth_);
    peak_depth_ = std::max(peak_depth_, depth_);
    const std::size_t len = node->history.size();
    const std::size_t control = game_.control(hat(node));
    if (control < len) {
      record(EpsEvent{depth_, len, std::nullopt, control, true, call});
      node->stop = node;
      return node;
    }
    X a = game_.select(std::span<const X>(node->history), evaluator_at(node));
    record(EpsEvent{depth_, len, MoveTraits<X>::describe(a, len), control, false, call});
    Node* stop = run(child(node, a));
    node->stop = stop;
    return stop;
  }

  void record(EpsEvent e) {
    if (options_.trace) options_.trace->add(std::move(e));
  }

  Game game_;
  EpsOptions options_;
  std::unique_ptr<Node> root_;
  std::size_t calls_ = 0;
  std::size_t depth_ = 0;
  std::size_t peak_depth_ = 0;
};

/// EPS(s) for a game, as a standalone stream. The engine stays alive for as
/// long as the stream does.
template <class X, class R>
Stream<X> eps(GameInstance<X, R> game, std::span<const X> s, EpsOptions options = {}) {
  auto engine = std::make_shared<SelectionProduct<X, R>>(std::move(game), options);
  Stream<X> cont = engine->continuation(s);
  return Stream<X>([engine, cont](std::size_t i) { return cont.at(i); });
}

struct SpectorRow {
  std::size_t n;
  bool strategy_holds;  // α_n = ε_{ᾱn}(p_{ᾱn})
  bool outcome_holds;   // q(α) = p_{ᾱn}(α_n)
};

struct SpectorReport {
  std::size_t control_value;  // φ(α)
  std::vector<SpectorRow> rows;

  bool holds() const {
    for (const auto& r : rows) {
      if (!r.strategy_holds || !r.outcome_holds) return false;
    }
    return true;
  }
};

/// Checks both of Spector's equations for every n ≤ φ(α).
template <class X, class R, class EqX, class EqR>
SpectorReport spector_check(SelectionProduct<X, R>& engine, EqX eq_x, EqR eq_r) {
  const Stream<X> alpha = engine.play();
  const R result = engine.outcome();
  SpectorReport report{engine.game().control(alpha), {}};
  for (std::size_t n = 0; n <= report.control_value; ++n) {
    const std::vector<X> history = initial_segment(alpha, n);
    std::span<const X> prefix(history);
    auto p = engine.evaluator(prefix);
    const X selected = engine.game().select(prefix, p);
    const X an = alpha.at(n);
    report.rows.push_back(SpectorRow{n, eq_x(an, selected), eq_r(result, p(an))});
  }
  return report;
}

template <class X, class R>
SpectorReport spector_check(GameInstance<X, R> game, EpsOptions options = {}) {
  SelectionProduct<X, R> engine(std::move(game), options);
  return spector_check(engine, std::equal_to<X>{}, std::equal_to<R>{});
}

}  // namespace higman
