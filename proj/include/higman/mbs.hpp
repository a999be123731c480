#pragma once

// Selection functions for the approximate minimal bad sequence and the EPS
// run that assembles them into stages p⁰, p¹, … with minimality witnesses.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "higman/choice.hpp"
#include "higman/eps.hpp"
#include "higman/stream.hpp"
#include "higman/trace.hpp"
#include "higman/wqo.hpp"

namespace higman {

/// Outcome type of the minimal-bad-sequence game: ⟨Φ, Ψ⟩ of a play.
using MbsOutcome = std::pair<std::size_t, WordStream>;
using MbsGame = GameInstance<YPair, MbsOutcome>;
using MbsEngine = SelectionProduct<YPair, MbsOutcome>;

using JFn = std::function<std::size_t(const YPair&)>;
using QFn = std::function<WordStream(const YPair&)>;

/// Stage n of the construction, refining the previous stage's sequence w.
struct MbsContext {
  Preorder order;
  std::size_t stage;
  WordStream previous;
};

/// A^{n,w}_m(r, i) ≡ r ⊑ₙ w ∧ |r_n| < m ∧ θ(r, i).
inline bool a_pred(const MbsContext& ctx, std::size_t m, const WordStream& r, std::size_t i) {
  return smin(r, ctx.previous, ctx.stage) && r.at(ctx.stage).size() < m &&
         theta(ctx.order, r, i);
}

struct SelectionResult {
  YPair chosen;
  std::size_t index;       // i with ⟨ε⁰, ε¹⟩ = ⟨p_i, f_i⟩
  std::size_t candidates;  // indices tested
};

/// ⟨p_i, f_i⟩ for the greatest i ≤ |w_n| with ¬A_i(Q(p_i, f_i), f_i(Q(p_i, f_i))),
/// where
///
///   f_0 = 0,  f_i = λq. J(q, f_{i-1}),  p_{|w_n|} = w,  p_{i-1} = Q(p_i, f_i).
///
/// Candidates are tried from |w_n| downwards. Testing i computes
/// Q(p_i, f_i), which is exactly p_{i-1}, so the chain of p's is only built
/// as far as the search goes. i = 0 always qualifies because nothing has
/// length below 0, so it is returned without evaluating anything.
inline SelectionResult select_minimal(const MbsContext& ctx, const JFn& J, const QFn& Q) {
  const std::size_t top = ctx.previous.at(ctx.stage).size();
  std::vector<MinimalityWitness> f;
  f.reserve(top + 1);
  f.push_back(MinimalityWitness::zero());
  for (std::size_t i = 1; i <= top; ++i) {
    f.emplace_back([J, prev = f.back()](const WordStream& q) { return J(YPair{q, prev}); });
  }
  WordStream p = ctx.previous;
  std::size_t tested = 0;
  for (std::size_t i = top; i > 0; --i) {
    ++tested;
    WordStream r = Q(YPair{p, f[i]});
    const bool a = smin(r, ctx.previous, ctx.stage) && r.at(ctx.stage).size() < i &&
                   theta(ctx.order, r, f[i](r));
    if (!a) return {YPair{p, f[i]}, i, tested};
    p = std::move(r);
  }
  return {YPair{p, f[0]}, 0, tested + 1};
}

/// The three conjuncts that a selection ⟨ε⁰, ε¹⟩ must satisfy against J, Q:
///
///   w̄n = ε⁰̄n,  θ(w, Jε) → θ(ε⁰, Jε),  Qε ⊏ₙ ε⁰ → ¬θ(Qε, ε¹(Qε)).
struct SelectionContract {
  bool prefix_kept = false;
  bool badness_kept = false;
  bool minimal = false;
  bool premise_fired = false;

  bool holds() const { return prefix_kept && badness_kept && minimal; }
};

inline SelectionContract check_selection_contract(const MbsContext& ctx, const JFn& J,
                                                  const QFn& Q, const YPair& chosen) {
  const std::size_t n = ctx.stage;
  SelectionContract c;
  c.prefix_kept = initial_segment(ctx.previous, n) == initial_segment(chosen.stream, n);
  const std::size_t j = J(chosen);
  c.badness_kept = !theta(ctx.order, ctx.previous, j) || theta(ctx.order, chosen.stream, j);
  const WordStream q = Q(chosen);
  c.premise_fired = psmin(q, chosen.stream, n);
  c.minimal = !c.premise_fired || !theta(ctx.order, q, chosen.witness(q));
  return c;
}

/// Counters and optional checks shared by the selections of one run.
struct MbsMonitor {
  TraceLog* trace = nullptr;
  bool check_contracts = false;
  std::size_t selections = 0;
  std::size_t contract_failures = 0;
  std::vector<std::string> failures;
};

/// ε̃ᵘ: at history ⟨(P⁰,F⁰), …, (P^{k-1},F^{k-1})⟩ select for stage k against
/// w = P^{k-1}, with P^{-1} = u. The evaluator EPS supplies is split into
/// its J and Q projections.
inline MbsGame::Selection family(Preorder order, WordStream u,
                                 std::shared_ptr<MbsMonitor> monitor = nullptr) {
  return [order = std::move(order), u = std::move(u), monitor](
             std::span<const YPair> history, const MbsGame::Evaluator& k) {
    MbsContext ctx{order, history.size(), history.empty() ? u : history.back().stream};
    // The witnesses built here outlive this call, so they hold their own copy
    // of the evaluator.
    JFn J = [k](const YPair& y) { return k(y).first; };
    QFn Q = [k](const YPair& y) { return k(y).second; };
    SelectionResult r = select_minimal(ctx, J, Q);
    if (monitor) {
      ++monitor->selections;
      bool fired = false;
      if (monitor->check_contracts) {
        SelectionContract c = check_selection_contract(ctx, J, Q, r.chosen);
        fired = c.premise_fired;
        if (!c.holds()) {
          ++monitor->contract_failures;
          monitor->failures.push_back("selection contract failed at stage " +
                                      std::to_string(ctx.stage));
        }
      }
      if (monitor->trace) {
        monitor->trace->add(SelectionEvent{ctx.stage, ctx.previous.at(ctx.stage).size(),
                                           r.index, r.candidates, fired});
      }
    }
    return r.chosen;
  };
}

/// The stages produced by one EPS run, truncated at the horizon Ω(p, f).
struct MbsApproximation {
  std::shared_ptr<MbsEngine> engine;  // owns everything the witnesses refer to
  WordStream u;
  Stream<YPair> play;
  std::vector<YPair> moves;
  std::size_t horizon;
  MbsOutcome outcome;  // ⟨Φ, Ψ⟩ at (p, f)

  /// pⁿ, with p^{-1} = u.
  WordStream stage(std::ptrdiff_t n) const {
    return n < 0 ? u : play.at(static_cast<std::size_t>(n)).stream;
  }
  MinimalityWitness witness(std::size_t n) const { return play.at(n).witness; }
};

using PlayControl = std::function<std::size_t(const Stream<YPair>&)>;
using PlayBound = std::function<std::size_t(const Stream<YPair>&)>;
using PlaySplice = std::function<WordStream(const Stream<YPair>&)>;

inline MbsApproximation mbs_run(const Preorder& order, const WordStream& u, PlayControl omega,
                                PlayBound phi, PlaySplice psi, EpsOptions options = {},
                                std::shared_ptr<MbsMonitor> monitor = nullptr) {
  MbsGame game{
      std::move(omega),
      family(order, u, std::move(monitor)),
      [phi = std::move(phi), psi = std::move(psi)](const Stream<YPair>& play) {
        return MbsOutcome{phi(play), psi(play)};
      },
      default_ypair(),
  };
  auto engine = std::make_shared<MbsEngine>(std::move(game), options);
  Stream<YPair> play = engine->play();
  std::vector<YPair> moves = engine->played_moves();
  const std::size_t horizon = engine->game().control(play);
  MbsOutcome outcome = engine->outcome();
  return MbsApproximation{engine, u, std::move(play), std::move(moves), horizon,
                          std::move(outcome)};
}

/// Nesting, badness transfer and minimality for every n ≤ horizon.
struct MbsContractReport {
  std::size_t horizon = 0;
  std::vector<std::size_t> nesting_failures;
  std::vector<std::size_t> transfer_failures;
  std::vector<std::size_t> minimality_failures;
  std::size_t minimality_premises = 0;  // stages where Ψ ⊏ₙ pⁿ

  bool holds() const {
    return nesting_failures.empty() && transfer_failures.empty() && minimality_failures.empty();
  }
};

inline MbsContractReport check_mbs_contracts(const Preorder& order, const MbsApproximation& a) {
  MbsContractReport report;
  report.horizon = a.horizon;
  const std::size_t bound = a.outcome.first;
  const WordStream& psi = a.outcome.second;
  for (std::size_t n = 0; n <= a.horizon; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const WordStream prev = a.stage(sn - 1);
    const WordStream cur = a.stage(sn);
    if (initial_segment(prev, n) != initial_segment(cur, n)) report.nesting_failures.push_back(n);
    if (theta(order, prev, bound) && !theta(order, cur, bound)) {
      report.transfer_failures.push_back(n);
    }
    if (psmin(psi, cur, n)) {
      ++report.minimality_premises;
      if (theta(order, psi, a.witness(n)(psi))) report.minimality_failures.push_back(n);
    }
  }
  return report;
}

}  // namespace higman
