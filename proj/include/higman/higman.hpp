#pragma once

// The bound functional Γ: for a word stream u over a finite decidable
// preorder, a number below which u provably contains an embedded pair.
//
// With G the Ramsey realizer applied to lts(p) and the counterexample
//
//   φ_{p,f}(g) = f^{g0}( p^{g0-1}[0, g0) * (fts(p)_{g(i)})_i ),
//
// the control and outcome of the minimal-bad-sequence game are
//
//   Ω(p,f) = Φ(p,f) = G(φ G) + 1,   Ψ(p,f) = p^{G0-1}[0, G0) * (fts(p)_{G(i)})_i,
//
// and Γ(u) = Φ(p_u, f_u) where (p_u, f_u) is the EPS play.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "higman/choice.hpp"
#include "higman/eps.hpp"
#include "higman/mbs.hpp"
#include "higman/ramsey.hpp"
#include "higman/stream.hpp"
#include "higman/trace.hpp"
#include "higman/wqo.hpp"

namespace higman {

/// Thrown when the oracle finds no good pair below Γ(u). Never a valid
/// outcome; it means a bug.
class SoundnessViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Budgets {
  std::size_t eps_calls = 1'000'000;
  std::size_t scan_cap = std::size_t{1} << 20;
  std::size_t max_depth = 2'000;
};

struct HigmanInstance {
  Preorder order;
  WordStream u;
  RamseyRealizer realizer;
  Budgets budgets;
};

inline HigmanInstance make_instance(Preorder order, WordStream u, Budgets budgets = {}) {
  RamseyRealizer r = pigeonhole_realizer(order, budgets.scan_cap);
  return HigmanInstance{std::move(order), std::move(u), std::move(r), budgets};
}

/// p^{g0-1}[0, g0) * (fts_{g(i)})_i, reading p^{-1} as u.
inline WordStream splice(const WordStream& u, const Stream<WordStream>& p, const WordStream& fts,
                         const MonotoneMap& g) {
  const std::size_t g0 = g.at(0);
  const WordStream head = g0 == 0 ? u : p.at(g0 - 1);
  return WordStream([head, fts, g, g0](std::size_t k) {
    return k < g0 ? head.at(k) : fts.at(g.at(k - g0));
  });
}

/// φ_{p,f}. Results are memoized per g.
inline CounterexampleFn phi_counterexample(const Preorder& order, const WordStream& u,
                                           const Stream<WordStream>& p,
                                           const Stream<MinimalityWitness>& f) {
  const WordStream fts = diagonals(p, order).first;
  auto memo = std::make_shared<std::unordered_map<std::uint64_t, std::size_t>>();
  return [u, p, f, fts, memo](const MonotoneMap& g) {
    if (auto it = memo->find(g.serial()); it != memo->end()) return it->second;
    const std::size_t v = f.at(g.at(0))(splice(u, p, fts, g));
    memo->emplace(g.serial(), v);
    return v;
  };
}

/// Ω, Φ and Ψ as functionals on plays (canonically extended histories).
struct HigmanFunctionals {
  PlayControl omega;
  PlayBound phi;
  PlaySplice psi;
};

namespace detail {

struct PlayEvaluation {
  MonotoneMap g;
  std::size_t phi_g;
  std::size_t omega;
  std::size_t phi;
  WordStream psi;
};

/// Computes G once per play and shares it between Ω, Φ and Ψ.
class PlayEvaluator {
 public:
  PlayEvaluator(HigmanInstance instance, TraceLog* trace)
      : instance_(std::move(instance)), trace_(trace) {}

  const PlayEvaluation& evaluate(const Stream<YPair>& play) {
    if (auto it = cache_.find(play.serial()); it != cache_.end()) return it->second;
    const Preorder& order = instance_.order;
    Stream<WordStream> p = map(play, [](const YPair& y) { return y.stream; });
    Stream<MinimalityWitness> f = map(play, [](const YPair& y) { return y.witness; });
    auto [fts, lts] = diagonals(p, order);
    CounterexampleFn phi = phi_counterexample(order, instance_.u, p, f);
    MonotoneMap g = instance_.realizer(lts, phi);
    const std::size_t phi_g = phi(g);
    // Ω and Φ have the same defining expression; both are kept so the
    // identity can be checked at runtime.
    const std::size_t omega = g.at(phi_g) + 1;
    const std::size_t bound = g.at(phi_g) + 1;
    WordStream psi = splice(instance_.u, p, fts, g);
    if (trace_) {
      std::vector<std::string> prefix;
      for (std::size_t i = 0; i < std::min<std::size_t>(bound + 1, 8); ++i) {
        prefix.push_back(psi.at(i).str());
      }
      trace_->add(SpliceEvent{g.at(0), phi_g, bound, std::move(prefix)});
    }
    return cache_
        .emplace(play.serial(), PlayEvaluation{std::move(g), phi_g, omega, bound, std::move(psi)})
        .first->second;
  }

 private:
  HigmanInstance instance_;
  TraceLog* trace_;
  std::unordered_map<std::uint64_t, PlayEvaluation> cache_;
};

}  // namespace detail

inline HigmanFunctionals omega_phi_psi(HigmanInstance instance, TraceLog* trace = nullptr) {
  auto ev = std::make_shared<detail::PlayEvaluator>(std::move(instance), trace);
  return HigmanFunctionals{
      [ev](const Stream<YPair>& play) { return ev->evaluate(play).omega; },
      [ev](const Stream<YPair>& play) { return ev->evaluate(play).phi; },
      [ev](const Stream<YPair>& play) { return ev->evaluate(play).psi; },
  };
}

struct GammaOptions {
  bool record_trace = false;
  bool check_contracts = false;
  bool keep_run = false;  // return the stages and witnesses in the report
};

struct BoundReport {
  std::size_t bound = 0;  // Γ(u)
  GoodPair witness{0, 0};
  std::size_t horizon = 0;  // Ω(p_u, f_u)
  std::size_t eps_calls = 0;
  std::size_t selection_calls = 0;
  std::size_t peak_depth = 0;
  double wall_time_ms = 0;
  TraceLog trace;
  // Filled when contracts are checked.
  std::optional<MbsContractReport> mbs_contracts;
  std::size_t selection_contract_failures = 0;
  std::optional<MbsApproximation> run;
};

/// Γ(u) certified by brute force: throws SoundnessViolation if u has no good
/// pair below the bound.
inline BoundReport gamma(const HigmanInstance& instance, GammaOptions options = {}) {
  const auto start = std::chrono::steady_clock::now();
  BoundReport report;
  TraceLog* trace = options.record_trace ? &report.trace : nullptr;
  auto monitor = std::make_shared<MbsMonitor>();
  monitor->trace = trace;
  monitor->check_contracts = options.check_contracts;

  HigmanFunctionals fns = omega_phi_psi(instance, trace);
  EpsOptions eps_options{instance.budgets.eps_calls, instance.budgets.max_depth, trace};
  MbsApproximation approx = mbs_run(instance.order, instance.u, fns.omega, fns.phi, fns.psi,
                                    eps_options, monitor);

  report.bound = approx.outcome.first;
  report.horizon = approx.horizon;
  if (report.horizon != fns.phi(approx.play)) {
    throw SoundnessViolation("control and bound functionals disagree on the final play");
  }
  report.eps_calls = approx.engine->calls();
  report.peak_depth = approx.engine->peak_depth();
  report.selection_calls = monitor->selections;
  if (options.check_contracts) {
    report.mbs_contracts = check_mbs_contracts(instance.order, approx);
    report.selection_contract_failures = monitor->contract_failures;
  }
  std::optional<GoodPair> pair = find_good_pair(instance.order, instance.u, report.bound);
  if (!pair) {
    throw SoundnessViolation("no embedded pair below the bound " + std::to_string(report.bound));
  }
  report.witness = *pair;
  if (options.keep_run) report.run = std::move(approx);
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace higman
