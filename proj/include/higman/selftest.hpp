#pragma once

// Randomized self-check: Γ soundness with contract checking on generated
// instances, plus Spector's equations and schema agreement on table games.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "higman/eps.hpp"
#include "higman/eps_literal.hpp"
#include "higman/higman.hpp"
#include "higman/instance.hpp"
#include "higman/random.hpp"

namespace higman {

struct SelftestConfig {
  std::uint64_t seed = 0;
  std::size_t count = 200;
  std::size_t games = 100;
  InstanceCaps caps;
  Budgets budgets;
  std::size_t threads = 1;
  std::size_t schema_prefix = 8;
};

enum class InstanceStatus { kCertified, kContractFailure, kSoundnessFailure, kBudgetExhausted };

struct InstanceResult {
  std::size_t index = 0;
  std::optional<InstanceSpec> spec;
  InstanceStatus status = InstanceStatus::kCertified;
  std::size_t bound = 0;
  GoodPair witness{0, 0};
  std::size_t horizon = 0;
  std::size_t eps_calls = 0;
  std::size_t selection_calls = 0;
  std::size_t minimality_premises = 0;
  double wall_time_ms = 0;
  std::string detail;
  std::vector<InstanceSpec> exhausted;  // replaced draws for this index
};

struct GameResult {
  std::size_t index = 0;
  bool spector_holds = false;
  bool schema_agrees = false;
  std::size_t control_value = 0;
};

struct SelftestSummary {
  std::vector<InstanceResult> instances;
  std::vector<GameResult> games;

  std::size_t count(InstanceStatus s) const {
    return static_cast<std::size_t>(std::count_if(
        instances.begin(), instances.end(), [s](const auto& r) { return r.status == s; }));
  }
  std::size_t exhausted() const {
    std::size_t n = 0;
    for (const auto& r : instances) n += r.exhausted.size();
    return n;
  }
  std::size_t games_failed() const {
    return static_cast<std::size_t>(std::count_if(games.begin(), games.end(), [](const auto& g) {
      return !g.spector_holds || !g.schema_agrees;
    }));
  }
  /// Budget exhaustions must stay under 5% of all draws.
  bool exhaustion_within_limit() const {
    const std::size_t draws = instances.size() + exhausted();
    return exhausted() * 20 < draws || exhausted() == 0;
  }
  bool passed() const {
    return count(InstanceStatus::kCertified) == instances.size() && games_failed() == 0 &&
           exhaustion_within_limit();
  }
  double percentile_ms(double q) const {
    std::vector<double> t;
    for (const auto& r : instances) t.push_back(r.wall_time_ms);
    if (t.empty()) return 0;
    std::sort(t.begin(), t.end());
    const auto k = static_cast<std::size_t>(q * static_cast<double>(t.size() - 1) + 0.5);
    return t[std::min(k, t.size() - 1)];
  }
};

inline const char* to_string(InstanceStatus s) {
  switch (s) {
    case InstanceStatus::kCertified:
      return "certified";
    case InstanceStatus::kContractFailure:
      return "contract_failure";
    case InstanceStatus::kSoundnessFailure:
      return "soundness_failure";
    case InstanceStatus::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "?";
}

/// Γ with every contract checked; budget exhaustion redraws from `rng`.
inline InstanceResult run_checked_instance(std::size_t index, Rng& rng, const SelftestConfig& cfg) {
  InstanceResult r;
  r.index = index;
  for (std::size_t attempt = 0;; ++attempt) {
    InstanceSpec spec = random_instance_spec(rng, cfg.caps, cfg.budgets);
    spec.seed = cfg.seed;
    try {
      BoundReport b = gamma(spec.instance(), GammaOptions{false, true});
      r.spec = spec;
      r.bound = b.bound;
      r.witness = b.witness;
      r.horizon = b.horizon;
      r.eps_calls = b.eps_calls;
      r.selection_calls = b.selection_calls;
      r.wall_time_ms = b.wall_time_ms;
      r.minimality_premises = b.mbs_contracts->minimality_premises;
      if (!b.mbs_contracts->holds() || b.selection_contract_failures != 0) {
        r.status = InstanceStatus::kContractFailure;
        std::ostringstream os;
        os << "nesting " << b.mbs_contracts->nesting_failures.size() << ", transfer "
           << b.mbs_contracts->transfer_failures.size() << ", minimality "
           << b.mbs_contracts->minimality_failures.size() << ", selection "
           << b.selection_contract_failures;
        r.detail = os.str();
      }
      return r;
    } catch (const BudgetExhausted&) {
      r.exhausted.push_back(spec);
      // Give up on the index once exhaustion is clearly not a rare event.
      if (attempt >= 8) {
        r.spec = spec;
        r.status = InstanceStatus::kBudgetExhausted;
        r.detail = "budget exhausted on every redraw";
        return r;
      }
    } catch (const SoundnessViolation& e) {
      r.spec = spec;
      r.status = InstanceStatus::kSoundnessFailure;
      r.detail = e.what();
      return r;
    }
  }
}

/// Spector's equations plus pointwise agreement with the literal schema.
inline GameResult run_checked_game(std::size_t index, const TableGame& table,
                                   std::size_t prefix) {
  GameResult g;
  g.index = index;
  auto game = table.instance();
  SelectionProduct<unsigned, std::size_t> engine(game);
  SpectorReport rep = spector_check(engine, std::equal_to<>{}, std::equal_to<>{});
  g.spector_holds = rep.holds();
  g.control_value = rep.control_value;
  const Stream<unsigned> threaded = engine.play();
  const Stream<unsigned> literal = eps_literal(game, {});
  g.schema_agrees = initial_segment(threaded, prefix) == initial_segment(literal, prefix);
  return g;
}

inline Rng index_rng(std::uint64_t seed, std::uint64_t stream, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

inline SelftestSummary run_selftest(const SelftestConfig& cfg) {
  SelftestSummary s;
  s.instances.resize(cfg.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.count; i = next++) {
      Rng rng = index_rng(cfg.seed, 1, i);
      s.instances[i] = run_checked_instance(i, rng, cfg);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < cfg.games; ++i) {
    Rng rng = index_rng(cfg.seed, 2, i);
    s.games.push_back(run_checked_game(i, TableGame::random(rng), cfg.schema_prefix));
  }
  return s;
}

/// Machine-readable summary. Timing fields are dropped when `timing` is
/// false so that reports of identical runs compare byte for byte.
inline nlohmann::json to_json(const SelftestSummary& s, bool timing = true) {
  using nlohmann::json;
  json instances = json::array();
  for (const auto& r : s.instances) {
    json j{{"index", r.index},
           {"status", to_string(r.status)},
           {"bound", r.bound},
           {"witness", {r.witness.i0, r.witness.i1}},
           {"horizon", r.horizon},
           {"eps_calls", r.eps_calls},
           {"selection_calls", r.selection_calls},
           {"exhausted_redraws", r.exhausted.size()}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (timing) j["wall_time_ms"] = r.wall_time_ms;
    instances.push_back(std::move(j));
  }
  json out{{"instances", s.instances.size()},
           {"certified", s.count(InstanceStatus::kCertified)},
           {"contract_failures", s.count(InstanceStatus::kContractFailure)},
           {"soundness_failures", s.count(InstanceStatus::kSoundnessFailure)},
           {"budget_exhausted", s.exhausted()},
           {"games", s.games.size()},
           {"games_failed", s.games_failed()},
           {"passed", s.passed()},
           {"results", std::move(instances)}};
  if (timing) {
    out["timing_ms"] = {{"p50", s.percentile_ms(0.5)},
                        {"p90", s.percentile_ms(0.9)},
                        {"p99", s.percentile_ms(0.99)},
                        {"max", s.percentile_ms(1.0)}};
  }
  return out;
}

inline std::string to_text(const SelftestSummary& s, bool timing = true) {
  std::ostringstream os;
  os << "instances " << s.instances.size() << ": certified " << s.count(InstanceStatus::kCertified)
     << ", contract failures " << s.count(InstanceStatus::kContractFailure)
     << ", soundness failures " << s.count(InstanceStatus::kSoundnessFailure)
     << ", budget-exhausted redraws " << s.exhausted() << '\n';
  os << "games " << s.games.size() << ": failed " << s.games_failed() << '\n';
  for (const auto& r : s.instances) {
    if (r.status != InstanceStatus::kCertified) {
      os << "  instance " << r.index << ' ' << to_string(r.status) << ": " << r.detail << '\n'
         << "    " << (r.spec ? to_json(*r.spec).dump() : "{}") << '\n';
    }
  }
  if (timing) {
    os << "timing ms: p50 " << s.percentile_ms(0.5) << ", p90 " << s.percentile_ms(0.9)
       << ", p99 " << s.percentile_ms(0.99) << ", max " << s.percentile_ms(1.0) << '\n';
  }
  os << (s.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace higman
