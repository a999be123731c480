// Command-line entry point: certified Γ bounds, randomized self-tests and
// trace export.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "higman/higman.hpp"
#include "higman/instance.hpp"
#include "higman/selftest.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadInput = 2,
  kBudget = 3,
  kUnsound = 4,
};

higman::InstanceSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw higman::SpecError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return higman::parse_instance_spec(buf.str());
}

int run_bound(const std::string& spec_path, std::optional<std::size_t> max_eps_calls,
              const std::string& trace_out, bool trace_mode) {
  higman::InstanceSpec spec = load_spec(spec_path);
  if (max_eps_calls) spec.budgets.eps_calls = *max_eps_calls;
  const bool want_trace = trace_mode || !trace_out.empty();
  higman::BoundReport report = higman::gamma(spec.instance(), {want_trace, false});
  const std::string json = higman::to_json(report).dump();
  if (!want_trace) {
    std::cout << json << '\n';
    return kOk;
  }
  if (trace_out.empty()) {
    // Trace takes stdout; the report moves to stderr.
    report.trace.write_json_lines(std::cout);
    std::cerr << json << '\n';
    return kOk;
  }
  std::ofstream out(trace_out);
  if (!out) throw higman::SpecError(trace_out + ": cannot write");
  report.trace.write_json_lines(out);
  std::cout << json << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds for embedded pairs in word sequences over finite preorders"};
  std::string mode = "bound";
  std::string spec_path;
  std::uint64_t seed = 0;
  std::size_t count = 200;
  std::size_t games = 100;
  std::size_t threads = 1;
  std::optional<std::size_t> max_eps_calls;
  std::string trace_out;
  bool json = false;

  app.add_option("--mode", mode, "bound | selftest | trace")
      ->check(CLI::IsMember({"bound", "selftest", "trace"}));
  app.add_option("--spec", spec_path, "instance JSON file");
  app.add_option("--seed", seed, "selftest seed");
  app.add_option("--count", count, "selftest instance count");
  app.add_option("--games", games, "selftest random game count");
  app.add_option("--threads", threads, "selftest worker threads");
  app.add_option("--max-eps-calls", max_eps_calls, "EPS invocation budget");
  app.add_option("--trace-out", trace_out, "write the trace as JSON lines to this path");
  app.add_flag("--json", json, "selftest summary as JSON");
  CLI11_PARSE(app, argc, argv);

  try {
    if (mode == "selftest") {
      higman::SelftestConfig cfg;
      cfg.seed = seed;
      cfg.count = count;
      cfg.games = games;
      cfg.threads = threads;
      if (max_eps_calls) cfg.budgets.eps_calls = *max_eps_calls;
      higman::SelftestSummary summary = higman::run_selftest(cfg);
      if (json) {
        std::cout << higman::to_json(summary).dump(2) << '\n';
      } else {
        std::cout << higman::to_text(summary);
      }
      return summary.passed() ? kOk : kCheckFailed;
    }
    if (spec_path.empty()) {
      std::cerr << "error: --spec is required in " << mode << " mode\n";
      return kBadInput;
    }
    return run_bound(spec_path, max_eps_calls, trace_out, mode == "trace");
  } catch (const higman::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const higman::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const higman::SoundnessViolation& e) {
    std::cerr << "soundness violation: " << e.what() << '\n';
    return kUnsound;
  }
}
