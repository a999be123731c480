#pragma once

// Finitely described word streams and the JSON instance format.
//
//   {
//     "order":   {"size": 2, "rel": [[true,false],[false,true]], "default_letter": 0},
//     "stream":  {"prefix": [[1,1],[0,1]], "constant": [0]}
//                or {"prefix": [...], "cycle": [[0],[1]]},
//     "budgets": {"eps_calls": 1000000, "scan_cap": 1048576},
//     "seed":    7
//   }
//
// "budgets" and "seed" are optional.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "higman/higman.hpp"
#include "higman/wqo.hpp"

namespace higman {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// prefix * cycle^ω, or prefix * constant^ω.
struct StreamSpec {
  std::vector<Word> prefix;
  std::vector<Word> cycle;  // a constant tail is a cycle of length one
  bool constant_tail = false;

  static StreamSpec eventually_constant(std::vector<Word> prefix, Word tail) {
    return StreamSpec{std::move(prefix), {std::move(tail)}, true};
  }
  static StreamSpec periodic(std::vector<Word> prefix, std::vector<Word> cycle) {
    if (cycle.empty()) throw SpecError("stream.cycle: must be non-empty");
    return StreamSpec{std::move(prefix), std::move(cycle), false};
  }

  Word at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  WordStream stream() const {
    return WordStream([spec = *this](std::size_t i) { return spec.at(i); });
  }

  friend bool operator==(const StreamSpec&, const StreamSpec&) = default;
};

struct InstanceSpec {
  Preorder order;
  StreamSpec stream;
  Budgets budgets;
  std::optional<std::uint64_t> seed;

  HigmanInstance instance() const { return make_instance(order, stream.stream(), budgets); }

  friend bool operator==(const InstanceSpec& a, const InstanceSpec& b) {
    return a.order == b.order && a.stream == b.stream &&
           a.budgets.eps_calls == b.budgets.eps_calls &&
           a.budgets.scan_cap == b.budgets.scan_cap && a.seed == b.seed;
  }
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key,
                                   const std::string& path) {
  if (!obj.is_object()) throw SpecError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(path + "." + key + ": missing");
  return *it;
}

inline std::size_t natural(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SpecError(path + ": expected a natural number");
  }
  return j.get<std::size_t>();
}

inline Word word_from_json(const nlohmann::json& j, const Preorder& order,
                           const std::string& path) {
  if (!j.is_array()) throw SpecError(path + ": expected an array of letters");
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t x = natural(j[i], path + "[" + std::to_string(i) + "]");
    if (x >= order.size()) {
      throw SpecError(path + "[" + std::to_string(i) + "]: letter " + std::to_string(x) +
                      " outside alphabet of size " + std::to_string(order.size()));
    }
    letters.push_back(static_cast<Letter>(x));
  }
  return Word(std::move(letters));
}

inline std::vector<Word> words_from_json(const nlohmann::json& j, const Preorder& order,
                                         const std::string& path) {
  if (!j.is_array()) throw SpecError(path + ": expected an array of words");
  std::vector<Word> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(word_from_json(j[i], order, path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const Preorder& order) {
  return nlohmann::json{{"size", order.size()},
                        {"rel", order.relation()},
                        {"default_letter", order.default_letter()}};
}

inline Preorder preorder_from_json(const nlohmann::json& j, const std::string& path = "order") {
  using detail::field;
  const std::size_t size = detail::natural(field(j, "size", path), path + ".size");
  const nlohmann::json& rel = field(j, "rel", path);
  if (!rel.is_array() || rel.size() != size) {
    throw SpecError(path + ".rel: expected " + std::to_string(size) + " rows");
  }
  Preorder::Matrix m;
  for (std::size_t a = 0; a < size; ++a) {
    const std::string row_path = path + ".rel[" + std::to_string(a) + "]";
    if (!rel[a].is_array() || rel[a].size() != size) {
      throw SpecError(row_path + ": expected " + std::to_string(size) + " booleans");
    }
    std::vector<bool> row;
    for (std::size_t b = 0; b < size; ++b) {
      if (!rel[a][b].is_boolean()) {
        throw SpecError(row_path + "[" + std::to_string(b) + "]: expected a boolean");
      }
      row.push_back(rel[a][b].get<bool>());
    }
    m.push_back(std::move(row));
  }
  Letter d = 0;
  if (j.contains("default_letter")) {
    d = static_cast<Letter>(detail::natural(j["default_letter"], path + ".default_letter"));
  }
  try {
    return Preorder::validated(std::move(m), d);
  } catch (const InvalidPreorder& e) {
    throw SpecError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const Word& w) { return nlohmann::json(w.letters()); }

inline nlohmann::json to_json(const StreamSpec& s) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const Word& w : s.prefix) prefix.push_back(to_json(w));
  nlohmann::json out{{"prefix", prefix}};
  if (s.constant_tail) {
    out["constant"] = to_json(s.cycle.front());
  } else {
    nlohmann::json cycle = nlohmann::json::array();
    for (const Word& w : s.cycle) cycle.push_back(to_json(w));
    out["cycle"] = cycle;
  }
  return out;
}

inline StreamSpec stream_spec_from_json(const nlohmann::json& j, const Preorder& order,
                                        const std::string& path = "stream") {
  if (!j.is_object()) throw SpecError(path + ": expected an object");
  std::vector<Word> prefix;
  if (j.contains("prefix")) prefix = detail::words_from_json(j["prefix"], order, path + ".prefix");
  const bool has_cycle = j.contains("cycle");
  const bool has_constant = j.contains("constant");
  if (has_cycle == has_constant) {
    throw SpecError(path + ": exactly one of \"cycle\" or \"constant\" is required");
  }
  if (has_constant) {
    return StreamSpec::eventually_constant(
        std::move(prefix), detail::word_from_json(j["constant"], order, path + ".constant"));
  }
  std::vector<Word> cycle = detail::words_from_json(j["cycle"], order, path + ".cycle");
  if (cycle.empty()) throw SpecError(path + ".cycle: must be non-empty");
  return StreamSpec::periodic(std::move(prefix), std::move(cycle));
}

inline nlohmann::json to_json(const InstanceSpec& spec) {
  nlohmann::json out{
      {"order", to_json(spec.order)},
      {"stream", to_json(spec.stream)},
      {"budgets", {{"eps_calls", spec.budgets.eps_calls}, {"scan_cap", spec.budgets.scan_cap}}},
  };
  if (spec.seed) out["seed"] = *spec.seed;
  return out;
}

inline InstanceSpec instance_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("instance: expected an object");
  Preorder order = preorder_from_json(detail::field(j, "order", "instance"));
  StreamSpec stream = stream_spec_from_json(detail::field(j, "stream", "instance"), order);
  Budgets budgets;
  if (j.contains("budgets")) {
    const nlohmann::json& b = j["budgets"];
    if (!b.is_object()) throw SpecError("budgets: expected an object");
    if (b.contains("eps_calls")) budgets.eps_calls = detail::natural(b["eps_calls"], "budgets.eps_calls");
    if (b.contains("scan_cap")) budgets.scan_cap = detail::natural(b["scan_cap"], "budgets.scan_cap");
  }
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) seed = detail::natural(j["seed"], "seed");
  return InstanceSpec{std::move(order), std::move(stream), budgets, seed};
}

/// Parses instance JSON text; syntax errors carry nlohmann's line/column.
inline InstanceSpec parse_instance_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(e.what());
  }
  return instance_spec_from_json(j);
}

/// {bound, witness: [i0,i1], horizon, eps_calls, selection_calls, wall_time_ms}
inline nlohmann::json to_json(const BoundReport& r) {
  return nlohmann::json{{"bound", r.bound},
                        {"witness", {r.witness.i0, r.witness.i1}},
                        {"horizon", r.horizon},
                        {"eps_calls", r.eps_calls},
                        {"selection_calls", r.selection_calls},
                        {"wall_time_ms", r.wall_time_ms}};
}

}  // namespace higman
