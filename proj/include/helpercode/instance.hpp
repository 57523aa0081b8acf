#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

struct ProblemInstance {
  JointPmf pmf;
  FunctionTable f;
  std::string name;
  std::optional<double> delta;
};

namespace detail {

inline FunctionTable example1_table() {
  const std::optional<std::string> X;  // don't-care, sits on the zero cells
  return FunctionTable({{X, "1", "4"}, {"1", X, "3"}, {"4", "3", "2"}});
}

inline std::vector<std::string> example1_row_labels() { return {"u1", "u2", "u3"}; }
inline std::vector<std::string> example1_col_labels() { return {"v1", "v2", "v3"}; }

inline void check_example1_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 0.5))
    fail(errc::validation, "example1: delta must lie strictly between 0 and 0.5");
}

}  // namespace detail

// The bundled 3x3 family: two symbols trade places with probability weight
// 1-delta each, the third column/row soaks up the rest. Function outcomes
// are the labels 1 to 4.
inline ProblemInstance example1_instance(double delta) {
  detail::check_example1_delta(delta);
  const double a = (1.0 - delta) / 3.0, b = delta / 3.0, c = (1.0 - 2.0 * delta) / 3.0;
  JointPmf p({{0.0, a, b}, {a, 0.0, b}, {b, b, c}}, detail::example1_row_labels(),
             detail::example1_col_labels());
  return ProblemInstance{std::move(p), detail::example1_table(), "example1", delta};
}

// The perfect-matching component of the family's saturating decomposition.
inline ProblemInstance example1_km0_instance(double delta) {
  detail::check_example1_delta(delta);
  const double a = (1.0 - delta) / (3.0 - 4.0 * delta), b = (1.0 - 2.0 * delta) / (3.0 - 4.0 * delta);
  JointPmf p({{0.0, a, 0.0}, {a, 0.0, 0.0}, {0.0, 0.0, b}}, detail::example1_row_labels(),
             detail::example1_col_labels());
  return ProblemInstance{std::move(p), detail::example1_table(), "example1_km0", delta};
}

// The non-matched residual component; it does not depend on delta.
inline ProblemInstance example1_km1_instance() {
  JointPmf p({{0.0, 0.0, 0.25}, {0.0, 0.0, 0.25}, {0.25, 0.25, 0.0}}, detail::example1_row_labels(),
             detail::example1_col_labels());
  return ProblemInstance{std::move(p), detail::example1_table(), "example1_km1", std::nullopt};
}

namespace detail {

inline double parse_delta_value(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty())
    fail(errc::parse, "instance spec: cannot parse delta value '" + text + "'");
  return v;
}

// Builtin specs look like "example1:delta=0.25"; the Greek letter spelling
// of the key is accepted too.
inline ProblemInstance load_builtin(const std::string& spec) {
  std::string family = spec;
  std::optional<double> delta;
  const size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    family = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    const size_t eq = rest.find('=');
    if (eq == std::string::npos) fail(errc::parse, "instance spec: expected delta=<value> after ':'");
    const std::string key = rest.substr(0, eq);
    if (key != "delta" && key != "\xce\xb4")
      fail(errc::parse, "instance spec: unknown parameter '" + key + "'");
    delta = parse_delta_value(rest.substr(eq + 1));
  }
  if (family == "example1") {
    if (!delta) fail(errc::validation, "example1 needs a delta, e.g. example1:delta=0.25");
    return example1_instance(*delta);
  }
  if (family == "example1_km0") {
    if (!delta) fail(errc::validation, "example1_km0 needs a delta, e.g. example1_km0:delta=0.25");
    return example1_km0_instance(*delta);
  }
  if (family == "example1_km1") {
    if (delta) check_example1_delta(*delta);
    ProblemInstance inst = example1_km1_instance();
    inst.delta = delta;
    return inst;
  }
  fail(errc::validation, "unknown builtin instance family '" + family + "'");
}

inline std::string outcome_label(const nlohmann::json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_number_float()) {
    const double v = cell.get<double>();
    if (v == std::floor(v) && std::abs(v) < 9.0e15) return std::to_string(static_cast<long long>(v));
  }
  fail(errc::validation, "instance: function outcomes must be strings, integers, or null");
}

}  // namespace detail

// Accepts either a builtin name (anything starting with "example1") or a
// path to a JSON document {"matrix": [[..]], "function": [[..]], "labels"?:
// {"x1": [..], "x2": [..]}, "name"?, "delta"?} with null marking don't-care
// outcome cells.
inline ProblemInstance load_instance(const std::string& spec) {
  if (spec.rfind("example1", 0) == 0) return detail::load_builtin(spec);

  std::ifstream in(spec);
  if (!in) fail(errc::io, "cannot open instance file: " + spec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse, e.what());
  }
  if (!j.is_object() || !j.contains("matrix") || !j.contains("function"))
    fail(errc::validation, "instance: top level must be an object with 'matrix' and 'function'");

  const nlohmann::json& jm = j["matrix"];
  if (!jm.is_array() || jm.empty()) fail(errc::validation, "instance: 'matrix' must be a nonempty array of rows");
  std::vector<std::vector<double>> cells;
  for (const auto& row : jm) {
    if (!row.is_array() || row.empty()) fail(errc::validation, "instance: matrix rows must be nonempty arrays");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) fail(errc::validation, "instance: matrix entries must be numbers");
      r.push_back(x.get<double>());
    }
    cells.push_back(std::move(r));
  }
  if (static_cast<int>(cells.size()) > kMaxAlphabet ||
      static_cast<int>(cells.front().size()) > kMaxAlphabet)
    fail(errc::validation, "instance: alphabets larger than 12 symbols are not supported");
  const size_t n1 = cells.size(), n2 = cells.front().size();

  const nlohmann::json& jf = j["function"];
  if (!jf.is_array() || jf.size() != n1)
    fail(errc::validation, "instance: 'function' must match the matrix row count");
  std::vector<std::vector<FunctionTable::Cell>> outcomes;
  for (const auto& row : jf) {
    if (!row.is_array() || row.size() != n2)
      fail(errc::validation, "instance: function rows must match the matrix column count");
    std::vector<FunctionTable::Cell> r;
    for (const auto& x : row)
      r.push_back(x.is_null() ? FunctionTable::Cell{} : FunctionTable::Cell{detail::outcome_label(x)});
    outcomes.push_back(std::move(r));
  }

  std::vector<std::string> rowLabels, colLabels;
  if (j.contains("labels")) {
    const nlohmann::json& jl = j["labels"];
    if (!jl.is_object()) fail(errc::validation, "instance: 'labels' must be an object");
    auto read = [&](const char* key, size_t want) {
      std::vector<std::string> out;
      if (!jl.contains(key)) return out;
      if (!jl[key].is_array() || jl[key].size() != want)
        fail(errc::validation, std::string("instance: labels.") + key + " must list one label per symbol");
      for (const auto& s : jl[key]) {
        if (!s.is_string()) fail(errc::validation, "instance: labels must be strings");
        out.push_back(s.get<std::string>());
      }
      return out;
    };
    rowLabels = read("x1", n1);
    colLabels = read("x2", n2);
  }

  JointPmf pmf(std::move(cells), std::move(rowLabels), std::move(colLabels));
  FunctionTable table(std::move(outcomes));
  check_pairing(pmf, table);

  ProblemInstance inst{std::move(pmf), std::move(table), std::filesystem::path(spec).stem().string(),
                       std::nullopt};
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(errc::validation, "instance: 'name' must be a string");
    inst.name = j["name"].get<std::string>();
  }
  if (j.contains("delta")) {
    if (!j["delta"].is_number()) fail(errc::validation, "instance: 'delta' must be a number");
    inst.delta = j["delta"].get<double>();
  }
  return inst;
}

}  // namespace helpercode
