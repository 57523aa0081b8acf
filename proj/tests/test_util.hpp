#pragma once

#include <helpercode/error.hpp>

#include <optional>
#include <utility>

// Runs f and reports which error code it threw, or nullopt if it returned.
template <class F>
std::optional<helpercode::errc> error_code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const helpercode::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
