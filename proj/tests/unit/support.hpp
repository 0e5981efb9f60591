#pragma once

#include "gaugecount/error.hpp"

#include <optional>

namespace gaugecount::testing {

// Kind of the gaugecount::Error thrown by f, or nullopt if none.
template <typename F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace gaugecount::testing
