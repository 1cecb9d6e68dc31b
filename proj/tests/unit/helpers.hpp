#pragma once

#include <optional>

#include "senescent/errors.hpp"

namespace senescent::testing {

/// Kind of the Error thrown by `f`, or nothing if it returns normally.
template <class F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace senescent::testing
