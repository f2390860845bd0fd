#pragma once

#include <gtest/gtest.h>

#include <optional>

#include "rgbr/error.hpp"

namespace rgbr::oracle {

/// Kind of the rgbr::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace rgbr::oracle

#define EXPECT_RGBR_ERROR(expr, kind_) \
  EXPECT_EQ(::rgbr::oracle::error_kind([&] { (void)(expr); }), std::optional(::rgbr::ErrorKind::kind_))
