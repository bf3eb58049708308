#pragma once

#include <doctest.h>

#include "kerrcat/error.hpp"

// Passes when `expr` throws kerrcat::Error carrying `expected`.
#define CHECK_ERROR_CODE(expr, expected)                          \
  do {                                                            \
    bool kc_thrown_ = false;                                      \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const kerrcat::Error& e) {                           \
      kc_thrown_ = true;                                          \
      CHECK(e.code() == (expected));                              \
    }                                                             \
    CHECK_MESSAGE(kc_thrown_, "expected kerrcat::Error: " #expr); \
  } while (0)
