#pragma once

#include <doctest.h>

#include <random>

#include "hypzeta/error.hpp"

// Asserts that expr throws hypzeta::Error with the given code.
#define CHECK_CODE(expr, ecode)                                        \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const hypzeta::Error& e_) {                               \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == hypzeta::ErrorCode::ecode, e_.what()); \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "expected " #ecode);                        \
  } while (0)

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261014);
  return g;
}

}  // namespace testing
