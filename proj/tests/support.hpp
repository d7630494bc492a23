#pragma once

#include <doctest.h>

#include "semirad/error.hpp"

/// Checks that `expr` throws semirad::Error of the given kind.
#define CHECK_THROWS_KIND(expr, k)                                        \
  do {                                                                    \
    bool thrown_ = false;                                                 \
    try {                                                                 \
      (void)(expr);                                                       \
    } catch (const semirad::Error& e_) {                                  \
      thrown_ = true;                                                     \
      CHECK_MESSAGE(e_.kind() == (k), "unexpected kind: ", e_.what());    \
    }                                                                     \
    CHECK_MESSAGE(thrown_, "expected an exception from " #expr);          \
  } while (false)
