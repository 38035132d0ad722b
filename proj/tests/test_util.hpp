#pragma once

#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "zetasum/bigreal.hpp"

// Asserts |a - b| <= tol with readable output on failure.
#define CHECK_CLOSE(a, b, tol)                                                   \
  do {                                                                           \
    const zetasum::BigReal _lhs = (a);                                           \
    const zetasum::BigReal _rhs = (b);                                           \
    const zetasum::BigReal _diff = zetasum::abs(_lhs - _rhs);                    \
    INFO("lhs  = " << _lhs.to_string());                                         \
    INFO("rhs  = " << _rhs.to_string());                                         \
    INFO("diff = " << _diff.to_string(3) << "  tol = " << (tol).to_string(3));   \
    CHECK(_diff <= (tol));                                                       \
  } while (0)

namespace testutil {

inline zetasum::BigReal tol10(long e, zetasum::Precision p) { return zetasum::pow10(e, p); }

}  // namespace testutil
