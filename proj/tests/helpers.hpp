#pragma once
#include <doctest.h>

#include "framelab/error.hpp"
#include "framelab/linalg.hpp"

// Runs `expr` and checks that it throws framelab::Error of the given kind.
#define CHECK_THROWS_KIND(expr, k)                                                                                     \
    do {                                                                                                               \
        bool thrown_ = false;                                                                                          \
        try {                                                                                                          \
            (void)(expr);                                                                                              \
        } catch (const framelab::Error& e_) {                                                                          \
            thrown_ = true;                                                                                            \
            CHECK(e_.kind() == (k));                                                                                   \
        }                                                                                                              \
        CHECK_MESSAGE(thrown_, "expected an error from " #expr);                                                       \
    } while (0)

inline double max_abs(const framelab::Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
