#pragma once

#include <doctest.h>

#include "skpca/error.hpp"

// Code of the skpca::Error thrown by f(); fails the test if nothing is thrown.
template <typename F>
skpca::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const skpca::Error& e) {
        return e.code();
    }
    FAIL("expected an skpca::Error");
    return skpca::ErrorCode::InvalidArgument;
}
