#pragma once

#include "doctest.h"
#include "sed/errors.hpp"

namespace testutil {

/// Runs `fn` and returns the code of the sed::Error it throws; fails the test if none is thrown.
template <typename Fn>
sed::ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const sed::Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return sed::ErrorCode::StorageError;
}

}  // namespace testutil
