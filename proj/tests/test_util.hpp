#pragma once

#include <functional>

#include "error.hpp"

namespace testutil {

// true iff fn throws ef::Error with exactly this code
inline bool raises(ef::Errc code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ef::Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace testutil
