#pragma once

#include <optional>

#include "uniconc/error.hpp"

// Kind of the uniconc::Error thrown by f, if any.
template <typename F>
std::optional<uniconc::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const uniconc::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}
