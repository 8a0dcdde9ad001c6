#pragma once

#include <stdexcept>
#include <string>

namespace gbp {

// input that failed to parse or violates a documented domain precondition
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// request exceeds a documented size limit; callers may retry smaller
struct size_limit_error : std::runtime_error {
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gbp
