#pragma once

#include <stdexcept>
#include <string>

namespace vpent {

// Malformed or inconsistent input (bad masses, unknown symbols, invalid weights).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Instance exceeds a documented size limit (enumeration or search would blow up).
struct size_error : std::runtime_error {
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vpent
