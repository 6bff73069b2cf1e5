#pragma once

#include <stdexcept>
#include <string>

namespace morselab {

// Exit-code convention: 1 = input, 2 = cap, 3 = internal.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapError : std::runtime_error {
    explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : InputError {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_ = 0)
        : InputError("line " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

} // namespace morselab
