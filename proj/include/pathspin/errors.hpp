#pragma once

#include <stdexcept>
#include <string>

namespace pathspin {

/// Syntax error in an apparatus description (carries a 1-based line number).
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Violated input contract or semantic invariant (bad labels, non-unit axis,
/// gamma^2 + delta^2 != 1, ...).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical invariant broken beyond the hard tolerance; indicates a logic
/// bug rather than float dust.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pathspin
