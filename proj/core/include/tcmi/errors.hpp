#pragma once

#include <stdexcept>
#include <string>

namespace tcmi {

/// Malformed or inconsistent input: bad CSV, unknown column names,
/// out-of-range parameters, duplicate columns, and similar caller mistakes.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Input that is syntactically fine but carries no usable signal,
/// e.g. a constant target whose cumulative entropy is zero.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

/// A request whose exact computation would exceed the configured
/// resource budget (e.g. exhaustive enumeration of too many subsets).
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tcmi
