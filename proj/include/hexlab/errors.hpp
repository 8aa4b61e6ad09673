#pragma once

#include <stdexcept>
#include <string>

namespace hexlab {

// Thrown on malformed input: wrong arity, out-of-domain value, bad file content.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a statistic is undefined for the given data (e.g. zero variance).
class undefined_statistic_error : public std::domain_error {
public:
    explicit undefined_statistic_error(const std::string& what) : std::domain_error(what) {}
};

// Thrown on unreadable/unwritable paths.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hexlab
