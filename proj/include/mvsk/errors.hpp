#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvsk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed return data. `row` is the 1-based line number in the source.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& detail, const std::string& source = {})
        : Error((source.empty() ? "line " : source + ":") + std::to_string(row) + ": " + detail),
          row_(row), detail_(detail) {}
    std::size_t row() const noexcept { return row_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t row_;
    std::string detail_;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite value met inside an iterative solve.
class NumericalError : public Error {
public:
    NumericalError(int iteration, const std::string& what)
        : Error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

} // namespace mvsk
