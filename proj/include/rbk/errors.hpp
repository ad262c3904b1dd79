#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHomogeneousDegree2 : public Error {
public:
    using Error::Error;
};

class VariableOutOfRange : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ColumnOutOfRange : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class NotKahler : public Error {
public:
    NotKahler() : Error("Bott matrix does not satisfy the Kaehler column-pairing condition") {}
};

/// Malformed matrix text. `line` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A nonzero entry on or below the diagonal. Coordinates are 1-based.
class NotStrictlyUpperTriangular : public Error {
public:
    NotStrictlyUpperTriangular(std::size_t row, std::size_t col)
        : Error("matrix is not strictly upper triangular: nonzero entry at (" + std::to_string(row) +
                ", " + std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

} // namespace rbk
