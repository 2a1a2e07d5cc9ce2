#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                         : what),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NoPivot : public Error {
public:
    NoPivot() : Error("no generator gives a nonzero det(rho(x_j) t - I)") {}
};

class MissingPeripheral : public Error {
public:
    MissingPeripheral() : Error("presentation carries no meridian/longitude words") {}
};

class NotLoxodromic : public Error {
public:
    using Error::Error;
};

class EigenSolverError : public Error {
public:
    using Error::Error;
};

} // namespace torsionlab
