#pragma once

#include <stdexcept>
#include <string>

namespace scengen {

// Problem with input data or a data file (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries a row/column locus in the message.
class ParseError : public DataError {
public:
    explicit ParseError(const std::string& what) : DataError(what) {}
};

} // namespace scengen
