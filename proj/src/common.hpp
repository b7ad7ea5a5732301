#pragma once

#include <stdexcept>
#include <string>

namespace alseg {

// Error taxonomy. ConfigError maps to exit code 2 at the CLI boundary,
// everything else derived from Error maps to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Violated precondition or invariant of a domain operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// File decoding / manifest validation failures. Message names the path.
class IngestError : public Error {
public:
    explicit IngestError(const std::string& msg) : Error(msg) {}
};

class TrainError : public Error {
public:
    explicit TrainError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace alseg
