#pragma once

#include <stdexcept>
#include <string>

namespace macsense {

// Unknown variable or symbol name.
struct NameError : std::runtime_error {
    explicit NameError(const std::string& what) : std::runtime_error(what) {}
};

// Tensor dimensions inconsistent with the declared alphabets.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Scalar parameter outside its admissible range.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A conditional slice or pmf does not sum to one.
struct NormalizationError : std::runtime_error {
    explicit NormalizationError(const std::string& what) : std::runtime_error(what) {}
};

// Text document could not be parsed.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Missing or inconsistent run configuration (e.g. no distortion table for a user).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A quantity violated an identity that holds for every correctly assembled
// model; signals a bug upstream rather than bad user input.
struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace macsense
