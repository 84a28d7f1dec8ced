#pragma once

#include <stdexcept>
#include <string>

namespace kclique {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// FormatError -> 2, InfeasibleError -> 3, GuardError -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input: bad bitstring, bad CSV, bad flag value.
struct FormatError : Error {
    using Error::Error;
};

// A coverage value was requested for a set the instance cannot score.
struct LookupError : Error {
    using Error::Error;
};

// A partition group has no corresponding QUBO variable.
struct MappingError : Error {
    using Error::Error;
};

// The instance cannot be turned into a legal k-partition.
struct InfeasibleError : Error {
    using Error::Error;
};

// An enumeration guard refused to run (search space too large).
struct GuardError : Error {
    using Error::Error;
};

// Contract violation on an in-process call (wrong vector length, empty input).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace kclique
