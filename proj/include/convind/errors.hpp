#pragma once

#include <stdexcept>
#include <string>

namespace convind {

// A computation ran to completion and certified a negative outcome
// (e.g. a verification loop exhausted its budget, a counterexample exists).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant that should be unreachable was violated; never
// swallowed, surfaces as its own process exit code.
struct InconsistencyError : std::logic_error {
    explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace convind
