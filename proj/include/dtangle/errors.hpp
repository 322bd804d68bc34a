#pragma once

// Error taxonomy for the dtangle library.
//
// DomainError   — invalid input data or an input outside the supported range
//                 (malformed JSON, d^2 != 0, a component that is not one of the
//                 recognized curve shapes, an unsupported pairing, ...).
//                 The CLI maps these to exit code 1.
// UsageError    — the command line itself is malformed (unknown command,
//                 missing required flag). Exit code 2.
// VerificationFailure — a cross-check between two independent computations
//                 disagreed (fast path vs algebraic oracle, dimension formula
//                 vs pairing count). Exit code 3. If this fires on valid input
//                 it indicates a bug, so the message carries the full diff.

#include <stdexcept>
#include <string>

namespace dtangle {

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

class VerificationFailure : public std::runtime_error {
public:
    explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dtangle
