#pragma once

#include <stdexcept>
#include <string>

namespace wtg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems with user input: syntax, unknown names, bad bounds.
struct InputError : Error {
    using Error::Error;
};

struct ParseError : InputError {
    ParseError(int line, int col, const std::string& msg)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line;
    int col;
};

struct NotAcyclic : Error {
    NotAcyclic() : Error("game is not acyclic") {}
};

struct DiagonalInput : Error {
    DiagonalInput() : Error("diagonal expression given where a non-diagonal one is required") {}
};

struct InfeasibleAtP : Error {
    InfeasibleAtP() : Error("cell is empty at this perturbation") {}
};

struct PerturbationTooLarge : Error {
    PerturbationTooLarge(const std::string& p, const std::string& eta)
        : Error("perturbation " + p + " exceeds eta " + eta) {}
};

struct NotAtomic : Error {
    NotAtomic() : Error("partition is not atomic") {}
};

struct NonConvergent : Error {
    explicit NonConvergent(int iterations)
        : Error("no fixpoint after " + std::to_string(iterations) + " iterations"), iterations(iterations) {}
    int iterations;
};

struct GridMismatch : InputError {
    using InputError::InputError;
};

struct PreconditionError : InputError {
    using InputError::InputError;
};

}  // namespace wtg
