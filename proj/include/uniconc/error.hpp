#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uniconc {

enum class ErrorKind {
    // input / validation
    EmptyAlphabet,
    AlphabetTooLarge,
    DuplicateLetter,
    UnknownLetterInPair,
    ReflexivePair,
    UnknownLetter,
    DuplicateState,
    UnknownState,
    EmptyStateSet,
    DiamondViolation,
    SyntaxError,
    NotOneBounded,
    StateExplosion,
    // analysis
    NotAccessible,
    TrivialSystem,
    NoRootInUnitInterval,
    SingularAtT,
    NonConvergence,
    AmbiguousBasic,
    KernelDimensionNotOne,
    NonPositiveKernelVector,
    CrossCheckFailure,
    ClassificationMismatch,
    EmptySet,
    CapExceeded,
};

std::string_view to_string(ErrorKind kind);

/// True for errors caused by malformed or inconsistent input (CLI exit code 2).
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace uniconc
