#include "uniconc/error.hpp"

namespace uniconc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorKind::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorKind::DuplicateLetter: return "DuplicateLetter";
    case ErrorKind::UnknownLetterInPair: return "UnknownLetterInPair";
    case ErrorKind::ReflexivePair: return "ReflexivePair";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::DuplicateState: return "DuplicateState";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::EmptyStateSet: return "EmptyStateSet";
    case ErrorKind::DiamondViolation: return "DiamondViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NotOneBounded: return "NotOneBounded";
    case ErrorKind::StateExplosion: return "StateExplosion";
    case ErrorKind::NotAccessible: return "NotAccessible";
    case ErrorKind::TrivialSystem: return "TrivialSystem";
    case ErrorKind::NoRootInUnitInterval: return "NoRootInUnitInterval";
    case ErrorKind::SingularAtT: return "SingularAtT";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::AmbiguousBasic: return "AmbiguousBasic";
    case ErrorKind::KernelDimensionNotOne: return "KernelDimensionNotOne";
    case ErrorKind::NonPositiveKernelVector: return "NonPositiveKernelVector";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::ClassificationMismatch: return "ClassificationMismatch";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::CapExceeded: return "CapExceeded";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EmptyAlphabet:
    case ErrorKind::AlphabetTooLarge:
    case ErrorKind::DuplicateLetter:
    case ErrorKind::UnknownLetterInPair:
    case ErrorKind::ReflexivePair:
    case ErrorKind::UnknownLetter:
    case ErrorKind::DuplicateState:
    case ErrorKind::UnknownState:
    case ErrorKind::EmptyStateSet:
    case ErrorKind::DiamondViolation:
    case ErrorKind::SyntaxError:
    case ErrorKind::NotOneBounded:
    case ErrorKind::StateExplosion:
    case ErrorKind::CapExceeded:
        return true;
    default:
        return false;
    }
}

}  // namespace uniconc
