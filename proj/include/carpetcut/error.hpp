#pragma once

#include <stdexcept>
#include <string>

namespace carpetcut {

// Every domain failure carries one of these names verbatim; the CLI prints it.
enum class ErrorCode {
    TrivialDigitSet,
    DigitOutOfRange,
    DuplicateDigit,
    BadBase,
    LevelMismatch,
    EmptyWord,
    InvalidWord,
    EmptyDigitSet,
    NotSingleton,
    LevelTooLarge,
    DisconnectedGraph,
    DisconnectedCarpet,
    FragileInput,
    DisconnectedInput,
    InvalidDigit,
    BadPartition,
    PreconditionUnverified,
    Inconclusive,
    PointNotInCarpet,
    UnknownPreset,
    BadParameter,
    BadSpecFile,
};

inline const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::TrivialDigitSet: return "TrivialDigitSet";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::DuplicateDigit: return "DuplicateDigit";
    case ErrorCode::BadBase: return "BadBase";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::EmptyDigitSet: return "EmptyDigitSet";
    case ErrorCode::NotSingleton: return "NotSingleton";
    case ErrorCode::LevelTooLarge: return "LevelTooLarge";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::DisconnectedCarpet: return "DisconnectedCarpet";
    case ErrorCode::FragileInput: return "FragileInput";
    case ErrorCode::DisconnectedInput: return "DisconnectedInput";
    case ErrorCode::InvalidDigit: return "InvalidDigit";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::PreconditionUnverified: return "PreconditionUnverified";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::PointNotInCarpet: return "PointNotInCarpet";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::BadSpecFile: return "BadSpecFile";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace carpetcut
