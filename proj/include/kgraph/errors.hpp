#ifndef KGRAPH_ERRORS_HPP
#define KGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kgraph {

enum class ErrorCode {
    DanglingReference,
    DuplicateSquare,
    IncompleteBijection,
    ColorOutOfRange,
    NotComposable,
    InvalidPermutation,
    NotStronglyConnected,
    NoCommonEigenvector,
    UnsupportedGraphForKind,
    PathNotInGraph,
    ZeroMassBase,
    RangeMismatch,
    GraphMismatch,
    LevelDecrease,
    UnsupportedMeasure,
    SourceMismatch,
    TailMismatch,
    BadChoice,
    NotUnimodular,
    MalformedRegion,
    InvalidInput,
    OnBoundary,
    DegeneratePiece,
    BadArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::DuplicateSquare: return "DuplicateSquare";
        case ErrorCode::IncompleteBijection: return "IncompleteBijection";
        case ErrorCode::ColorOutOfRange: return "ColorOutOfRange";
        case ErrorCode::NotComposable: return "NotComposable";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorCode::NoCommonEigenvector: return "NoCommonEigenvector";
        case ErrorCode::UnsupportedGraphForKind: return "UnsupportedGraphForKind";
        case ErrorCode::PathNotInGraph: return "PathNotInGraph";
        case ErrorCode::ZeroMassBase: return "ZeroMassBase";
        case ErrorCode::RangeMismatch: return "RangeMismatch";
        case ErrorCode::GraphMismatch: return "GraphMismatch";
        case ErrorCode::LevelDecrease: return "LevelDecrease";
        case ErrorCode::UnsupportedMeasure: return "UnsupportedMeasure";
        case ErrorCode::SourceMismatch: return "SourceMismatch";
        case ErrorCode::TailMismatch: return "TailMismatch";
        case ErrorCode::BadChoice: return "BadChoice";
        case ErrorCode::NotUnimodular: return "NotUnimodular";
        case ErrorCode::MalformedRegion: return "MalformedRegion";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::OnBoundary: return "OnBoundary";
        case ErrorCode::DegeneratePiece: return "DegeneratePiece";
        case ErrorCode::BadArgument: return "BadArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace kgraph

#endif // KGRAPH_ERRORS_HPP
