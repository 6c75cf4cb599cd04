#pragma once

#include <stdexcept>
#include <string>

namespace polsar {

enum class ErrorKind {
    NotPositiveDefinite,
    DimensionMismatch,
    Domain,
    EmptySample,
    LooksMismatch,
    StripTooShort,
    AllCandidatesDegenerate,
    OutOfBounds,
    DegenerateGeometry,
    BadMagic,
    TruncatedFile,
    HeaderMismatch,
    BadLength,
    WrongDim,
    Parse,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. `kind()` lets callers (the CLI
/// in particular) map failures onto exit codes without a cascade of catches.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures caused by singular or otherwise degenerate numerics
    /// rather than by malformed input.
    bool is_numerical() const noexcept {
        return kind_ == ErrorKind::NotPositiveDefinite ||
               kind_ == ErrorKind::AllCandidatesDegenerate ||
               kind_ == ErrorKind::DegenerateGeometry;
    }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class ErrorOf : public Error {
public:
    explicit ErrorOf(const std::string& what) : Error(K, what) {}
};

using NotPositiveDefinite = ErrorOf<ErrorKind::NotPositiveDefinite>;
using DimensionMismatch = ErrorOf<ErrorKind::DimensionMismatch>;
using DomainError = ErrorOf<ErrorKind::Domain>;
using EmptySample = ErrorOf<ErrorKind::EmptySample>;
using LooksMismatch = ErrorOf<ErrorKind::LooksMismatch>;
using StripTooShort = ErrorOf<ErrorKind::StripTooShort>;
using AllCandidatesDegenerate = ErrorOf<ErrorKind::AllCandidatesDegenerate>;
using OutOfBounds = ErrorOf<ErrorKind::OutOfBounds>;
using DegenerateGeometry = ErrorOf<ErrorKind::DegenerateGeometry>;
using BadMagic = ErrorOf<ErrorKind::BadMagic>;
using TruncatedFile = ErrorOf<ErrorKind::TruncatedFile>;
using HeaderMismatch = ErrorOf<ErrorKind::HeaderMismatch>;
using BadLength = ErrorOf<ErrorKind::BadLength>;
using WrongDim = ErrorOf<ErrorKind::WrongDim>;
using ParseError = ErrorOf<ErrorKind::Parse>;

}  // namespace polsar
