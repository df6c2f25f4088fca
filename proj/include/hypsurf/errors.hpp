#pragma once

#include <stdexcept>
#include <string>

namespace hypsurf {

enum class ErrorKind {
    InvalidArgument,
    InvalidPoint,
    EllipticElement,
    ParabolicElement,
    IntersectingGeodesics,
    NotHyperbolicGenerator,
    AreaMismatch,
    DiscretenessSuspect,
    DegenerateLength,
    EnumerationBudgetExceeded,
    InconclusiveCutoff,
    OutsideCollar,
    OutOfRegime,
    ParameterOutOfRange,
    HypothesisViolated,
    MCBudget,
    DomainError,
    InsufficientThinPoints,
    InsufficientThickPoints,
    UnknownSuite,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hypsurf
