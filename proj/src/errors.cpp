#include "hypsurf/errors.hpp"

namespace hypsurf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidPoint: return "InvalidPoint";
        case ErrorKind::EllipticElement: return "EllipticElement";
        case ErrorKind::ParabolicElement: return "ParabolicElement";
        case ErrorKind::IntersectingGeodesics: return "IntersectingGeodesics";
        case ErrorKind::NotHyperbolicGenerator: return "NotHyperbolicGenerator";
        case ErrorKind::AreaMismatch: return "AreaMismatch";
        case ErrorKind::DiscretenessSuspect: return "DiscretenessSuspect";
        case ErrorKind::DegenerateLength: return "DegenerateLength";
        case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
        case ErrorKind::InconclusiveCutoff: return "InconclusiveCutoff";
        case ErrorKind::OutsideCollar: return "OutsideCollar";
        case ErrorKind::OutOfRegime: return "OutOfRegime";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::MCBudget: return "MCBudget";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InsufficientThinPoints: return "InsufficientThinPoints";
        case ErrorKind::InsufficientThickPoints: return "InsufficientThickPoints";
        case ErrorKind::UnknownSuite: return "UnknownSuite";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace hypsurf
