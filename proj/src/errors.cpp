#include "rolldance/errors.hpp"

namespace rolldance {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotCollinear: return "NotCollinear";
        case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
        case ErrorKind::NonUnitAxis: return "NonUnitAxis";
        case ErrorKind::NotNull: return "NotNull";
        case ErrorKind::ZeroOctonion: return "ZeroOctonion";
        case ErrorKind::IdenticalPoints: return "IdenticalPoints";
        case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorKind::NotInscribed: return "NotInscribed";
        case ErrorKind::DegenerateDecomposition: return "DegenerateDecomposition";
        case ErrorKind::ScaleUndefined: return "ScaleUndefined";
        case ErrorKind::NotDancing: return "NotDancing";
        case ErrorKind::ClosureFailure: return "ClosureFailure";
        case ErrorKind::SamplingExhausted: return "SamplingExhausted";
        case ErrorKind::DegenerateEdge: return "DegenerateEdge";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::NotTangent: return "NotTangent";
        case ErrorKind::IdenticalClasses: return "IdenticalClasses";
        case ErrorKind::NotOnCone: return "NotOnCone";
        case ErrorKind::DegenerateRay: return "DegenerateRay";
        case ErrorKind::NontrivialMonodromy: return "NontrivialMonodromy";
        case ErrorKind::NonGeneric: return "NonGeneric";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::NotSymmetricTraceless: return "NotSymmetricTraceless";
        case ErrorKind::ChartSingularity: return "ChartSingularity";
        case ErrorKind::SolveFailure: return "SolveFailure";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace rolldance
