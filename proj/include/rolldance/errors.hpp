#pragma once

#include <stdexcept>
#include <string>

namespace rolldance {

enum class ErrorKind {
    InvalidArgument,
    NotCollinear,
    DegenerateQuadruple,
    NonUnitAxis,
    NotNull,
    ZeroOctonion,
    IdenticalPoints,
    DegenerateConfiguration,
    NotInscribed,
    DegenerateDecomposition,
    ScaleUndefined,
    NotDancing,
    ClosureFailure,
    SamplingExhausted,
    DegenerateEdge,
    ParameterOutOfRange,
    NotTangent,
    IdenticalClasses,
    NotOnCone,
    DegenerateRay,
    NontrivialMonodromy,
    NonGeneric,
    Degenerate,
    InternalInconsistency,
    NotSymmetricTraceless,
    ChartSingularity,
    SolveFailure,
    ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace rolldance
