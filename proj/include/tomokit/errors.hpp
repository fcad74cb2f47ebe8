// Error types thrown by tomokit operations. Each corresponds to a named
// precondition failure; the CLI maps them to exit code 3.

#pragma once

#include <stdexcept>
#include <string>

namespace tomokit {

struct TomoError : std::runtime_error {
    explicit TomoError(const std::string& what) : std::runtime_error(what) {}
};

#define TOMOKIT_ERROR(Name)                                                  \
    struct Name : TomoError {                                                \
        explicit Name(const std::string& what)                               \
            : TomoError(std::string(#Name) + ": " + what) {}                 \
    }

TOMOKIT_ERROR(BoundaryLeak);
TOMOKIT_ERROR(GridTooCoarse);
TOMOKIT_ERROR(SupportClipped);
TOMOKIT_ERROR(TooFewAngles);
TOMOKIT_ERROR(EmptyFiber);
TOMOKIT_ERROR(NyquistViolation);
TOMOKIT_ERROR(GridMismatch);
TOMOKIT_ERROR(SingularAngle);
TOMOKIT_ERROR(SingularAngleInData);
TOMOKIT_ERROR(TruncationInsufficient);
TOMOKIT_ERROR(ShiftOutOfRange);
TOMOKIT_ERROR(RowNotNormalized);
TOMOKIT_ERROR(NegativeProbability);
TOMOKIT_ERROR(NotInvertible);
TOMOKIT_ERROR(NotPrime);
TOMOKIT_ERROR(WrongKind);
TOMOKIT_ERROR(BadGrid);
TOMOKIT_ERROR(IoError);

#undef TOMOKIT_ERROR

}  // namespace tomokit
