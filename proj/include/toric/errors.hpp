#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TORIC_DEFINE_ERROR(name)                  \
    class name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

TORIC_DEFINE_ERROR(InvalidParameter);
TORIC_DEFINE_ERROR(UndefinedMetrics);
TORIC_DEFINE_ERROR(NotACycle);
TORIC_DEFINE_ERROR(NotEmbeddable);
TORIC_DEFINE_ERROR(ResourceLimit);
TORIC_DEFINE_ERROR(InvalidWalk);
TORIC_DEFINE_ERROR(InvalidPlan);
TORIC_DEFINE_ERROR(InconsistentEstimate);
TORIC_DEFINE_ERROR(InsufficientData);
TORIC_DEFINE_ERROR(Unsupported);
TORIC_DEFINE_ERROR(RoundingError);

#undef TORIC_DEFINE_ERROR

}  // namespace toric
