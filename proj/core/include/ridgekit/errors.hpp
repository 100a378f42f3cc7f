#pragma once

#include <stdexcept>
#include <string>

namespace ridgekit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RIDGEKIT_DEFINE_ERROR(NAME)                                           \
    class NAME : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
    }

RIDGEKIT_DEFINE_ERROR(InvalidInput);
RIDGEKIT_DEFINE_ERROR(UnsupportedDerivative);
RIDGEKIT_DEFINE_ERROR(SingularPoint);
RIDGEKIT_DEFINE_ERROR(NormDiverges);
RIDGEKIT_DEFINE_ERROR(InvalidTestFunction);
RIDGEKIT_DEFINE_ERROR(InvalidSupport);
RIDGEKIT_DEFINE_ERROR(DegenerateAdmissibility);
RIDGEKIT_DEFINE_ERROR(UseSliceRoute);
RIDGEKIT_DEFINE_ERROR(QuadratureFailure);
RIDGEKIT_DEFINE_ERROR(InvalidDirection);
RIDGEKIT_DEFINE_ERROR(MissingDerivatives);
RIDGEKIT_DEFINE_ERROR(DivergentWeight);
RIDGEKIT_DEFINE_ERROR(TruncationFailure);
RIDGEKIT_DEFINE_ERROR(InvalidExponent);

#undef RIDGEKIT_DEFINE_ERROR

} // namespace ridgekit
