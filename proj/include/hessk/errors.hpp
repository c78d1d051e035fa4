#pragma once

#include <stdexcept>
#include <string>

namespace hessk {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HESSK_DEFINE_ERROR(Name)                                \
    struct Name : Error {                                       \
        explicit Name(const std::string& what) : Error(what) {} \
    }

HESSK_DEFINE_ERROR(NonFiniteError);
HESSK_DEFINE_ERROR(NotSymmetricError);
HESSK_DEFINE_ERROR(NoConvergenceError);
HESSK_DEFINE_ERROR(SingularError);
HESSK_DEFINE_ERROR(NotSkewError);
HESSK_DEFINE_ERROR(BadDegreeError);
HESSK_DEFINE_ERROR(BadIndexError);
HESSK_DEFINE_ERROR(NotPositiveError);
HESSK_DEFINE_ERROR(MissingFreeGammaError);
HESSK_DEFINE_ERROR(BadRangeError);
HESSK_DEFINE_ERROR(NonPositiveSigmaError);
HESSK_DEFINE_ERROR(TooLargeError);
HESSK_DEFINE_ERROR(NonPositiveMinorError);
HESSK_DEFINE_ERROR(NonPositiveSkError);
HESSK_DEFINE_ERROR(SingularMinorError);
HESSK_DEFINE_ERROR(NotPositiveDefiniteError);
HESSK_DEFINE_ERROR(InfeasibleParamsError);
HESSK_DEFINE_ERROR(BadBranchError);
HESSK_DEFINE_ERROR(BadDeltaError);
HESSK_DEFINE_ERROR(NonPositiveEstimateError);

#undef HESSK_DEFINE_ERROR

} // namespace hessk
