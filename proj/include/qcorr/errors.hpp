#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define QCORR_DEFINE_ERROR(NAME)                                  \
    struct NAME : Error {                                         \
        explicit NAME(const std::string& msg) : Error(msg) {}     \
    }

QCORR_DEFINE_ERROR(NonFiniteError);
QCORR_DEFINE_ERROR(NonHermitianError);
QCORR_DEFINE_ERROR(DimensionError);
QCORR_DEFINE_ERROR(DomainError);
QCORR_DEFINE_ERROR(InvalidStateError);
QCORR_DEFINE_ERROR(NotPositiveError);
QCORR_DEFINE_ERROR(NotXStateError);
QCORR_DEFINE_ERROR(DegenerateOutcomeError);
QCORR_DEFINE_ERROR(SingularInputError);
QCORR_DEFINE_ERROR(NotPhysicalError);
QCORR_DEFINE_ERROR(SingularityError);
QCORR_DEFINE_ERROR(BracketError);
QCORR_DEFINE_ERROR(DegenerateEllipsoidError);
QCORR_DEFINE_ERROR(NotCPError);
QCORR_DEFINE_ERROR(NotEBError);
QCORR_DEFINE_ERROR(NoSolutionError);
QCORR_DEFINE_ERROR(InvalidVarianceError);
QCORR_DEFINE_ERROR(TruncationError);

#undef QCORR_DEFINE_ERROR

} // namespace qcorr
