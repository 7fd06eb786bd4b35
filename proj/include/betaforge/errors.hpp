#pragma once

#include <stdexcept>
#include <string>

namespace betaforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BETAFORGE_ERROR(Name)                      \
    struct Name : Error {                          \
        using Error::Error;                        \
        Name() : Error(#Name) {}                   \
    }

BETAFORGE_ERROR(NoSignChange);
BETAFORGE_ERROR(MultipleRoots);
BETAFORGE_ERROR(IncompatibleField);
BETAFORGE_ERROR(BetaNotGreaterThanOne);
BETAFORGE_ERROR(DigitOutOfRange);
BETAFORGE_ERROR(BetaOutOfRange);
BETAFORGE_ERROR(PointOutsideI);
BETAFORGE_ERROR(HorizonTooShort);
BETAFORGE_ERROR(BetaBelowThreshold);
BETAFORGE_ERROR(NotBelowGoldenRatio);
BETAFORGE_ERROR(DegenerateInterval);
BETAFORGE_ERROR(CertificationFailure);
BETAFORGE_ERROR(JxNotFound);
BETAFORGE_ERROR(BracketFailure);
BETAFORGE_ERROR(TooLarge);
BETAFORGE_ERROR(InexactPoint);
BETAFORGE_ERROR(SignUndetermined);

#undef BETAFORGE_ERROR

} // namespace betaforge
