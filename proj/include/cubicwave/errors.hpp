#pragma once

#include <stdexcept>
#include <string>

namespace cubicwave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CUBICWAVE_ERROR(Name)                                                  \
    struct Name : Error {                                                      \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}     \
    }

CUBICWAVE_ERROR(DegenerateInterval);
CUBICWAVE_ERROR(OutOfDomain);
CUBICWAVE_ERROR(FrameMismatch);
CUBICWAVE_ERROR(PoleHit);
CUBICWAVE_ERROR(BadResolution);
CUBICWAVE_ERROR(GridMismatch);
CUBICWAVE_ERROR(UnsupportedRapidity);
CUBICWAVE_ERROR(EigenFailure);
CUBICWAVE_ERROR(EigenvalueNotIsolated);
CUBICWAVE_ERROR(SectorUnsupported);
CUBICWAVE_ERROR(ResolventSingular);
CUBICWAVE_ERROR(NoStoredState);
CUBICWAVE_ERROR(UnsupportedExponent);
CUBICWAVE_ERROR(NonPositiveValues);
CUBICWAVE_ERROR(FitDiverged);
CUBICWAVE_ERROR(BracketInvalid);
CUBICWAVE_ERROR(Inconclusive);
CUBICWAVE_ERROR(ConfigError);

#undef CUBICWAVE_ERROR

} // namespace cubicwave
