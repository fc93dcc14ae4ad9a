// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace chanlink {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CHANLINK_DEFINE_ERROR(Name)            \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

CHANLINK_DEFINE_ERROR(LabelCollision);      // duplicate leg label in one operator
CHANLINK_DEFINE_ERROR(UnknownLeg);          // label not present on the operator
CHANLINK_DEFINE_ERROR(BadPermutation);      // order list is not a permutation of the legs
CHANLINK_DEFINE_ERROR(NotHermitian);        // operator fails the Hermiticity tolerance
CHANLINK_DEFINE_ERROR(NotPSD);              // eigenvalue below the PSD clamp window
CHANLINK_DEFINE_ERROR(ShapeError);          // dimension mismatch
CHANLINK_DEFINE_ERROR(NotTracePreserving);  // Kraus completeness violated
CHANLINK_DEFINE_ERROR(NotCPTP);             // channel fails CPTP verification
CHANLINK_DEFINE_ERROR(LinkError);           // shared-leg specification invalid
CHANLINK_DEFINE_ERROR(TooLarge);            // total dimension exceeds the guard
CHANLINK_DEFINE_ERROR(BadEpsilon);          // epsilon outside (0,1)
CHANLINK_DEFINE_ERROR(ParamRange);          // family parameter outside its valid range
CHANLINK_DEFINE_ERROR(NotCommuting);        // eigen-pairing fidelity on non-commuting Chois
CHANLINK_DEFINE_ERROR(NotUnitTrace);        // density operator trace differs from 1

#undef CHANLINK_DEFINE_ERROR

} // namespace chanlink
