#pragma once

#include <stdexcept>

namespace ptqes {

// Base class for every failure this library reports.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numerics
struct NoSignChange : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };

// shared parameter validation
struct BadParams : Error { using Error::Error; };

// hamiltonics
struct SingularMap : Error { using Error::Error; };

// dynamics
struct NonRealFixedPoint : Error { using Error::Error; };
struct NoReturn : Error { using Error::Error; };

// bdpoly
struct NoRoot : Error { using Error::Error; };
struct NonRealDetected : Error { using Error::Error; };

}  // namespace ptqes
