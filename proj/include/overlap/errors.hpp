#pragma once

#include <stdexcept>
#include <string>

namespace overlap {

// Error taxonomy shared by the whole library.  Everything derives from
// Error so callers can catch one type at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct InvalidMomentum : Error {
    using Error::Error;
};

struct DegenerateParameters : Error {
    using Error::Error;
};

struct PoleInSeries : Error {
    using Error::Error;
};

struct Overflow : Error {
    using Error::Error;
};

struct DegenerateConditioning : Error {
    using Error::Error;
};

struct Endpoint : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct TriangleViolation : Error {
    using Error::Error;
};

struct UnsupportedScenario : Error {
    using Error::Error;
};

} // namespace overlap
