#pragma once

#include <stdexcept>
#include <string>

namespace teamreg {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension / index mismatch between related objects.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid numeric content (probability rows off the simplex, negative
// rewards, non-finite inputs).
struct ValidationError : Error {
    using Error::Error;
};

// A dense table or search space would exceed its configured cap.
struct SizeError : Error {
    using Error::Error;
};

// Input file could not be parsed or is structurally malformed.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace teamreg
