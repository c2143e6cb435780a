#pragma once

#include <stdexcept>
#include <string>

namespace curvetower {

// Error taxonomy shared by the library and the CLI exit-code table.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expression text does not conform to the grammar. Carries a 0-based position.
struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Germ is reducible, non-reduced, smooth where a singular germ is required,
// or otherwise outside the construction's reach (a_1 = 1, n < 2, f(O) != 0).
struct GermError : Error {
    using Error::Error;
};

// A face function fails to split as c x^r y^s (y^a + xi x^b)^A over Q.
struct NonRationalRoot : Error {
    using Error::Error;
};

// A truncated-series read or face certification ran out of box.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Contract violation on operation inputs (not monic, bad divisor, ...).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace curvetower
