#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nelab {

/// All coordinates are stored as complex doubles; real-field values carry a
/// zero imaginary part. The field tag on a space decides which operations
/// (vertex enumeration, sign sampling, ...) are admissible.
using Scalar = std::complex<double>;

enum class Field { real, complex };

inline std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field parse_field(const std::string& s) {
    if (s == "real") return Field::real;
    if (s == "complex") return Field::complex;
    throw std::invalid_argument("unknown field '" + s + "' (expected: real | complex)");
}

inline bool nearly(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

/// Unit-modulus phase of z, with phase(0) = 1 by convention.
inline Scalar phase(Scalar z) {
    const double m = std::abs(z);
    return m == 0.0 ? Scalar(1.0, 0.0) : z / m;
}

/// Renders a scalar in the CLI literal syntax: "1.5", "-2i", "0.5-0.25i".
std::string format_scalar(Scalar z);

/// Parses a complex literal: "1", "-2.5", "i", "-i", "2i", "1+2i", "0.5-0.866i".
Scalar parse_scalar(const std::string& text);

}  // namespace nelab
