#pragma once

#include "lueq/hypermatrix.hpp"

namespace lueq {

/// Cayley's 2x2x2 hyperdeterminant (degree-4 polynomial). Vanishes exactly
/// when the associated trilinear form has a nontrivial critical point.
/// Normalized so that the tensor with a_000 = a_111 = 1 maps to 1.
double det222(const Hypermatrix& a);

/// 3x3x3 hyperdeterminant up to a fixed nonzero scalar, computed by
/// Schlaefli's method: the discriminant of the ternary cubic
/// F(x) = det(x_0 A_0 + x_1 A_1 + x_2 A_2) built from the mode-3 slices,
/// evaluated through the cubic's degree-4 and degree-6 invariants S and T
/// as Delta = T^2 - 64 S^3. Degree 36 in the entries; the transformation
/// law carries exponent 12 per mode.
double det333(const Hypermatrix& a);

/// Degree-4 and degree-6 invariants of a ternary cubic given as the
/// symmetric coefficient tensor c (F(x) = sum_{ijk} c_ijk x_i x_j x_k).
/// Normalized so that the discriminant is exactly T^2 - 64 S^3.
struct TernaryCubicInvariants {
    double S = 0.0;
    double T = 0.0;
    double discriminant() const { return T * T - 64.0 * S * S * S; }
};
TernaryCubicInvariants ternary_cubic_invariants(const double c[3][3][3]);

}  // namespace lueq
