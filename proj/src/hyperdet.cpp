#include "lueq/hyperdet.hpp"

#include <array>
#include <stdexcept>

namespace lueq {

namespace {

void require_shape(const Hypermatrix& a, Eigen::Index n) {
    if (a.order() != 3 || a.dim(0) != n || a.dim(1) != n || a.dim(2) != n)
        throw std::invalid_argument("expected a " + std::to_string(n) + "x" + std::to_string(n) + "x" +
                                    std::to_string(n) + " hypermatrix");
}

struct Perm3 {
    std::array<int, 3> p;
    int sign;
};

constexpr std::array<Perm3, 6> kPerms3 = {{
    {{0, 1, 2}, +1},
    {{0, 2, 1}, -1},
    {{1, 0, 2}, -1},
    {{1, 2, 0}, +1},
    {{2, 0, 1}, +1},
    {{2, 1, 0}, -1},
}};

// Bracket monomial (abc)(abd)(acd)(bcd): the degree-4 invariant of the
// ternary cubic, one epsilon factor per bracket and one symmetric-tensor
// factor per letter.
double aronhold_quartic(const double c[3][3][3]) {
    double total = 0.0;
    for (const auto& p : kPerms3)
        for (const auto& q : kPerms3)
            for (const auto& r : kPerms3)
                for (const auto& s : kPerms3) {
                    const double v = c[p.p[0]][q.p[0]][r.p[0]] * c[p.p[1]][q.p[1]][s.p[0]] *
                                     c[p.p[2]][r.p[1]][s.p[1]] * c[q.p[2]][r.p[2]][s.p[2]];
                    total += p.sign * q.sign * r.sign * s.sign * v;
                }
    return total;
}

// Bracket monomial (abc)(abd)(ace)(bdf)(cef)(def): a nonvanishing degree-6
// invariant, proportional to the classical sextic.
double aronhold_sextic(const double c[3][3][3]) {
    double total = 0.0;
    for (const auto& p : kPerms3)                // (abc)
        for (const auto& q : kPerms3)            // (abd)
            for (const auto& r : kPerms3)        // (ace)
                for (const auto& s : kPerms3)    // (bdf)
                    for (const auto& t : kPerms3)        // (cef)
                        for (const auto& u : kPerms3) {  // (def)
                            const double v = c[p.p[0]][q.p[0]][r.p[0]] *  // a
                                             c[p.p[1]][q.p[1]][s.p[0]] *  // b
                                             c[p.p[2]][r.p[1]][t.p[0]] *  // c
                                             c[q.p[2]][s.p[1]][u.p[0]] *  // d
                                             c[r.p[2]][t.p[1]][u.p[1]] *  // e
                                             c[s.p[2]][t.p[2]][u.p[2]];   // f
                            total += p.sign * q.sign * r.sign * s.sign * t.sign * u.sign * v;
                        }
    return total;
}

}  // namespace

TernaryCubicInvariants ternary_cubic_invariants(const double c[3][3][3]) {
    // Normalization fixed so that Delta = T^2 - 64 S^3 vanishes exactly on
    // singular cubics (calibrated against reducible and nodal families).
    TernaryCubicInvariants inv;
    inv.S = aronhold_quartic(c) / 24.0;
    inv.T = aronhold_sextic(c) / 6.0;
    return inv;
}

double det222(const Hypermatrix& a) {
    require_shape(a, 2);
    auto e = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) { return a.at({i, j, k}); };
    const double squares = e(0, 0, 0) * e(0, 0, 0) * e(1, 1, 1) * e(1, 1, 1) +
                           e(0, 0, 1) * e(0, 0, 1) * e(1, 1, 0) * e(1, 1, 0) +
                           e(0, 1, 0) * e(0, 1, 0) * e(1, 0, 1) * e(1, 0, 1) +
                           e(1, 0, 0) * e(1, 0, 0) * e(0, 1, 1) * e(0, 1, 1);
    const double cross = e(0, 0, 0) * e(0, 0, 1) * e(1, 1, 0) * e(1, 1, 1) +
                         e(0, 0, 0) * e(0, 1, 0) * e(1, 0, 1) * e(1, 1, 1) +
                         e(0, 0, 0) * e(1, 0, 0) * e(0, 1, 1) * e(1, 1, 1) +
                         e(0, 0, 1) * e(0, 1, 0) * e(1, 0, 1) * e(1, 1, 0) +
                         e(0, 0, 1) * e(1, 0, 0) * e(0, 1, 1) * e(1, 1, 0) +
                         e(0, 1, 0) * e(1, 0, 0) * e(0, 1, 1) * e(1, 0, 1);
    const double quads = e(0, 0, 0) * e(0, 1, 1) * e(1, 0, 1) * e(1, 1, 0) +
                         e(0, 0, 1) * e(0, 1, 0) * e(1, 0, 0) * e(1, 1, 1);
    return squares - 2.0 * cross + 4.0 * quads;
}

double det333(const Hypermatrix& a) {
    require_shape(a, 3);

    // Coefficients of F(x) = det(x_0 A_0 + x_1 A_1 + x_2 A_2) with A_k the
    // mode-3 slices, expanded exactly as a sum over the six permutations.
    // c is the symmetric coefficient tensor of the resulting ternary cubic.
    double c[3][3][3] = {};
    for (const auto& p : kPerms3)
        for (int m0 = 0; m0 < 3; ++m0)
            for (int m1 = 0; m1 < 3; ++m1)
                for (int m2 = 0; m2 < 3; ++m2) {
                    const double v = p.sign * a.at({0, p.p[0], m0}) * a.at({1, p.p[1], m1}) * a.at({2, p.p[2], m2});
                    c[m0][m1][m2] += v / 6.0;
                    c[m0][m2][m1] += v / 6.0;
                    c[m1][m0][m2] += v / 6.0;
                    c[m1][m2][m0] += v / 6.0;
                    c[m2][m0][m1] += v / 6.0;
                    c[m2][m1][m0] += v / 6.0;
                }

    return ternary_cubic_invariants(c).discriminant();
}

}  // namespace lueq
