#pragma once

// Exact orientation / circle predicates in dimensions 2 and 3.

#include <convind/point.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace convind {

namespace detail {

inline Rational det2(const Rational& a, const Rational& b,
                     const Rational& c, const Rational& d) {
    return a * d - b * c;
}

inline Rational det3(const Vec& r0, const Vec& r1, const Vec& r2) {
    return r0[0] * det2(r1[1], r1[2], r2[1], r2[2])
         - r0[1] * det2(r1[0], r1[2], r2[0], r2[2])
         + r0[2] * det2(r1[0], r1[1], r2[0], r2[1]);
}

}  // namespace detail

// Signed volume determinant of d+1 points in dimension d; used raw by the
// max-volume quadruple selection, sign-only by orient().
inline Rational orientation_det(const std::vector<Vec>& simplex) {
    if (simplex.empty()) throw std::invalid_argument("orient: empty input");
    int d = simplex[0].dim();
    if (static_cast<int>(simplex.size()) != d + 1)
        throw std::invalid_argument("orient: need d+1 points of dimension d");
    for (const Vec& p : simplex)
        if (p.dim() != d) throw std::invalid_argument("orient: dimension mismatch");
    if (d == 2) {
        Vec u = simplex[1] - simplex[0];
        Vec v = simplex[2] - simplex[0];
        return detail::det2(u[0], u[1], v[0], v[1]);
    }
    if (d == 3) {
        return detail::det3(simplex[1] - simplex[0], simplex[2] - simplex[0],
                            simplex[3] - simplex[0]);
    }
    throw std::invalid_argument("orient: only d in {2,3}");
}

inline int orient(const std::vector<Vec>& simplex) {
    return sgn(orientation_det(simplex));
}

inline int orient(const Vec& a, const Vec& b, const Vec& c) {
    return orient(std::vector<Vec>{a, b, c});
}

inline int orient(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    return orient(std::vector<Vec>{a, b, c, d});
}

struct Circle {
    Vec center;
    Rational radius_squared;

    bool contains(const Vec& p) const {
        return squared_length(p - center) == radius_squared;
    }
};

// Circumscribed circle of a non-degenerate planar triangle: the exact center
// solves the two linear "equal power" equations.
inline std::optional<Circle> circumcircle(const Vec& a, const Vec& b, const Vec& c) {
    if (orient(a, b, c) == 0) return std::nullopt;
    // 2(b-a)·x = |b|^2-|a|^2 ; 2(c-a)·x = |c|^2-|a|^2
    Vec u = b - a, v = c - a;
    Rational ru = (squared_length(b) - squared_length(a)) / 2;
    Rational rv = (squared_length(c) - squared_length(a)) / 2;
    Rational den = detail::det2(u[0], u[1], v[0], v[1]);
    Vec center(2);
    center[0] = detail::det2(ru, u[1], rv, v[1]) / den;
    center[1] = detail::det2(u[0], ru, v[0], rv) / den;
    return Circle{center, squared_length(a - center)};
}

// Sign of the 4-point in-circle determinant (2-D): 0 iff the four points are
// concyclic or some triple is collinear; the exact test behind every
// "lies on one common circle" decision.
inline int incircle(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    Vec rows[3] = {a - d, b - d, c - d};
    Vec lifted[3] = {Vec(3), Vec(3), Vec(3)};
    for (int i = 0; i < 3; ++i) {
        lifted[i][0] = rows[i][0];
        lifted[i][1] = rows[i][1];
        lifted[i][2] = squared_length(rows[i]);
    }
    return sgn(detail::det3(lifted[0], lifted[1], lifted[2]));
}

}  // namespace convind
