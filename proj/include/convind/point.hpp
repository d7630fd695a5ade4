#pragma once

// Exact points and point sets in dimension 2 or 3, plus the canonical
// direction representative used to compare segment directions exactly.

#include <convind/rational.hpp>

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace convind {

struct Vec {
    std::vector<Rational> coords;

    Vec() = default;
    explicit Vec(int dim) : coords(dim, Rational(0)) {}
    Vec(std::initializer_list<Rational> cs) : coords(cs) {}

    int dim() const { return static_cast<int>(coords.size()); }
    Rational& operator[](int i) { return coords[i]; }
    const Rational& operator[](int i) const { return coords[i]; }

    bool operator==(const Vec& o) const { return coords == o.coords; }
    bool operator!=(const Vec& o) const { return coords != o.coords; }
    // Lexicographic; gives point sets a deterministic total order.
    bool operator<(const Vec& o) const {
        return std::lexicographical_compare(
            coords.begin(), coords.end(), o.coords.begin(), o.coords.end(),
            [](const Rational& a, const Rational& b) { return cmp(a, b) < 0; });
    }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](const Rational& c) { return sgn(c) == 0; });
    }
};

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator-(const Vec& a) {
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = -a[i];
    return r;
}

inline Vec operator*(const Rational& s, const Vec& a) {
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return r;
}

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Rational s(0);
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational squared_length(const Vec& a) { return dot(a, a); }

inline Vec midpoint(const Vec& a, const Vec& b) {
    return rat(1, 2) * (a + b);
}

// Canonical representative of the line direction spanned by v: integer
// coordinates, gcd 1, first nonzero coordinate positive. canonical(v) ==
// canonical(w) exactly when v and w are parallel (either orientation).
inline Vec canonical_direction(const Vec& v) {
    if (v.is_zero()) throw std::invalid_argument("canonical_direction of zero vector");
    // Clear denominators: multiply by lcm of denominators, divide by gcd of numerators.
    Integer l(1);
    for (const Rational& c : v.coords)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    Integer g(0);
    std::vector<Integer> ints(v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        Rational scaled = v[i] * Rational(l);
        ints[i] = scaled.get_num();  // den is 1 after scaling
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    int flip = 1;
    for (const Integer& c : ints) {
        if (sgn(c) != 0) { flip = sgn(c); break; }
    }
    Vec r(v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        Integer c = ints[i] / g;
        if (flip < 0) c = -c;
        r[i] = Rational(c);
    }
    return r;
}

struct PointSet {
    int dimension = 0;
    std::vector<Vec> points;

    int size() const { return static_cast<int>(points.size()); }
    const Vec& operator[](int i) const { return points[i]; }
    Vec& operator[](int i) { return points[i]; }

    void push_back(Vec p) {
        if (p.dim() != dimension) throw std::invalid_argument("point dimension mismatch");
        points.push_back(std::move(p));
    }

    bool all_distinct() const {
        std::map<Vec, int> seen;
        for (int i = 0; i < size(); ++i)
            if (!seen.emplace(points[i], i).second) return false;
        return true;
    }
};

inline PointSet make_point_set(int dimension, std::vector<Vec> pts) {
    PointSet s;
    s.dimension = dimension;
    for (auto& p : pts) s.push_back(std::move(p));
    return s;
}

inline PointSet translate(const PointSet& s, const Vec& t) {
    PointSet r;
    r.dimension = s.dimension;
    for (const Vec& p : s.points) r.push_back(p + t);
    return r;
}

// Affine rank of the set (dimension of its affine hull), by exact Gaussian
// elimination on the difference vectors from points[0].
inline int affine_rank(const PointSet& s) {
    if (s.size() <= 1) return 0;
    std::vector<Vec> rows;
    for (int i = 1; i < s.size(); ++i) rows.push_back(s[i] - s[0]);
    int rank = 0;
    int d = s.dimension;
    for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (sgn(rows[r][col]) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || sgn(rows[r][col]) == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (int c = col; c < d; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

// Linear functional x -> dot(normal, x); offset is a separating threshold
// (value at the distinguished point strictly exceeds it, values elsewhere
// do not). normal is never zero.
struct LinearFunctional {
    Vec normal;
    Rational offset;

    Rational value(const Vec& x) const { return dot(normal, x); }
};

}  // namespace convind
