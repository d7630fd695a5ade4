#pragma once

// Shared test utilities: independent oracles (Gaussian elimination and
// subset enumeration instead of the library's LP path) and seeded input
// generators. Oracles are deliberately slow and simple.

#include <convind/extremal.hpp>
#include <convind/point.hpp>
#include <convind/predicates.hpp>
#include <convind/rng.hpp>
#include <convind/separation.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testutil {

using namespace convind;

// Unique solution of sum(lambda_i * q_i) = p, sum(lambda_i) = 1, by exact
// Gauss-Jordan on the (d+1) x k affine system. nullopt when the system is
// inconsistent or underdetermined.
inline std::optional<std::vector<Rational>> barycentric(const Vec& p, const std::vector<Vec>& q) {
    const int d = p.dim();
    const int k = static_cast<int>(q.size());
    const int rows = d + 1;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(k + 1));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < k; ++c) m[r][c] = q[c][r];
        m[r][k] = p[r];
    }
    for (int c = 0; c <= k; ++c) m[d][c] = rat(1);

    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < k && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (sgn(m[r][col]) != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[rank], m[pr]);
        Rational inv = rat(1) / m[rank][col];
        for (int c = col; c <= k; ++c) m[rank][c] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col];
            for (int c = col; c <= k; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < k) return std::nullopt;  // underdetermined
    for (int r = rank; r < rows; ++r)
        if (sgn(m[r][k]) != 0) return std::nullopt;  // inconsistent
    std::vector<Rational> lambda(k);
    for (int i = 0; i < rank; ++i) lambda[pivot_col[i]] = m[i][k];
    return lambda;
}

// Caratheodory: p lies in conv(others) iff some affinely independent subset
// of size <= d+1 contains it with nonnegative barycentric coordinates.
inline bool membership_oracle(const Vec& p, const std::vector<Vec>& others) {
    const int d = p.dim();
    const int n = static_cast<int>(others.size());
    const int max_k = std::min(n, d + 1);
    std::vector<int> idx;
    auto search = [&](auto&& self, int start, int want) -> bool {
        if (want == 0) {
            std::vector<Vec> sub;
            for (int i : idx) sub.push_back(others[i]);
            auto lambda = barycentric(p, sub);
            if (!lambda) return false;
            for (const Rational& l : *lambda)
                if (sgn(l) < 0) return false;
            return true;
        }
        for (int i = start; i + want <= n; ++i) {
            idx.push_back(i);
            if (self(self, i + 1, want - 1)) return true;
            idx.pop_back();
        }
        return false;
    };
    for (int k = 1; k <= max_k; ++k)
        if (search(search, 0, k)) return true;
    return false;
}

inline bool extreme_oracle(int i, const PointSet& s) {
    std::vector<Vec> others;
    for (int j = 0; j < s.size(); ++j) {
        if (j == i) continue;
        if (s[j] == s[i]) return false;
        others.push_back(s[j]);
    }
    return !membership_oracle(s[i], others);
}

inline bool ci_oracle(const PointSet& s) {
    for (int i = 0; i < s.size(); ++i)
        if (!extreme_oracle(i, s)) return false;
    return true;
}

// Largest concyclic subset of a planar point set by circle enumeration.
inline int max_concyclic_oracle(const PointSet& s) {
    const int n = s.size();
    int best = std::min(n, 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                auto circ = circumcircle(s[a], s[b], s[c]);
                if (!circ) continue;
                int count = 0;
                for (int i = 0; i < n; ++i)
                    if (circ->contains(s[i])) ++count;
                best = std::max(best, count);
            }
    return best;
}

inline PointSet random_point_set(Rng& rng, int n, int dim, long den_cap = 8, long magnitude = 8) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        PointSet s;
        s.dimension = dim;
        for (int i = 0; i < n; ++i) s.push_back(rng.point(dim, den_cap, magnitude));
        if (s.all_distinct()) return s;
    }
    throw std::runtime_error("random_point_set: could not draw distinct points");
}

inline PointSet planar(std::initializer_list<std::pair<long, long>> pts) {
    PointSet s;
    s.dimension = 2;
    for (const auto& [x, y] : pts) s.push_back(Vec{rat(x), rat(y)});
    return s;
}

inline PointSet spatial(std::initializer_list<std::array<long, 3>> pts) {
    PointSet s;
    s.dimension = 3;
    for (const auto& p : pts) s.push_back(Vec{rat(p[0]), rat(p[1]), rat(p[2])});
    return s;
}

}  // namespace testutil
