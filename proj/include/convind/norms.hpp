#pragma once

// Polytopal norms given by symmetric vertex sets: exact gauge evaluation,
// unit/diameter distance censuses, strict antipodality of point families,
// and the pigeonhole covering extraction.

#include <convind/errors.hpp>
#include <convind/point.hpp>
#include <convind/separation.hpp>
#include <convind/simplex.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace convind {

// A symmetric full-dimensional polytope given by its vertex set, certified
// to actually be the vertex set (every point extreme).
struct UnitBallCertificate {
    PointSet vertices;
    std::vector<int> antipode;  // antipode[i] = index of -vertices[i]
    int padding_count = 0;      // vertices appended to reach full dimension
    ConvexPositionCertificate certificate;
};

// Append +/- w for exact orthogonal-complement directions w until the set
// spans. Orthogonality keeps every original vertex extreme (its witness
// functional extends by zero) and makes each +/- w extreme via x -> dot(w, x).
inline PointSet pad_to_full_dimension(const PointSet& v) {
    PointSet out = v;
    const int d = v.dimension;
    // Exact Gram-Schmidt (no normalization) of the current span.
    std::vector<Vec> basis;
    auto add_to_basis = [&](Vec w) {
        for (const Vec& b : basis) w = w - dot(w, b) / dot(b, b) * b;
        if (!w.is_zero()) basis.push_back(w);
    };
    for (const Vec& p : v.points) add_to_basis(p);
    for (int j = 0; j < d && static_cast<int>(basis.size()) < d; ++j) {
        Vec e(d);
        e[j] = rat(1);
        Vec w = e;
        for (const Vec& b : basis) w = w - dot(w, b) / dot(b, b) * b;
        if (w.is_zero()) continue;
        Vec dir = canonical_direction(w);
        out.push_back(dir);
        out.push_back(-dir);
        basis.push_back(w);
    }
    return out;
}

inline UnitBallCertificate make_unit_ball(const PointSet& vertices) {
    const int d = vertices.dimension;
    if (d < 2 || d > 3) throw std::invalid_argument("make_unit_ball: dimension must be 2 or 3");
    if (vertices.size() == 0) throw std::invalid_argument("make_unit_ball: empty vertex set");
    if (!vertices.all_distinct()) throw std::invalid_argument("make_unit_ball: duplicate vertices");
    UnitBallCertificate ball;
    ball.vertices = vertices;
    ball.antipode.assign(vertices.size(), -1);
    std::map<Vec, int> index;
    for (int i = 0; i < vertices.size(); ++i) {
        if (vertices[i].is_zero()) throw std::invalid_argument("make_unit_ball: zero vertex");
        index.emplace(vertices[i], i);
    }
    for (int i = 0; i < vertices.size(); ++i) {
        auto it = index.find(-vertices[i]);
        if (it == index.end()) throw std::invalid_argument("make_unit_ball: vertex set not symmetric");
        ball.antipode[i] = it->second;
    }
    if (affine_rank(vertices) < d)
        throw std::invalid_argument("make_unit_ball: vertex set not full-dimensional");
    ball.certificate = convexly_independent(vertices);
    if (ball.certificate.verdict != ConvexPositionCertificate::Verdict::independent)
        throw VerificationError("make_unit_ball: claimed vertex is not extreme");
    return ball;
}

// Gauge (Minkowski functional) of v for the ball: the least total weight of
// a nonnegative vertex combination equal to v. Exact rational LP.
inline Rational gauge(const UnitBallCertificate& ball, const Vec& v) {
    const int d = ball.vertices.dimension;
    if (v.dim() != d) throw std::invalid_argument("gauge: dimension mismatch");
    if (v.is_zero()) return rat(0);
    const int k = ball.vertices.size();
    // A certified vertex of the symmetric spanning set lies on the boundary:
    // gauge below 1 would write it as a positive shrinking of the others.
    for (int col = 0; col < k; ++col)
        if (ball.vertices[col] == v) return rat(1);
    Matrix<Rational> a(d, std::vector<Rational>(k));
    std::vector<Rational> b(d), c(k, rat(1));
    for (int col = 0; col < k; ++col)
        for (int row = 0; row < d; ++row) a[row][col] = ball.vertices[col][row];
    for (int row = 0; row < d; ++row) b[row] = v[row];
    // Advisory double pass: guess the optimal basis, re-solve it exactly, and
    // certify optimality by exact weak duality (y with yᵀB = 1 and yᵀw ≤ 1 on
    // every vertex w bounds every feasible combination from below by yᵀv).
    {
        Matrix<double> da(d, std::vector<double>(k));
        std::vector<double> db(d);
        for (int row = 0; row < d; ++row) {
            for (int col = 0; col < k; ++col) da[row][col] = to_double(a[row][col]);
            db[row] = to_double(b[row]);
        }
        auto guess = solve_equality_lp<double>(da, db, std::vector<double>(k, 1.0));
        std::vector<int> support;
        if (guess.status == LpStatus::optimal)
            for (int j : guess.basis)
                if (0 <= j && j < k) support.push_back(j);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        if (static_cast<int>(support.size()) == d) {
            Matrix<Rational> bs(d, std::vector<Rational>(d));
            for (int row = 0; row < d; ++row)
                for (int t = 0; t < d; ++t) bs[row][t] = a[row][support[t]];
            auto lam = solve_linear_system(bs, b);
            bool nonneg = lam.has_value();
            if (lam)
                for (const Rational& coeff : *lam)
                    if (sgn(coeff) < 0) { nonneg = false; break; }
            if (nonneg) {
                Matrix<Rational> bt(d, std::vector<Rational>(d));
                for (int row = 0; row < d; ++row)
                    for (int t = 0; t < d; ++t) bt[row][t] = bs[t][row];
                auto y = solve_linear_system(bt, std::vector<Rational>(d, rat(1)));
                if (y) {
                    bool dual_ok = true;
                    for (int col = 0; col < k && dual_ok; ++col) {
                        Rational yw(0);
                        for (int row = 0; row < d; ++row) yw += (*y)[row] * a[row][col];
                        if (cmp(yw, rat(1)) > 0) dual_ok = false;
                    }
                    if (dual_ok) {
                        Rational total(0);
                        Vec check(d);
                        for (int t = 0; t < d; ++t) {
                            total += (*lam)[t];
                            check = check + (*lam)[t] * ball.vertices[support[t]];
                        }
                        if (check == v) return total;
                    }
                }
            }
        }
    }
    LpResult<Rational> res = solve_equality_lp<Rational>(a, b, c);
    if (res.status != LpStatus::optimal)
        throw InconsistencyError("gauge: LP not optimal for full-dimensional symmetric ball");
    // Re-verify the combination reproduces v.
    Vec check(d);
    Rational total(0);
    for (int col = 0; col < k; ++col) {
        if (sgn(res.x[col]) < 0) throw InconsistencyError("gauge: negative weight");
        check = check + res.x[col] * ball.vertices[col];
        total += res.x[col];
    }
    if (check != v || cmp(total, res.objective) != 0)
        throw InconsistencyError("gauge: combination does not reproduce the point");
    return res.objective;
}

// Pair counts at norm distance exactly 1 and at the maximum distance. With
// no ball the metric is Euclidean and all reported values are squared
// lengths (so they stay rational).
struct DistanceCensus {
    int n = 0;
    bool euclidean = true;
    long long unit_pairs = 0;       // U
    long long unit_directions = 0;  // W: distinct directions among unit pairs
    long long diameter_pairs = 0;   // D
    Rational diameter_value;        // max gauge, or max squared length
};

inline DistanceCensus distance_census(const PointSet& p, const UnitBallCertificate* ball = nullptr) {
    if (ball && ball->vertices.dimension != p.dimension)
        throw std::invalid_argument("distance_census: ball dimension mismatch");
    DistanceCensus census;
    census.n = p.size();
    census.euclidean = (ball == nullptr);
    census.diameter_value = rat(0);
    std::set<Vec> directions;
    for (int i = 0; i < p.size(); ++i) {
        for (int j = i + 1; j < p.size(); ++j) {
            Vec delta = p[j] - p[i];
            Rational val = ball ? gauge(*ball, delta) : squared_length(delta);
            if (cmp(val, rat(1)) == 0) {
                ++census.unit_pairs;
                directions.insert(canonical_direction(delta));
            }
            int c = cmp(val, census.diameter_value);
            if (c > 0) {
                census.diameter_value = val;
                census.diameter_pairs = 1;
            } else if (c == 0 && sgn(val) != 0) {
                ++census.diameter_pairs;
            }
        }
    }
    census.unit_directions = static_cast<long long>(directions.size());
    return census;
}

// Family of point sets with, when verified, one functional per cross pair
// keyed (i, s, j, t), i < j: it is strictly smallest at sets[i][s], strictly
// largest at sets[j][t], and strictly between on every other family point.
struct AntipodalFamily {
    std::vector<PointSet> sets;
    std::map<std::array<int, 4>, LinearFunctional> witnesses;
};

struct AntipodalCheck {
    bool antipodal = false;
    AntipodalFamily family;
    std::optional<std::array<int, 4>> counterexample;  // first failing key
};

inline AntipodalCheck verify_strict_antipodality(const std::vector<PointSet>& sets) {
    if (sets.size() < 2) throw std::invalid_argument("verify_strict_antipodality: need >= 2 sets");
    const int d = sets[0].dimension;
    PointSet all;
    all.dimension = d;
    for (const PointSet& s : sets) {
        if (s.dimension != d) throw std::invalid_argument("verify_strict_antipodality: dimension mismatch");
        if (s.size() == 0) throw std::invalid_argument("verify_strict_antipodality: empty set");
        for (const Vec& pt : s.points) all.push_back(pt);
    }
    if (!all.all_distinct())
        throw std::invalid_argument("verify_strict_antipodality: family points not distinct");

    AntipodalCheck check;
    check.family.sets = sets;
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
        for (int j = i + 1; j < static_cast<int>(sets.size()); ++j) {
            for (int s = 0; s < sets[i].size(); ++s) {
                for (int t = 0; t < sets[j].size(); ++t) {
                    const Vec& p = sets[i][s];
                    const Vec& q = sets[j][t];
                    // Want a with dot(a, r - p) > 0 and dot(a, q - r) > 0 for
                    // every other family point r (and for the pair itself).
                    std::vector<Vec> w;
                    for (const Vec& r : all.points) {
                        if (r != p) w.push_back(r - p);
                        if (r != q) w.push_back(q - r);
                    }
                    PositivityResult pos = strictly_positive_functional(w);
                    if (!pos.feasible) {
                        check.antipodal = false;
                        check.counterexample = std::array<int, 4>{i, s, j, t};
                        check.family.witnesses.clear();
                        return check;
                    }
                    LinearFunctional f;
                    f.normal = pos.functional;
                    f.offset = dot(f.normal, q);
                    check.family.witnesses.emplace(std::array<int, 4>{i, s, j, t}, f);
                }
            }
        }
    }
    check.antipodal = true;
    return check;
}

// Pigeonhole extraction: a subset of A lying in one cell of an axis grid
// whose cells have norm-diameter at most lambda * diam(A). The densest cell
// keeps at least ceil(|A| / nonempty_cells) points.
struct CoveringExtraction {
    std::vector<int> selected_indices;  // ascending
    PointSet selected;
    Rational lambda;
    Rational cell_side;                 // 0 when no grid was needed
    std::vector<Integer> cell;          // index of the chosen cell
    long long nonempty_cells = 1;
    int bound = 0;                      // ceil(|A| / nonempty_cells)
    Rational diameter_value;            // squared if euclidean
    bool euclidean = true;
};

inline CoveringExtraction covering_extract(const PointSet& a, const Rational& lambda,
                                           const UnitBallCertificate* ball = nullptr) {
    if (sgn(lambda) <= 0 || cmp(lambda, rat(1)) >= 0)
        throw std::invalid_argument("covering_extract: lambda must be in (0,1)");
    if (ball && ball->vertices.dimension != a.dimension)
        throw std::invalid_argument("covering_extract: ball dimension mismatch");
    const int d = a.dimension;
    const int n = a.size();
    if (n == 0) throw std::invalid_argument("covering_extract: empty input");

    CoveringExtraction ext;
    ext.lambda = lambda;
    ext.euclidean = (ball == nullptr);
    ext.cell_side = rat(0);
    ext.diameter_value = rat(0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec delta = a[j] - a[i];
            Rational val = ball ? gauge(*ball, delta) : squared_length(delta);
            if (cmp(val, ext.diameter_value) > 0) ext.diameter_value = val;
        }
    }

    if (sgn(ext.diameter_value) == 0) {
        // All points coincide (or |A| = 1): the whole set is the extraction.
        for (int i = 0; i < n; ++i) ext.selected_indices.push_back(i);
        ext.selected = a;
        ext.nonempty_cells = 1;
        ext.bound = n;
        ext.cell.assign(d, Integer(0));
        return ext;
    }

    // Cell side h: any difference inside an axis cube of side h must have
    // norm at most lambda * diam(A).
    Rational h;
    if (ball) {
        // Gauge is convex, so its max over the cube [-h, h]^d sits at a
        // full-sign corner; h = lambda * diam / max_corner_gauge.
        Rational worst(0);
        for (int mask = 0; mask < (1 << d); ++mask) {
            Vec corner(d);
            for (int c = 0; c < d; ++c) corner[c] = (mask >> c) & 1 ? rat(1) : rat(-1);
            Rational g = gauge(*ball, corner);
            if (cmp(g, worst) > 0) worst = g;
        }
        h = lambda * ext.diameter_value / worst;
    } else {
        // Euclidean: cube diagonal sqrt(d) * h <= lambda * diam, with
        // squared values; take a rational lower approximation of the root.
        Rational target = lambda * lambda * ext.diameter_value / rat(d);
        int bits = 64;
        h = rational_sqrt_lower(target, bits);
        while (sgn(h) == 0) {
            bits *= 2;
            h = rational_sqrt_lower(target, bits);
        }
    }
    ext.cell_side = h;

    // Half-open cells [k*h, (k+1)*h); densest cell, lexicographic tie-break.
    std::map<std::vector<Integer>, std::vector<int>> cells;
    for (int i = 0; i < n; ++i) {
        std::vector<Integer> key(d);
        for (int c = 0; c < d; ++c) key[c] = rational_floor(a[i][c] / h);
        cells[key].push_back(i);
    }
    ext.nonempty_cells = static_cast<long long>(cells.size());
    const std::vector<int>* best = nullptr;
    for (const auto& [key, members] : cells) {
        if (!best || members.size() > best->size()) {
            best = &members;
            ext.cell = key;
        }
    }
    ext.selected_indices = *best;
    ext.selected.dimension = d;
    for (int i : ext.selected_indices) ext.selected.push_back(a[i]);
    ext.bound = static_cast<int>((n + ext.nonempty_cells - 1) / ext.nonempty_cells);
    if (static_cast<int>(ext.selected_indices.size()) < ext.bound)
        throw InconsistencyError("covering_extract: densest cell below pigeonhole bound");

    // Exact re-verification of the distance guarantee on the selection.
    for (std::size_t i = 0; i < ext.selected_indices.size(); ++i) {
        for (std::size_t j = i + 1; j < ext.selected_indices.size(); ++j) {
            Vec delta = ext.selected[static_cast<int>(j)] - ext.selected[static_cast<int>(i)];
            if (ball) {
                if (cmp(gauge(*ball, delta), lambda * ext.diameter_value) > 0)
                    throw InconsistencyError("covering_extract: selected pair exceeds lambda * diam");
            } else {
                if (cmp(squared_length(delta), lambda * lambda * ext.diameter_value) > 0)
                    throw InconsistencyError("covering_extract: selected pair exceeds lambda * diam");
            }
        }
    }
    return ext;
}

}  // namespace convind
