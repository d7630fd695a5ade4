#pragma once

// Exact convex-position machinery. One feasibility program answers every
// question in the library: is a target point in the convex hull of a finite
// set? Feasible runs return the convex-combination coefficients; infeasible
// runs return the Farkas dual, which IS a strictly separating functional.
// Both certificate kinds are re-verified in plain rational arithmetic before
// they are handed out, so a simplex bug cannot leak a wrong verdict.

#include <convind/errors.hpp>
#include <convind/parallel.hpp>
#include <convind/point.hpp>
#include <convind/simplex.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace convind {

struct MembershipResult {
    bool inside = false;
    // inside: nonnegative coefficients over `others`, summing to 1, exact.
    std::vector<Rational> coefficients;
    // outside: dot(normal, target) > offset >= dot(normal, q) for all q,
    // scaled so the strict gap is exactly 1.
    Vec normal;
    Rational offset;
};

// Decides target ∈ conv(others) exactly. The LP is
//   find λ ≥ 0 with Σλ_j q_j = target, Σλ_j = 1,
// i.e. d+1 equality rows; its Farkas dual (a, β) satisfies a·q_j + β ≤ 0 for
// every j and a·target + β > 0, so a separates with threshold −β.
inline MembershipResult separate_from_hull(const Vec& target, const std::vector<Vec>& others) {
    const int d = target.dim();
    MembershipResult res;
    if (others.empty()) {
        res.inside = false;
        res.normal = Vec(d);
        res.normal[0] = Rational(1);
        res.offset = res.normal[0] * target[0] - 1;
        return res;
    }
    const int n = static_cast<int>(others.size());
    Matrix<Rational> a(d + 1, std::vector<Rational>(n));
    std::vector<Rational> b(d + 1);
    for (int j = 0; j < n; ++j) {
        if (others[j].dim() != d) throw std::invalid_argument("separate_from_hull: dimension mismatch");
        for (int i = 0; i < d; ++i) a[i][j] = others[j][i];
        a[d][j] = Rational(1);
    }
    for (int i = 0; i < d; ++i) b[i] = target[i];
    b[d] = Rational(1);

    // Advisory double pass: guess the verdict cheaply, then re-verify the
    // guessed certificate in rationals. A wrong guess never changes an
    // answer — it only costs the exact fallback below.
    {
        Matrix<double> da(d + 1, std::vector<double>(n));
        std::vector<double> db(d + 1);
        for (int i = 0; i <= d; ++i) {
            for (int j = 0; j < n; ++j) da[i][j] = to_double(a[i][j]);
            db[i] = to_double(b[i]);
        }
        auto guess = solve_equality_lp<double>(da, db, std::vector<double>(n, 0.0));
        if (guess.status == LpStatus::infeasible &&
            guess.farkas.size() == static_cast<std::size_t>(d + 1)) {
            double mx = 0;
            for (int i = 0; i < d; ++i) mx = std::max(mx, std::fabs(guess.farkas[i]));
            if (std::isfinite(mx) && mx > 0) {
                Vec normal(d);
                for (int i = 0; i < d; ++i)
                    normal[i] = rat(static_cast<long>(
                        std::llround(guess.farkas[i] / mx * 4294967296.0)));
                if (!normal.is_zero()) {
                    Rational top = dot(normal, target);
                    Rational floor_val = dot(normal, others[0]);
                    for (int j = 1; j < n; ++j) {
                        Rational v = dot(normal, others[j]);
                        if (v > floor_val) floor_val = v;
                    }
                    Rational margin = top - floor_val;
                    if (sgn(margin) > 0) {
                        // Exactly verified: value(target) - max value(q) = 1.
                        for (int i = 0; i < d; ++i) normal[i] /= margin;
                        res.inside = false;
                        res.normal = normal;
                        res.offset = floor_val / margin;
                        return res;
                    }
                }
            }
        } else if (guess.status == LpStatus::optimal && !guess.basis.empty()) {
            std::vector<int> support;
            for (int j : guess.basis)
                if (0 <= j && j < n) support.push_back(j);
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            if (!support.empty()) {
                Matrix<Rational> as(d + 1, std::vector<Rational>(support.size()));
                for (int i = 0; i <= d; ++i)
                    for (std::size_t t = 0; t < support.size(); ++t) as[i][t] = a[i][support[t]];
                auto sol = solve_linear_system(as, b);
                bool nonneg = sol.has_value();
                if (sol)
                    for (const Rational& coeff : *sol)
                        if (sgn(coeff) < 0) { nonneg = false; break; }
                if (nonneg) {
                    std::vector<Rational> full(n, Rational(0));
                    for (std::size_t t = 0; t < support.size(); ++t) full[support[t]] = (*sol)[t];
                    Rational total(0);
                    Vec sum(d);
                    for (int j = 0; j < n; ++j) {
                        total += full[j];
                        sum = sum + full[j] * others[j];
                    }
                    if (total == 1 && sum == target) {
                        res.inside = true;
                        res.coefficients = std::move(full);
                        return res;
                    }
                }
            }
        }
    }

    auto lp = solve_equality_lp<Rational>(a, b, std::vector<Rational>(n, Rational(0)));
    if (lp.status == LpStatus::optimal) {
        res.inside = true;
        res.coefficients = std::move(lp.x);
        // Exact re-verification of the combination.
        Rational total(0);
        Vec sum(d);
        for (int j = 0; j < n; ++j) {
            if (sgn(res.coefficients[j]) < 0)
                throw InconsistencyError("membership coefficients negative");
            total += res.coefficients[j];
            sum = sum + res.coefficients[j] * others[j];
        }
        if (total != 1 || sum != target)
            throw InconsistencyError("membership coefficients do not reproduce target");
        return res;
    }
    if (lp.status != LpStatus::infeasible)
        throw InconsistencyError("membership program unbounded");

    Vec normal(d);
    for (int i = 0; i < d; ++i) normal[i] = lp.farkas[i];
    Rational beta = lp.farkas[d];
    // Normalize so value(target) − max_j value(q_j) = 1 exactly.
    Rational top = dot(normal, target);
    Rational floor_val = dot(normal, others[0]);
    for (int j = 1; j < n; ++j) {
        Rational v = dot(normal, others[j]);
        if (v > floor_val) floor_val = v;
    }
    Rational margin = top - floor_val;
    if (sgn(margin) <= 0) throw InconsistencyError("Farkas separator fails to separate");
    for (int i = 0; i < d; ++i) normal[i] /= margin;
    res.inside = false;
    res.normal = normal;
    res.offset = floor_val / margin;
    (void)beta;
    // Exact re-verification of strictness.
    if (dot(res.normal, target) <= res.offset)
        throw InconsistencyError("separator does not exceed threshold at target");
    for (const Vec& q : others)
        if (dot(res.normal, q) > res.offset)
            throw InconsistencyError("separator threshold violated");
    return res;
}

struct ExtremeResult {
    bool extreme = false;
    LinearFunctional witness;                             // extreme
    std::vector<std::pair<int, Rational>> combination;    // not extreme
};

// Is s[i] a vertex of conv(S)? A duplicate of s[i] elsewhere in S makes the
// answer false with the duplicate as a one-term combination.
inline ExtremeResult is_extreme(int i, const PointSet& s) {
    if (i < 0 || i >= s.size()) throw std::invalid_argument("is_extreme: index out of range");
    std::vector<Vec> others;
    std::vector<int> other_index;
    others.reserve(s.size() - 1);
    for (int j = 0; j < s.size(); ++j) {
        if (j == i) continue;
        others.push_back(s[j]);
        other_index.push_back(j);
    }
    MembershipResult m = separate_from_hull(s[i], others);
    ExtremeResult res;
    if (m.inside) {
        res.extreme = false;
        for (std::size_t j = 0; j < m.coefficients.size(); ++j)
            if (sgn(m.coefficients[j]) != 0)
                res.combination.emplace_back(other_index[j], m.coefficients[j]);
    } else {
        res.extreme = true;
        res.witness = LinearFunctional{m.normal, m.offset};
    }
    return res;
}

struct ConvexCombination {
    int point_index;
    std::vector<std::pair<int, Rational>> coefficients;
};

struct ConvexPositionCertificate {
    enum class Verdict { independent, dependent };
    Verdict verdict = Verdict::independent;
    std::map<int, LinearFunctional> witnesses;       // independent: one per index
    std::optional<ConvexCombination> violation;      // dependent
};

// Exact re-check of a certificate against the point set it talks about.
inline bool verify_certificate(const ConvexPositionCertificate& cert, const PointSet& s) {
    if (cert.verdict == ConvexPositionCertificate::Verdict::independent) {
        if (static_cast<int>(cert.witnesses.size()) != s.size()) return false;
        for (const auto& [i, phi] : cert.witnesses) {
            if (i < 0 || i >= s.size() || phi.normal.is_zero()) return false;
            Rational vi = phi.value(s[i]);
            for (int j = 0; j < s.size(); ++j)
                if (j != i && phi.value(s[j]) >= vi) return false;
        }
        return true;
    }
    if (!cert.violation) return false;
    const auto& v = *cert.violation;
    if (v.point_index < 0 || v.point_index >= s.size()) return false;
    Rational total(0);
    Vec sum(s.dimension);
    for (const auto& [j, coeff] : v.coefficients) {
        if (j < 0 || j >= s.size() || j == v.point_index || sgn(coeff) < 0) return false;
        total += coeff;
        sum = sum + coeff * s[j];
    }
    return total == 1 && sum == s[v.point_index];
}

// Certifies that every point of s is a vertex of conv(s) (with per-point
// witnesses), or exhibits one exact violating convex combination.
// Duplicate points are dependent by definition.
inline ConvexPositionCertificate convexly_independent(const PointSet& s, int jobs = 0) {
    ConvexPositionCertificate cert;
    const int n = s.size();
    std::vector<ExtremeResult> results(n);
    parallel_for(n, [&](int i) { results[i] = is_extreme(i, s); }, jobs);
    for (int i = 0; i < n; ++i) {
        if (!results[i].extreme) {
            cert.verdict = ConvexPositionCertificate::Verdict::dependent;
            cert.witnesses.clear();
            cert.violation = ConvexCombination{i, results[i].combination};
            if (!verify_certificate(cert, s))
                throw InconsistencyError("dependent certificate failed re-verification");
            return cert;
        }
        cert.witnesses.emplace(i, results[i].witness);
    }
    cert.verdict = ConvexPositionCertificate::Verdict::independent;
    if (!verify_certificate(cert, s))
        throw InconsistencyError("independent certificate failed re-verification");
    return cert;
}

struct HullVertices {
    std::vector<int> indices;
    std::map<int, LinearFunctional> witnesses;
};

inline HullVertices hull_vertices(const PointSet& s, int jobs = 0) {
    HullVertices out;
    const int n = s.size();
    std::vector<ExtremeResult> results(n);
    parallel_for(n, [&](int i) { results[i] = is_extreme(i, s); }, jobs);
    for (int i = 0; i < n; ++i) {
        if (results[i].extreme) {
            out.indices.push_back(i);
            out.witnesses.emplace(i, results[i].witness);
        }
    }
    return out;
}

// Strict positivity: a functional a with a·v > 0 for every v, or the exact
// convex combination of the v's equal to 0 (the two are mutually exclusive
// by Farkas duality: such an `a` exists iff 0 ∉ conv(vectors)).
struct PositivityResult {
    bool feasible = false;
    Vec functional;                          // feasible
    std::vector<Rational> zero_combination;  // infeasible, aligned with input
};

inline PositivityResult strictly_positive_functional(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("strictly_positive_functional: empty input");
    const int d = vectors[0].dim();
    MembershipResult m = separate_from_hull(Vec(d), vectors);
    PositivityResult res;
    if (m.inside) {
        res.feasible = false;
        res.zero_combination = std::move(m.coefficients);
        return res;
    }
    // normal·0 > offset ≥ normal·v, so −normal is strictly positive on all v.
    res.feasible = true;
    res.functional = -m.normal;
    for (const Vec& v : vectors)
        if (sgn(dot(res.functional, v)) <= 0)
            throw InconsistencyError("positivity functional not strictly positive");
    return res;
}

}  // namespace convind
