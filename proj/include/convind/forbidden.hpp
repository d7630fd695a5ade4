#pragma once

// Impossibility side of the midpoint bounds: five two-point classes in R^3
// never have all forty cross-class midpoints convexly independent. This
// module certifies concrete violations, replays the volume/ray argument on
// a designated configuration, checks the five-point midpoint property, and
// runs the seeded counterexample search for the four-class analogue.

#include <convind/errors.hpp>
#include <convind/extremal.hpp>
#include <convind/parallel.hpp>
#include <convind/point.hpp>
#include <convind/predicates.hpp>
#include <convind/rng.hpp>
#include <convind/separation.hpp>
#include <convind/simplex.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace convind {

struct FivePairConfig {
    std::array<PointSet, 5> classes;  // exactly 2 points each, in R^3
};

namespace detail {

inline void validate_five_pair(const FivePairConfig& cfg) {
    for (const PointSet& cls : cfg.classes) {
        if (cls.dimension != 3 || cls.size() != 2)
            throw std::invalid_argument("FivePairConfig: classes must hold 2 points in R^3");
    }
}

inline Vec cross3(const Vec& a, const Vec& b) {
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace detail

// One midpoint of the cross-class set expressed exactly as a convex
// combination of the others. `keys` lists all 40 midpoints as (i, s, j, t):
// point s of class i with point t of class j, i < j, lexicographic order.
struct ViolationCertificate {
    FivePairConfig config;
    std::vector<std::array<int, 4>> keys;
    PointSet midpoints;  // aligned with keys; duplicates possible
    int violating = -1;
    std::vector<std::pair<int, Rational>> combination;  // indices into keys
};

inline ViolationCertificate refute_K22222(const FivePairConfig& cfg, int jobs = 0) {
    detail::validate_five_pair(cfg);
    ViolationCertificate cert;
    cert.config = cfg;
    cert.midpoints.dimension = 3;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    cert.keys.push_back({i, s, j, t});
                    cert.midpoints.push_back(midpoint(cfg.classes[i][s], cfg.classes[j][t]));
                }

    // Coinciding midpoints refute independence outright: the later copy is a
    // one-term convex combination of the earlier one.
    std::map<Vec, int> seen;
    for (int k = 0; k < cert.midpoints.size(); ++k) {
        auto [it, inserted] = seen.emplace(cert.midpoints[k], k);
        if (!inserted) {
            cert.violating = k;
            cert.combination = {{it->second, rat(1)}};
            return cert;
        }
    }

    ConvexPositionCertificate scan = convexly_independent(cert.midpoints, jobs);
    if (scan.verdict != ConvexPositionCertificate::Verdict::dependent)
        throw InconsistencyError(
            "refute_K22222: forty cross-class midpoints certified independent; "
            "this contradicts the five-class impossibility");
    cert.violating = scan.violation->point_index;
    cert.combination = scan.violation->coefficients;

    // Independent re-verification of the certificate.
    Rational total(0);
    Vec sum(3);
    for (const auto& [idx, coeff] : cert.combination) {
        if (idx == cert.violating || idx < 0 || idx >= cert.midpoints.size() || sgn(coeff) < 0)
            throw InconsistencyError("refute_K22222: malformed violation combination");
        total += coeff;
        sum = sum + coeff * cert.midpoints[idx];
    }
    if (cmp(total, rat(1)) != 0 || sum != cert.midpoints[cert.violating])
        throw InconsistencyError("refute_K22222: combination fails to reproduce the midpoint");
    return cert;
}

// Replay of the maximum-volume tetrahedron argument on a configuration whose
// first four classes are treated through their representatives and whose
// fifth class {c5, c5'} sits inside that tetrahedron: the ray from c5
// through c5' exits through a facet at parameter t >= 1, so c5' is a convex
// combination of c5 and three facet vertices.
struct ProofPathTrace {
    FivePairConfig config;
    PointSet representatives;         // first point of each class
    std::array<Rational, 5> volumes;  // signed volume of the quadruple omitting each index
    int leftover = -1;                // index omitted by the max-|volume| quadruple
    std::vector<Rational> c5_coefficients;   // c5 over the tetrahedron vertices
    std::vector<Rational> c5p_coefficients;  // c5' likewise
    std::array<int, 3> facet{};       // representative indices of the exit facet
    Rational t;                       // ray parameter of the exit, >= 1
    Vec exit_point;
    PointSet witness;                 // facet triple, then c5, then c5'
    std::vector<std::pair<int, Rational>> witness_combination;  // c5' over witness[0..3]
    ConvexPositionCertificate witness_certificate;              // dependent
};

inline ProofPathTrace proof_path_extract(const FivePairConfig& cfg) {
    detail::validate_five_pair(cfg);
    ProofPathTrace trace;
    trace.config = cfg;
    trace.representatives.dimension = 3;
    for (const PointSet& cls : cfg.classes) trace.representatives.push_back(cls[0]);
    if (!trace.representatives.all_distinct())
        throw std::invalid_argument("proof_path_extract: representatives must be distinct");

    for (int l = 0; l < 5; ++l) {
        std::vector<Vec> quad;
        for (int i = 0; i < 5; ++i)
            if (i != l) quad.push_back(trace.representatives[i]);
        trace.volumes[l] = orientation_det(quad);
        if (sgn(trace.volumes[l]) == 0)
            throw std::invalid_argument("proof_path_extract: coplanar quadruple among representatives");
    }
    int best = 0;
    for (int l = 1; l < 5; ++l)
        if (cmp(abs(trace.volumes[l]), abs(trace.volumes[best])) > 0) best = l;
    trace.leftover = best;
    if (best != 4)
        throw VerificationError(
            "proof_path_extract: the max-volume quadruple must omit the designated fifth class");

    const Vec& c5 = cfg.classes[4][0];
    const Vec& c5p = cfg.classes[4][1];
    if (c5 == c5p) throw std::invalid_argument("proof_path_extract: fifth class is degenerate");
    std::vector<Vec> tetra(trace.representatives.points.begin(),
                           trace.representatives.points.begin() + 4);

    MembershipResult in5 = separate_from_hull(c5, tetra);
    if (!in5.inside)
        throw VerificationError("proof_path_extract: c5 is outside the selected tetrahedron");
    MembershipResult in5p = separate_from_hull(c5p, tetra);
    if (!in5p.inside)
        throw VerificationError("proof_path_extract: c5' is outside the selected tetrahedron");
    trace.c5_coefficients = in5.coefficients;
    trace.c5p_coefficients = in5p.coefficients;

    // Exit of the ray x(t) = c5 + t (c5' - c5) over the four facet planes.
    Vec u = c5p - c5;
    bool have_t = false;
    int exit_omit = -1;
    for (int omit = 0; omit < 4; ++omit) {
        std::vector<Vec> f;
        for (int i = 0; i < 4; ++i)
            if (i != omit) f.push_back(tetra[i]);
        Vec n = detail::cross3(f[1] - f[0], f[2] - f[0]);
        Rational o = dot(n, f[0]);
        int side = sgn(dot(n, tetra[omit]) - o);  // nonzero: quadruple is not coplanar
        Rational alpha = dot(n, c5) - o;
        Rational beta = dot(n, u);
        if (side * sgn(beta) >= 0) continue;  // ray does not leave through this plane
        Rational ti = -alpha / beta;
        if (!have_t || cmp(ti, trace.t) < 0) {
            trace.t = ti;
            exit_omit = omit;
            have_t = true;
        }
    }
    if (!have_t) throw InconsistencyError("proof_path_extract: ray never exits the tetrahedron");
    if (cmp(trace.t, rat(1)) < 0)
        throw InconsistencyError("proof_path_extract: exit parameter below 1 despite containment");
    trace.exit_point = c5 + trace.t * u;
    int fi = 0;
    std::vector<Vec> facet_pts;
    for (int i = 0; i < 4; ++i) {
        if (i == exit_omit) continue;
        trace.facet[fi++] = i;
        facet_pts.push_back(tetra[i]);
    }
    MembershipResult on_facet = separate_from_hull(trace.exit_point, facet_pts);
    if (!on_facet.inside)
        throw InconsistencyError("proof_path_extract: exit point missed the facet triangle");

    // c5' = (1/t) exit + (1 - 1/t) c5, and exit is a combination of the facet.
    trace.witness.dimension = 3;
    for (const Vec& fp : facet_pts) trace.witness.push_back(fp);
    trace.witness.push_back(c5);
    trace.witness.push_back(c5p);
    Rational inv_t = rat(1) / trace.t;
    for (int i = 0; i < 3; ++i)
        trace.witness_combination.emplace_back(i, on_facet.coefficients[i] * inv_t);
    trace.witness_combination.emplace_back(3, rat(1) - inv_t);
    Rational total(0);
    Vec sum(3);
    for (const auto& [idx, coeff] : trace.witness_combination) {
        if (sgn(coeff) < 0)
            throw InconsistencyError("proof_path_extract: negative combination coefficient");
        total += coeff;
        sum = sum + coeff * trace.witness[idx];
    }
    if (cmp(total, rat(1)) != 0 || sum != c5p)
        throw InconsistencyError("proof_path_extract: combination fails to reproduce c5'");

    trace.witness_certificate = convexly_independent(trace.witness);
    if (trace.witness_certificate.verdict != ConvexPositionCertificate::Verdict::dependent)
        throw InconsistencyError("proof_path_extract: five-point witness certified independent");
    return trace;
}

// Five convexly independent points in R^3 have dependent pairwise midpoints.
struct Halman5Result {
    PointSet points;
    ConvexPositionCertificate points_certificate;
    bool skipped = false;
    std::string note;
    std::vector<IndexPair> midpoint_pairs;  // (i, j) lexicographic, i < j
    PointSet midpoints;                     // aligned; duplicates possible
    ConvexPositionCertificate midpoints_certificate;  // dependent when not skipped
};

inline Halman5Result halman5_check(const PointSet& p, int jobs = 0) {
    if (p.dimension != 3 || p.size() != 5)
        throw std::invalid_argument("halman5_check: need exactly 5 points in R^3");
    if (!p.all_distinct()) throw std::invalid_argument("halman5_check: points must be distinct");
    Halman5Result res;
    res.points = p;
    res.points_certificate = convexly_independent(p, jobs);
    if (res.points_certificate.verdict != ConvexPositionCertificate::Verdict::independent) {
        res.skipped = true;
        res.note = "input points are not convexly independent; midpoint check skipped";
        return res;
    }
    res.midpoints.dimension = 3;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            res.midpoint_pairs.push_back({i, j});
            res.midpoints.push_back(midpoint(p[i], p[j]));
        }
    }
    res.midpoints_certificate = convexly_independent(res.midpoints, jobs);
    if (res.midpoints_certificate.verdict != ConvexPositionCertificate::Verdict::dependent)
        throw InconsistencyError(
            "halman5_check: independent quintuple with independent midpoints; "
            "this contradicts the midpoint dependence property");
    res.note = "midpoints certified dependent";
    return res;
}

// Seeded search for four classes of c points (class diameter < epsilon)
// whose cross-class midpoints are convexly independent. Floating-point
// hill-climbing guides the search; the only authoritative statements are the
// exact rational margin and certificate of the rounded best candidate.
struct SearchReport {
    int c = 0;
    Rational epsilon;
    long long budget = 0;
    std::uint64_t seed = 0;
    long long iterations = 0;
    int restarts = 0;
    double best_margin = 0.0;  // advisory float margin of the winner
    int winning_restart = -1;
    std::optional<std::vector<PointSet>> best;  // 4 classes of c points
    std::optional<Rational> exact_margin;       // min exact L1 hull distance
    std::optional<ConvexPositionCertificate> verdict;
    bool found = false;
    std::string note;
};

namespace detail {

// L1 distance from point k of `mids` to the convex hull of the others:
//   min ||x_k - sum lambda_l x_l||_1 over the simplex. Zero iff inside.
template <class T>
T l1_hull_distance(const std::vector<std::array<T, 3>>& mids, int k) {
    const int m = static_cast<int>(mids.size());
    const int cols = (m - 1) + 6;
    Matrix<T> a(4, std::vector<T>(cols, T(0)));
    std::vector<T> b(4), cost(cols, T(0));
    int col = 0;
    for (int l = 0; l < m; ++l) {
        if (l == k) continue;
        for (int r = 0; r < 3; ++r) a[r][col] = mids[l][r];
        a[3][col] = T(1);
        ++col;
    }
    for (int r = 0; r < 3; ++r) {
        a[r][m - 1 + r] = T(1);       // z+ block
        a[r][m - 1 + 3 + r] = T(-1);  // z- block
        cost[m - 1 + r] = T(1);
        cost[m - 1 + 3 + r] = T(1);
    }
    for (int r = 0; r < 3; ++r) b[r] = mids[k][r];
    b[3] = T(1);
    LpResult<T> res = solve_equality_lp<T>(a, b, cost);
    if (res.status != LpStatus::optimal)
        throw InconsistencyError("l1_hull_distance: LP not optimal");
    return res.objective;
}

struct SearchState {
    std::vector<std::array<double, 3>> pts;  // 4c points, class-major
    double min_margin = 0.0;
    double sum_margin = 0.0;
};

inline std::vector<std::array<double, 3>> cross_mids(const std::vector<std::array<double, 3>>& pts,
                                                     int c) {
    std::vector<std::array<double, 3>> mids;
    mids.reserve(6 * c * c);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int s = 0; s < c; ++s)
                for (int t = 0; t < c; ++t) {
                    const auto& p = pts[i * c + s];
                    const auto& q = pts[j * c + t];
                    mids.push_back({(p[0] + q[0]) / 2, (p[1] + q[1]) / 2, (p[2] + q[2]) / 2});
                }
    return mids;
}

inline void eval_margins(SearchState& st, int c) {
    auto mids = cross_mids(st.pts, c);
    st.min_margin = 0.0;
    st.sum_margin = 0.0;
    for (int k = 0; k < static_cast<int>(mids.size()); ++k) {
        double d = l1_hull_distance<double>(mids, k);
        if (k == 0 || d < st.min_margin) st.min_margin = d;
        st.sum_margin += d;
    }
}

// Lexicographic improvement: first the worst midpoint, then the aggregate
// (the aggregate supplies gradient while the minimum sits on the zero
// plateau of points still inside the hull).
inline bool better(const SearchState& a, const SearchState& b) {
    if (a.min_margin != b.min_margin) return a.min_margin > b.min_margin;
    return a.sum_margin > b.sum_margin + 1e-15;
}

struct RestartOutcome {
    bool has_candidate = false;
    SearchState best;
    std::vector<PointSet> classes;        // rounded, 4 sets of c points
    std::optional<Rational> exact_margin; // nullopt if diameter check failed
    long long evals = 0;
};

}  // namespace detail

inline SearchReport conjecture_search(int c, const Rational& epsilon, long long budget,
                                      std::uint64_t seed, int jobs = 0) {
    if (c < 1) throw std::invalid_argument("conjecture_search: c must be >= 1");
    if (sgn(epsilon) <= 0) throw std::invalid_argument("conjecture_search: epsilon must be > 0");
    if (budget < 0) throw std::invalid_argument("conjecture_search: negative budget");

    SearchReport rep;
    rep.c = c;
    rep.epsilon = epsilon;
    rep.budget = budget;
    rep.seed = seed;

    const long long restart_len = 500;
    const int restarts = static_cast<int>((budget + restart_len - 1) / restart_len);
    rep.restarts = restarts;
    if (restarts == 0) {
        rep.note = "zero budget: no candidate evaluated";
        return rep;
    }

    const double eps_f = to_double(epsilon);
    const double spread = 0.45 * eps_f / 1.7320508075688772;  // keep class L2 diameter < 0.9 eps
    const long den = 1L << 20;
    const int n_pts = 4 * c;

    std::vector<detail::RestartOutcome> outcomes(restarts);
    parallel_for(restarts, [&](int r) {
        Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(r));
        long long quota = std::min(restart_len, budget - restart_len * r);
        detail::RestartOutcome& out = outcomes[r];
        if (quota <= 0) return;

        detail::SearchState cur;
        cur.pts.resize(n_pts);
        for (int i = 0; i < 4; ++i) {
            std::array<double, 3> center;
            for (double& x : center) x = rng.unit() * 1.5 - 0.75;
            for (int s = 0; s < c; ++s)
                for (int k = 0; k < 3; ++k)
                    cur.pts[i * c + s][k] = center[k] + (rng.unit() - 0.5) * spread;
        }
        detail::eval_margins(cur, c);
        out.evals = 1;
        detail::SearchState best = cur;

        double step = 0.2;
        for (long long it = 1; it < quota; ++it) {
            step = std::max(step * 0.99, 1e-4);
            int pi = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_pts)));
            int ci = static_cast<int>(rng.below(3));
            double delta = (rng.unit() * 2 - 1) * step;
            detail::SearchState cand = cur;
            cand.pts[pi][ci] += delta;
            ++out.evals;
            // Keep the class diameter strictly inside epsilon and coordinates bounded.
            bool feasible = std::abs(cand.pts[pi][ci]) <= 2.0;
            int cls = pi / c;
            for (int s = 0; s < c && feasible; ++s) {
                if (cls * c + s == pi) continue;
                double d2 = 0;
                for (int k = 0; k < 3; ++k) {
                    double diff = cand.pts[pi][k] - cand.pts[cls * c + s][k];
                    d2 += diff * diff;
                }
                if (d2 >= 0.9 * 0.9 * eps_f * eps_f) feasible = false;
            }
            if (!feasible) continue;
            detail::eval_margins(cand, c);
            if (detail::better(cand, cur)) cur = cand;
            if (detail::better(cur, best)) best = cur;
        }

        // Round the restart's best to rationals and evaluate it exactly.
        out.best = best;
        out.classes.assign(4, PointSet{});
        for (int i = 0; i < 4; ++i) {
            out.classes[i].dimension = 3;
            for (int s = 0; s < c; ++s) {
                Vec p(3);
                for (int k = 0; k < 3; ++k)
                    p[k] = rat(static_cast<long>(std::llround(best.pts[i * c + s][k] * den)), den);
                out.classes[i].push_back(p);
            }
        }
        bool diam_ok = true;
        for (int i = 0; i < 4 && diam_ok; ++i)
            for (int s = 0; s < c && diam_ok; ++s)
                for (int t = s + 1; t < c; ++t)
                    if (cmp(squared_length(out.classes[i][s] - out.classes[i][t]),
                            epsilon * epsilon) >= 0) {
                        diam_ok = false;
                        break;
                    }
        out.has_candidate = true;
        if (!diam_ok) return;  // exact_margin stays empty: candidate ineligible
        std::vector<std::array<Rational, 3>> mids;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int s = 0; s < c; ++s)
                    for (int t = 0; t < c; ++t) {
                        Vec m = midpoint(out.classes[i][s], out.classes[j][t]);
                        mids.push_back({m[0], m[1], m[2]});
                    }
        Rational worst;
        for (int k = 0; k < static_cast<int>(mids.size()); ++k) {
            Rational dk = detail::l1_hull_distance<Rational>(mids, k);
            if (k == 0 || cmp(dk, worst) < 0) worst = dk;
        }
        out.exact_margin = worst;
    }, jobs);

    for (const auto& out : outcomes) rep.iterations += out.evals;

    // Merge: best exact margin, then lowest restart id; restarts whose
    // rounded candidate broke the diameter bound only win if nothing else
    // qualifies.
    int win = -1;
    for (int r = 0; r < restarts; ++r) {
        if (!outcomes[r].has_candidate || !outcomes[r].exact_margin) continue;
        if (win < 0 || cmp(*outcomes[r].exact_margin, *outcomes[win].exact_margin) > 0) win = r;
    }
    if (win < 0) {
        rep.note = "no eligible candidate (every rounded candidate broke the diameter bound)";
        return rep;
    }
    const detail::RestartOutcome& w = outcomes[win];
    rep.winning_restart = win;
    rep.best_margin = w.best.min_margin;
    rep.best = w.classes;
    rep.exact_margin = w.exact_margin;

    PointSet all_mids;
    all_mids.dimension = 3;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int s = 0; s < c; ++s)
                for (int t = 0; t < c; ++t)
                    all_mids.push_back(midpoint(w.classes[i][s], w.classes[j][t]));
    rep.verdict = convexly_independent(all_mids, jobs);
    rep.found = rep.verdict->verdict == ConvexPositionCertificate::Verdict::independent;
    rep.note = rep.found ? "best candidate certified convexly independent"
                         : "best candidate certified dependent";
    return rep;
}

}  // namespace convind
