#pragma once

// Extremal quantities on concrete instances: E (pairs with convexly
// independent midpoints), M (convexly independent subset of a Minkowski sum)
// and E∘ (pairs with concyclic midpoints). The 2-D maximizer is the classic
// largest-convex-polygon chain DP with strict left turns; the any-dimension
// maximizer is capped subset enumeration used as an independent oracle.

#include <convind/errors.hpp>
#include <convind/point.hpp>
#include <convind/predicates.hpp>
#include <convind/separation.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace convind {

struct IndexPair {
    int a = 0, b = 0;
    bool operator==(const IndexPair& o) const = default;
    bool operator<(const IndexPair& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// Pairs over one base set, with the (deduplicated) midpoints they induce.
struct PairSystem {
    PointSet base;
    std::vector<IndexPair> pairs;
    PointSet midpoints;
    std::vector<std::vector<int>> provenance;  // midpoint index -> sorted pair indices
};

inline PairSystem make_pair_system(PointSet base, std::vector<IndexPair> pairs) {
    PairSystem sys;
    sys.base = std::move(base);
    sys.pairs = std::move(pairs);
    sys.midpoints.dimension = sys.base.dimension;
    std::map<Vec, int> seen;
    for (std::size_t k = 0; k < sys.pairs.size(); ++k) {
        const auto& pr = sys.pairs[k];
        if (pr.a < 0 || pr.b < 0 || pr.a >= sys.base.size() || pr.b >= sys.base.size())
            throw std::invalid_argument("pair index out of range");
        Vec m = midpoint(sys.base[pr.a], sys.base[pr.b]);
        auto [it, inserted] = seen.emplace(m, sys.midpoints.size());
        if (inserted) {
            sys.midpoints.push_back(m);
            sys.provenance.emplace_back();
        }
        sys.provenance[it->second].push_back(static_cast<int>(k));
    }
    return sys;
}

// All C(n,2) pairs of a distinct point set.
inline PairSystem midpoint_system(const PointSet& p) {
    if (!p.all_distinct()) throw std::invalid_argument("midpoint_system: duplicate input points");
    std::vector<IndexPair> pairs;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) pairs.push_back({i, j});
    return make_pair_system(p, std::move(pairs));
}

// Deduplicated Minkowski sum with provenance (i, j) -> p_i + q_j.
struct SumSystem {
    PointSet p, q;
    PointSet sums;
    std::vector<std::vector<IndexPair>> provenance;  // sum index -> sorted (i, j)
};

inline SumSystem minkowski_sum(const PointSet& p, const PointSet& q) {
    if (p.dimension != q.dimension) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    SumSystem sys;
    sys.p = p;
    sys.q = q;
    sys.sums.dimension = p.dimension;
    std::map<Vec, int> seen;
    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < q.size(); ++j) {
            Vec v = p[i] + q[j];
            auto [it, inserted] = seen.emplace(v, sys.sums.size());
            if (inserted) {
                sys.sums.push_back(v);
                sys.provenance.emplace_back();
            }
            sys.provenance[it->second].push_back({i, j});
        }
    }
    return sys;
}

struct ExtremalResult {
    int value = 0;
    PointSet evaluated;                  // the set `selected` indexes into
    std::vector<int> selected;           // ascending
    std::vector<IndexPair> witness_pairs;  // compute_E/M/E∘: one pair per selected point
    ConvexPositionCertificate certificate;  // over the selected points
    std::optional<Circle> circle;        // compute_E_circ, when value >= 3
};

namespace detail {

inline PointSet subset(const PointSet& s, const std::vector<int>& idx) {
    PointSet out;
    out.dimension = s.dimension;
    for (int i : idx) out.push_back(s[i]);
    return out;
}

inline ExtremalResult finish_selection(const PointSet& s, std::vector<int> selected) {
    std::sort(selected.begin(), selected.end());
    ExtremalResult res;
    res.value = static_cast<int>(selected.size());
    res.evaluated = s;
    res.selected = std::move(selected);
    res.certificate = convexly_independent(subset(s, res.selected));
    if (res.certificate.verdict != ConvexPositionCertificate::Verdict::independent)
        throw InconsistencyError("selected subset failed independence certification");
    return res;
}

// Integer-scaled copy: multiplying every coordinate by the common denominator
// is an invertible affine map, so convex position is unaffected.
inline std::vector<std::vector<Integer>> integer_scaled(const PointSet& s) {
    Integer l(1);
    for (const Vec& p : s.points)
        for (const Rational& c : p.coords)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<std::vector<Integer>> out(s.size());
    for (int i = 0; i < s.size(); ++i) {
        out[i].resize(s.dimension);
        for (int c = 0; c < s.dimension; ++c) {
            Rational scaled = s[i][c] * Rational(l);
            out[i][c] = scaled.get_num();
        }
    }
    return out;
}

inline int cross_sign(const std::vector<Integer>& o, const std::vector<Integer>& a,
                      const std::vector<Integer>& b) {
    Integer v = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    return sgn(v);
}

}  // namespace detail

// Maximum subset in strictly convex position, d = 2. For each pivot b
// (a candidate lex-lowest vertex in (y, x) order) the other points are sorted
// by angle around b and chains with strictly-left turns are extended by the
// standard two-index DP; a chain closes into a polygon when the turn at its
// last vertex is strictly left (the turn back at b is then automatic: a flat
// turn at b would force three collinear vertices, which the strict turns
// already exclude).
inline ExtremalResult largest_convex_subset_2d(const PointSet& s) {
    if (s.dimension != 2) throw std::invalid_argument("largest_convex_subset_2d: d must be 2");
    if (!s.all_distinct()) throw std::invalid_argument("largest_convex_subset_2d: duplicate points");
    const int n = s.size();
    if (n <= 2) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        return detail::finish_selection(s, all);
    }

    auto pts = detail::integer_scaled(s);
    std::vector<int> best;  // indices into s
    for (int i = 0; i < std::min(n, 2); ++i) best.push_back(i);

    for (int b = 0; b < n; ++b) {
        // Candidates strictly above b in (y, x) lex order.
        std::vector<int> cand;
        for (int i = 0; i < n; ++i) {
            if (i == b) continue;
            int cy = cmp(pts[i][1], pts[b][1]);
            if (cy > 0 || (cy == 0 && cmp(pts[i][0], pts[b][0]) > 0)) cand.push_back(i);
        }
        const int m = static_cast<int>(cand.size());
        if (m + 1 <= static_cast<int>(best.size())) continue;
        std::sort(cand.begin(), cand.end(), [&](int u, int v) {
            int cs = detail::cross_sign(pts[b], pts[u], pts[v]);
            if (cs != 0) return cs > 0;
            // Same ray from b: closer point first.
            Integer du = (pts[u][0] - pts[b][0]) * (pts[u][0] - pts[b][0]) +
                         (pts[u][1] - pts[b][1]) * (pts[u][1] - pts[b][1]);
            Integer dv = (pts[v][0] - pts[b][0]) * (pts[v][0] - pts[b][0]) +
                         (pts[v][1] - pts[b][1]) * (pts[v][1] - pts[b][1]);
            return cmp(du, dv) < 0;
        });

        // g[j][i]: longest chain b -> ... -> cand[j] -> cand[i] (counting the
        // cand entries) with every checked turn strictly left.
        std::vector<std::vector<int>> g(m, std::vector<int>(m, 0));
        std::vector<std::vector<int>> parent(m, std::vector<int>(m, -1));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                int val = 0, par = -1;
                if (detail::cross_sign(pts[b], pts[cand[j]], pts[cand[i]]) > 0) val = 2;
                for (int k = 0; k < j; ++k) {
                    if (g[k][j] >= 2 && g[k][j] + 1 > val &&
                        detail::cross_sign(pts[cand[k]], pts[cand[j]], pts[cand[i]]) > 0) {
                        val = g[k][j] + 1;
                        par = k;
                    }
                }
                g[j][i] = val;
                parent[j][i] = par;
            }
        }
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                if (g[j][i] < 2) continue;
                // Closing turn at cand[i]: orient(cand[j], cand[i], b) > 0,
                // equal by cyclic shift to orient(b, cand[j], cand[i]).
                if (detail::cross_sign(pts[b], pts[cand[j]], pts[cand[i]]) <= 0) continue;
                int size = g[j][i] + 1;
                if (size <= static_cast<int>(best.size())) continue;
                std::vector<int> chain = {cand[i], cand[j]};
                int cj = j, ci = i;
                while (parent[cj][ci] >= 0) {
                    int ck = parent[cj][ci];
                    chain.push_back(cand[ck]);
                    ci = cj;
                    cj = ck;
                }
                chain.push_back(b);
                best = std::move(chain);
            }
        }
    }
    return detail::finish_selection(s, best);
}

// Exact maximum by include/exclude subset enumeration with pruning; the
// independent oracle for the DP and the only exact route in d = 3. Witness
// functionals are cached along the recursion and only re-derived when the
// incoming point actually threatens them.
inline ExtremalResult largest_convex_subset_bruteforce(const PointSet& s, int cap = 18) {
    if (s.size() > cap) throw std::invalid_argument("largest_convex_subset_bruteforce: cap exceeded");
    const int n = s.size();

    std::vector<int> chosen;
    std::vector<LinearFunctional> witness;  // aligned with chosen
    std::vector<int> best;

    // Try to extend `chosen` (known convexly independent) by s[i].
    auto try_add = [&](int i) -> bool {
        PointSet t = detail::subset(s, chosen);
        t.push_back(s[i]);
        ExtremeResult newcomer = is_extreme(t.size() - 1, t);
        if (!newcomer.extreme) return false;
        std::vector<LinearFunctional> updated = witness;
        for (std::size_t c = 0; c < chosen.size(); ++c) {
            // A cached witness survives iff it still dominates the newcomer.
            if (updated[c].value(s[chosen[c]]) > updated[c].value(s[i])) continue;
            ExtremeResult re = is_extreme(static_cast<int>(c), t);
            if (!re.extreme) return false;
            updated[c] = re.witness;
        }
        witness = std::move(updated);
        witness.push_back(newcomer.witness);
        chosen.push_back(i);
        return true;
    };

    auto recurse = [&](auto&& self, int idx) -> void {
        if (static_cast<int>(chosen.size()) + (n - idx) <= static_cast<int>(best.size())) return;
        if (idx == n) {
            if (chosen.size() > best.size()) best = chosen;
            return;
        }
        std::vector<LinearFunctional> saved = witness;
        if (try_add(idx)) {
            self(self, idx + 1);
            chosen.pop_back();
            witness = std::move(saved);
        }
        self(self, idx + 1);
    };
    recurse(recurse, 0);
    return detail::finish_selection(s, best);
}

namespace detail {

// One pair per selected point: the provenance lists are sorted by pair index
// and pairs are generated in lexicographic order, so front() is the lowest.
template <class Prov, class PairT>
std::vector<PairT> witness_pairs_for(const std::vector<int>& selected,
                                     const std::vector<Prov>& provenance) {
    std::vector<PairT> out;
    out.reserve(selected.size());
    for (int idx : selected) out.push_back(provenance[idx].front());
    return out;
}

}  // namespace detail

// E(P): maximum number of pairs of P with convexly independent midpoints.
inline ExtremalResult compute_E(const PointSet& p, int cap = 18) {
    PairSystem sys = midpoint_system(p);
    ExtremalResult res;
    if (p.dimension == 2) {
        res = largest_convex_subset_2d(sys.midpoints);
    } else {
        if (sys.midpoints.size() > cap)
            throw std::invalid_argument("compute_E: midpoint count exceeds brute-force cap");
        res = largest_convex_subset_bruteforce(sys.midpoints, cap);
    }
    std::vector<int> pair_idx = detail::witness_pairs_for<std::vector<int>, int>(res.selected, sys.provenance);
    for (int k : pair_idx) res.witness_pairs.push_back(sys.pairs[k]);
    return res;
}

// M(P,Q): maximum convexly independent subset of the Minkowski sum.
inline ExtremalResult compute_M(const PointSet& p, const PointSet& q, int cap = 18) {
    if (!p.all_distinct() || !q.all_distinct())
        throw std::invalid_argument("compute_M: duplicate input points");
    SumSystem sys = minkowski_sum(p, q);
    ExtremalResult res;
    if (p.dimension == 2) {
        res = largest_convex_subset_2d(sys.sums);
    } else {
        if (sys.sums.size() > cap)
            throw std::invalid_argument("compute_M: sum count exceeds brute-force cap");
        res = largest_convex_subset_bruteforce(sys.sums, cap);
    }
    res.witness_pairs =
        detail::witness_pairs_for<std::vector<IndexPair>, IndexPair>(res.selected, sys.provenance);
    return res;
}

// E∘(P): maximum number of pairs whose (distinct) midpoints lie on one
// common circle. Searched by exact inversion — circles through a chosen
// anchor midpoint correspond to lines avoiding the anchor's image — and the
// winning set is re-checked with the 4-point in-circle determinant.
inline ExtremalResult compute_E_circ(const PointSet& p, int cap = 18) {
    if (p.dimension != 2) throw std::invalid_argument("compute_E_circ: d must be 2");
    if (p.size() > cap) throw std::invalid_argument("compute_E_circ: input exceeds cap");
    PairSystem sys = midpoint_system(p);
    const PointSet& mids = sys.midpoints;
    const int n = mids.size();

    std::vector<int> best;
    for (int i = 0; i < std::min(n, 2); ++i) best.push_back(i);

    for (int anchor = 0; anchor < n && n >= 3; ++anchor) {
        // Exact inversion about the anchor.
        std::vector<Vec> inv(n);
        std::vector<int> keep;
        for (int i = 0; i < n; ++i) {
            if (i == anchor) continue;
            Vec w = mids[i] - mids[anchor];
            Rational s = squared_length(w);
            inv[i] = rat(1) / s * w;
            keep.push_back(i);
        }
        for (std::size_t bi = 0; bi < keep.size(); ++bi) {
            int b = keep[bi];
            // Lines through inv[b]: bucket the rest by direction; a bucket's
            // line passes through the inversion origin (and is no circle)
            // iff its direction matches the direction from inv[b] to 0.
            Vec to_origin = canonical_direction(inv[b]);
            std::map<Vec, std::vector<int>> buckets;
            for (std::size_t ci = bi + 1; ci < keep.size(); ++ci) {
                int c = keep[ci];
                buckets[canonical_direction(inv[c] - inv[b])].push_back(c);
            }
            for (const auto& [dir, members] : buckets) {
                if (dir == to_origin) continue;
                if (members.size() + 2 > best.size()) {
                    std::vector<int> sel = {anchor, b};
                    sel.insert(sel.end(), members.begin(), members.end());
                    best = std::move(sel);
                }
            }
        }
    }

    ExtremalResult res = detail::finish_selection(mids, best);
    std::vector<int> pair_idx = detail::witness_pairs_for<std::vector<int>, int>(res.selected, sys.provenance);
    for (int k : pair_idx) res.witness_pairs.push_back(sys.pairs[k]);
    if (res.value >= 3) {
        auto circ = circumcircle(mids[res.selected[0]], mids[res.selected[1]], mids[res.selected[2]]);
        if (!circ) throw InconsistencyError("selected concyclic midpoints are collinear");
        for (std::size_t k = 3; k < res.selected.size(); ++k) {
            if (incircle(mids[res.selected[0]], mids[res.selected[1]], mids[res.selected[2]],
                         mids[res.selected[k]]) != 0 ||
                !circ->contains(mids[res.selected[k]]))
                throw InconsistencyError("selected midpoint not on the witness circle");
        }
        res.circle = *circ;
    }
    return res;
}

}  // namespace convind
