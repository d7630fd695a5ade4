#pragma once

// Certified reductions between the extremal quantities: midpoint systems to
// Minkowski sums, Minkowski sums to unit distances in a polytopal norm, and
// the randomized four-block splitting argument. Every reduction re-certifies
// its output instead of trusting the transformation.

#include <convind/errors.hpp>
#include <convind/extremal.hpp>
#include <convind/norms.hpp>
#include <convind/rng.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace convind {

// M(P, Q) <= E(P ∪ Q'): a convexly independent subset S of P + Q turns into
// |S| point pairs between P and a translate Q' = Q + v (v = 0 when the sets
// are already disjoint) whose midpoints (S + v) / 2 are convexly independent,
// since translation and halving are affine bijections.
struct Claim1Witness {
    PointSet p, q;
    ExtremalResult m_result;                 // M(P, Q), the source witness
    Vec offset;                              // translate applied to Q
    PointSet r;                              // P followed by Q + offset
    std::vector<std::pair<int, int>> pairs;  // indices into r, one per selected sum
    PointSet midpoints;                      // certified convexly independent
    ConvexPositionCertificate certificate;
    int value = 0;                           // = m_result.value
};

inline Claim1Witness reduce_claim1(const PointSet& p, const PointSet& q,
                                   const ExtremalResult& m_result) {
    if (p.dimension != q.dimension) throw std::invalid_argument("reduce_claim1: dimension mismatch");
    Claim1Witness w;
    w.p = p;
    w.q = q;
    w.m_result = m_result;
    const int d = p.dimension;

    // Push Q along the first axis, doubling, until it is disjoint from P.
    std::set<Vec> p_set(p.points.begin(), p.points.end());
    auto disjoint_after = [&](const Vec& v) {
        for (const Vec& pt : q.points)
            if (p_set.count(pt + v)) return false;
        return true;
    };
    w.offset = Vec(d);
    if (!disjoint_after(w.offset)) {
        Rational shift(0);
        for (const Vec& pt : p.points)
            if (cmp(pt[0], shift) > 0) shift = pt[0];
        for (const Vec& pt : q.points) shift -= std::min(Rational(0), pt[0]);  // coarse extent
        shift += 1;
        for (int g = 0; g < 62; ++g, shift *= 2) {
            Vec v(d);
            v[0] = shift;
            if (disjoint_after(v)) {
                w.offset = v;
                break;
            }
        }
        if (!disjoint_after(w.offset))
            throw InconsistencyError("reduce_claim1: could not separate P from Q");
    }

    w.r.dimension = d;
    for (const Vec& pt : p.points) w.r.push_back(pt);
    for (const Vec& pt : q.points) w.r.push_back(pt + w.offset);
    w.midpoints.dimension = d;
    for (const IndexPair& pr : m_result.witness_pairs) {
        w.pairs.emplace_back(pr.a, p.size() + pr.b);
        w.midpoints.push_back(midpoint(w.r[pr.a], w.r[p.size() + pr.b]));
    }
    if (!w.midpoints.all_distinct())
        throw InconsistencyError("reduce_claim1: translated midpoints collide");
    w.certificate = convexly_independent(w.midpoints);
    if (w.certificate.verdict != ConvexPositionCertificate::Verdict::independent)
        throw InconsistencyError("reduce_claim1: translated midpoints lost independence");
    w.value = m_result.value;
    return w;
}

inline Claim1Witness reduce_claim1(const PointSet& p, const PointSet& q, int cap = 18) {
    return reduce_claim1(p, q, compute_M(p, q, cap));
}

// M(P, Q) to unit distances (d = 2): at least half of a convexly independent
// subset C of P + Q lies on one of the two convex chains spanned between the
// lexicographic extremes of C. Translating by tau and taking the symmetric
// hull of (C' - tau) as unit ball makes every chain element c = p + q a unit
// pair {p, tau - q} in that norm.
struct Claim2Witness {
    PointSet p, q;
    ExtremalResult m_result;            // M(P, Q)
    std::vector<int> chain;             // positions into m_result.selected
    Vec tau;
    int tau_attempts = 0;
    UnitBallCertificate ball;
    PointSet r;                         // P followed by tau - Q
    std::vector<std::pair<int, int>> unit_pairs;  // indices into r
    DistanceCensus census;              // of r in the constructed norm
    int value = 0;                      // |chain|
    int bound = 0;                      // ceil(M / 2)
};

inline Claim2Witness reduce_claim2(const PointSet& p, const PointSet& q, int cap = 18,
                                   int budget = 120) {
    if (p.dimension != 2 || q.dimension != 2)
        throw std::invalid_argument("reduce_claim2: d must be 2");
    Claim2Witness w;
    w.p = p;
    w.q = q;
    w.m_result = compute_M(p, q, cap);
    const std::vector<int>& sel = w.m_result.selected;
    const PointSet& sums = w.m_result.evaluated;
    const int mval = w.m_result.value;

    // Chain selection: split the selected polygon into its upper and lower
    // boundaries with strictly increasing x (a vertical column keeps only
    // the endpoint the side supports). Every selected point lies on at
    // least one boundary, so the bigger one has >= ceil(M/2) elements, and
    // a strictly monotone chain survives the symmetric-hull construction.
    std::vector<int> order(mval);
    for (int k = 0; k < mval; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](int lhs, int rhs) { return sums[sel[lhs]] < sums[sel[rhs]]; });
    auto side_chain = [&](int dir) {
        // dir = -1 walks the upper boundary, +1 the lower one.
        std::vector<int> h;
        for (int k : order) {
            const Vec& c = sums[sel[k]];
            if (!h.empty() && cmp(sums[sel[h.back()]][0], c[0]) == 0) {
                if (dir < 0)
                    h.pop_back();  // same column: the upper side keeps the top
                else
                    continue;      // ... and the lower side keeps the bottom
            }
            while (h.size() >= 2 &&
                   orient(sums[sel[h[h.size() - 2]]], sums[sel[h.back()]], c) * dir <= 0)
                h.pop_back();
            h.push_back(k);
        }
        return h;
    };
    std::vector<int> upper = side_chain(-1), lower = side_chain(+1);
    const bool use_upper = upper.size() >= lower.size();
    w.chain = use_upper ? std::move(upper) : std::move(lower);
    std::sort(w.chain.begin(), w.chain.end());

    // Translation schedule: x drops linearly while y runs away exponentially
    // on the open side of the chain. Each degeneracy (a coincidence line
    // through two chain points, or a point collision) rejects at most two
    // candidates, and once 2^g dominates the coordinate spread every chain
    // difference is extreme in the symmetric hull, so some tau within the
    // budget passes all checks.
    std::set<Vec> p_lookup(p.points.begin(), p.points.end());
    Rational min_x(0);
    for (int k : w.chain) {
        const Vec& c = sums[sel[k]];
        if (w.chain[0] == k || cmp(c[0], min_x) < 0) min_x = c[0];
    }
    Rational pow2(1);
    for (int g = 0; g <= budget; ++g, pow2 *= 2) {
        Vec tau{min_x - rat(1) - rat(g), use_upper ? -pow2 : pow2};
        // (a) tau coincides with no chain point; differences are nonzero.
        bool ok = true;
        PointSet verts;
        verts.dimension = 2;
        std::set<Vec> vert_set, dirs;
        for (int k : w.chain) {
            Vec diff = sums[sel[k]] - tau;
            if (diff.is_zero()) { ok = false; break; }
            // (b) pairwise distinct directions (canonical form also catches
            //     a difference parallel to another's reflection).
            if (!dirs.insert(canonical_direction(diff)).second) { ok = false; break; }
            if (!vert_set.insert(diff).second || !vert_set.insert(-diff).second) {
                ok = false;
                break;
            }
            verts.push_back(diff);
            verts.push_back(-diff);
        }
        if (!ok) continue;
        // (c) P and tau - Q must be disjoint so r keeps all its points.
        for (const Vec& qq : q.points) {
            if (p_lookup.count(tau - qq)) { ok = false; break; }
        }
        if (!ok) continue;
        PointSet padded = affine_rank(verts) < 2 ? pad_to_full_dimension(verts) : verts;
        UnitBallCertificate ball;
        try {
            ball = make_unit_ball(padded);
        } catch (const VerificationError&) {
            continue;  // (d) vertices not in convex position at this tau
        }
        ball.padding_count = padded.size() - verts.size();
        w.tau = tau;
        w.tau_attempts = g;
        w.ball = std::move(ball);
        break;
    }
    if (w.tau.dim() == 0) throw VerificationError("reduce_claim2: tau budget exhausted");

    w.r.dimension = 2;
    for (const Vec& pp : p.points) w.r.push_back(pp);
    for (const Vec& qq : q.points) w.r.push_back(w.tau - qq);
    for (int k : w.chain) {
        IndexPair pr = w.m_result.witness_pairs[k];
        int ri = pr.a, rj = p.size() + pr.b;
        if (cmp(gauge(w.ball, w.r[ri] - w.r[rj]), rat(1)) != 0)
            throw InconsistencyError("reduce_claim2: chain pair is not at unit distance");
        w.unit_pairs.emplace_back(ri, rj);
    }
    w.census = distance_census(w.r, &w.ball);
    w.value = static_cast<int>(w.chain.size());
    w.bound = (mval + 1) / 2;
    if (w.value < w.bound || w.census.unit_pairs < w.value)
        throw InconsistencyError("reduce_claim2: unit pair count below the chain bound");
    return w;
}

// Random halving: split P and Q into halves, label each selected sum by the
// halves of its lowest provenance pair; some block keeps >= ceil(M/4).
struct Claim3Witness {
    PointSet p, q;
    std::uint64_t seed = 0;
    ExtremalResult m_result;
    std::vector<int> p1, p2, q1, q2;    // index halves after the shuffle
    std::vector<std::pair<int, int>> labels;  // per selected sum: block (1|2, 1|2)
    std::vector<bool> ambiguous;        // sum has provenance in several blocks
    std::pair<int, int> block;          // argmax block
    std::vector<int> block_members;     // positions into m_result.selected
    int block_count = 0;
    int bound = 0;                      // ceil(M / 4)
    ConvexPositionCertificate certificate;  // over the block's sums
};

inline Claim3Witness reduce_claim3(const PointSet& p, const PointSet& q, std::uint64_t seed,
                                   int cap = 18) {
    Claim3Witness w;
    w.p = p;
    w.q = q;
    w.seed = seed;
    w.m_result = compute_M(p, q, cap);
    SumSystem sys = minkowski_sum(p, q);  // for full provenance lists

    Rng root(seed);
    auto split = [](std::vector<int> idx, Rng rng, std::vector<int>& first,
                    std::vector<int>& second) {
        rng.shuffle(idx);
        std::size_t half = (idx.size() + 1) / 2;
        first.assign(idx.begin(), idx.begin() + half);
        second.assign(idx.begin() + half, idx.end());
        std::sort(first.begin(), first.end());
        std::sort(second.begin(), second.end());
    };
    std::vector<int> pidx(p.size()), qidx(q.size());
    for (int i = 0; i < p.size(); ++i) pidx[i] = i;
    for (int j = 0; j < q.size(); ++j) qidx[j] = j;
    split(pidx, root.fork(0), w.p1, w.p2);
    split(qidx, root.fork(1), w.q1, w.q2);
    std::vector<int> p_side(p.size()), q_side(q.size());
    for (int i : w.p1) p_side[i] = 1;
    for (int i : w.p2) p_side[i] = 2;
    for (int j : w.q1) q_side[j] = 1;
    for (int j : w.q2) q_side[j] = 2;

    std::map<std::pair<int, int>, std::vector<int>> blocks;
    for (std::size_t k = 0; k < w.m_result.selected.size(); ++k) {
        const std::vector<IndexPair>& prov = sys.provenance[w.m_result.selected[k]];
        // Label by the lowest (i, j) provenance pair; flag if another pair
        // of the same sum lands in a different block.
        std::pair<int, int> label{p_side[prov[0].a], q_side[prov[0].b]};
        bool amb = false;
        for (const IndexPair& pr : prov)
            if (std::pair<int, int>{p_side[pr.a], q_side[pr.b]} != label) amb = true;
        w.labels.push_back(label);
        w.ambiguous.push_back(amb);
        blocks[label].push_back(static_cast<int>(k));
    }
    for (int a = 1; a <= 2; ++a) {
        for (int b = 1; b <= 2; ++b) {
            auto it = blocks.find({a, b});
            int count = it == blocks.end() ? 0 : static_cast<int>(it->second.size());
            if (count > w.block_count) {
                w.block_count = count;
                w.block = {a, b};
                w.block_members = it->second;
            }
        }
    }
    w.bound = (w.m_result.value + 3) / 4;
    if (w.block_count < w.bound)
        throw InconsistencyError("reduce_claim3: argmax block below pigeonhole bound");
    PointSet block_sums;
    block_sums.dimension = p.dimension;
    for (int k : w.block_members)
        block_sums.push_back(w.m_result.evaluated[w.m_result.selected[k]]);
    w.certificate = convexly_independent(block_sums);
    if (w.certificate.verdict != ConvexPositionCertificate::Verdict::independent)
        throw InconsistencyError("reduce_claim3: block subset lost independence");
    return w;
}

// One instance, every angle: M(P, Q) directly, the claim-1 drop to an
// E-witness on P ∪ Q', and (planar case) the claim-2 norm realization.
struct EquivalenceReport {
    PointSet p, q;
    ExtremalResult m_result;            // M(P, Q)
    Claim1Witness claim1;               // E-witness of m_result.value pairs
    std::optional<Claim2Witness> claim2;
};

inline EquivalenceReport equivalence_report(const PointSet& p, const PointSet& q, int cap = 18,
                                            int budget = 30) {
    EquivalenceReport rep;
    rep.p = p;
    rep.q = q;
    rep.m_result = compute_M(p, q, cap);
    rep.claim1 = reduce_claim1(p, q, rep.m_result);
    if (rep.claim1.value != rep.m_result.value)
        throw InconsistencyError("equivalence_report: claim1 dropped witness pairs");
    if (p.dimension == 2) {
        rep.claim2 = reduce_claim2(p, q, cap, budget);
        if (rep.claim2->value < (rep.m_result.value + 1) / 2)
            throw InconsistencyError("equivalence_report: claim2 chain below half size");
    }
    return rep;
}

}  // namespace convind
