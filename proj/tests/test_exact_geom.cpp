#include "helpers.hpp"

#include <convind/rational.hpp>
#include <convind/simplex.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace convind;
using testutil::planar;
using testutil::spatial;

TEST_CASE("rational parsing and serialization round-trip") {
    REQUIRE(rational_to_string(rat(1, 2)) == "1/2");
    REQUIRE(rational_to_string(rat(-3)) == "-3/1");
    REQUIRE(rational_to_string(rat(0)) == "0/1");
    REQUIRE(parse_rational("7/-14") == rat(-1, 2));
    REQUIRE(parse_rational("42") == rat(42));
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational r = rng.rational(1000, 1000);
        REQUIRE(parse_rational(rational_to_string(r)) == r);
    }
    REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational_sqrt_lower brackets the root") {
    for (long v : {0L, 1L, 2L, 3L, 4L, 25L, 1000L}) {
        Rational x = rat(v);
        Rational r = rational_sqrt_lower(x);
        REQUIRE(cmp(r * r, x) <= 0);
        Rational step = rat(1, 1L << 30);
        Rational r2 = r + step;
        REQUIRE(cmp(r2 * r2, x) > 0);
    }
}

TEST_CASE("orientation on fixed planar examples") {
    REQUIRE(orient(Vec{rat(0), rat(0)}, Vec{rat(1), rat(0)}, Vec{rat(0), rat(1)}) == 1);
    REQUIRE(orient(Vec{rat(0), rat(0)}, Vec{rat(1), rat(0)}, Vec{rat(2), rat(0)}) == 0);
    REQUIRE(orient(Vec{rat(0), rat(0)}, Vec{rat(0), rat(1)}, Vec{rat(1), rat(0)}) == -1);
}

TEST_CASE("orientation antisymmetry and translation invariance") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + static_cast<int>(rng.below(2));
        std::vector<Vec> simplex;
        for (int i = 0; i <= d; ++i) simplex.push_back(rng.point(d, 16, 8));
        int base = orient(simplex);
        auto swapped = simplex;
        std::swap(swapped[0], swapped[1]);
        REQUIRE(orient(swapped) == -base);
        Vec t = rng.point(d, 16, 8);
        auto moved = simplex;
        for (Vec& v : moved) v = v + t;
        REQUIRE(orient(moved) == base);
    }
}

TEST_CASE("circumcircle and incircle agree on explicit circles") {
    auto c = circumcircle(Vec{rat(1), rat(0)}, Vec{rat(0), rat(1)}, Vec{rat(-1), rat(0)});
    REQUIRE(c.has_value());
    REQUIRE(c->center == Vec{rat(0), rat(0)});
    REQUIRE(c->radius_squared == rat(1));
    REQUIRE(c->contains(Vec{rat(0), rat(-1)}));
    REQUIRE(!c->contains(Vec{rat(0), rat(0)}));
    REQUIRE(!circumcircle(Vec{rat(0), rat(0)}, Vec{rat(1), rat(0)}, Vec{rat(2), rat(0)}).has_value());

    // incircle sign flips across the circle through the first three points.
    Vec a{rat(1), rat(0)}, b{rat(0), rat(1)}, cc{rat(-1), rat(0)};
    REQUIRE(incircle(a, b, cc, Vec{rat(0), rat(-1)}) == 0);
    int inside = incircle(a, b, cc, Vec{rat(0), rat(0)});
    int outside = incircle(a, b, cc, Vec{rat(0), rat(-2)});
    REQUIRE(inside != 0);
    REQUIRE(outside != 0);
    REQUIRE(inside * outside < 0);
}

TEST_CASE("canonical_direction normalizes scale and sign") {
    REQUIRE(canonical_direction(Vec{rat(2, 3), rat(-4, 3)}) == Vec{rat(1), rat(-2)});
    REQUIRE(canonical_direction(Vec{rat(0), rat(-5)}) == Vec{rat(0), rat(1)});
    REQUIRE(canonical_direction(Vec{rat(-2), rat(4), rat(-6)}) == Vec{rat(1), rat(-2), rat(3)});
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Vec v = rng.point(3, 12, 6);
        if (v.is_zero()) continue;
        Rational t = rng.rational(9, 9);
        if (sgn(t) == 0) continue;
        REQUIRE(canonical_direction(t * v) == canonical_direction(v));
    }
    REQUIRE_THROWS_AS(canonical_direction(Vec(2)), std::invalid_argument);
}

TEST_CASE("equality LP solves a fixed transportation-style instance") {
    // min x0 + 2 x1 subject to x0 + x1 = 3, x0 - x1 = 1, x >= 0.
    Matrix<Rational> a = {{rat(1), rat(1)}, {rat(1), rat(-1)}};
    std::vector<Rational> b = {rat(3), rat(1)};
    std::vector<Rational> c = {rat(1), rat(2)};
    auto res = solve_equality_lp<Rational>(a, b, c);
    REQUIRE(res.status == LpStatus::optimal);
    REQUIRE(res.x[0] == rat(2));
    REQUIRE(res.x[1] == rat(1));
    REQUIRE(res.objective == rat(4));
}

TEST_CASE("equality LP reports infeasible with a Farkas certificate") {
    // x0 = 1 and x0 = 2 cannot both hold.
    Matrix<Rational> a = {{rat(1)}, {rat(1)}};
    std::vector<Rational> b = {rat(1), rat(2)};
    std::vector<Rational> c = {rat(0)};
    auto res = solve_equality_lp<Rational>(a, b, c);
    REQUIRE(res.status == LpStatus::infeasible);
    REQUIRE(res.farkas.size() == 2);
    // y'b > 0 and y'A <= 0 certify infeasibility.
    Rational yb = res.farkas[0] * b[0] + res.farkas[1] * b[1];
    Rational ya = res.farkas[0] * a[0][0] + res.farkas[1] * a[1][0];
    REQUIRE(sgn(yb) > 0);
    REQUIRE(sgn(ya) <= 0);
}

TEST_CASE("equality LP detects unbounded objectives") {
    // min -x0 subject to x0 - x1 = 0: x0 = x1 -> infinity.
    Matrix<Rational> a = {{rat(1), rat(-1)}};
    std::vector<Rational> b = {rat(0)};
    std::vector<Rational> c = {rat(-1), rat(0)};
    auto res = solve_equality_lp<Rational>(a, b, c);
    REQUIRE(res.status == LpStatus::unbounded);
}

TEST_CASE("is_extreme matches the fixed square examples") {
    PointSet sq_center = planar({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
    for (int corner = 0; corner < 4; ++corner) {
        auto r = is_extreme(corner, sq_center);
        REQUIRE(r.extreme);
        // witness strictly maximized at the corner
        const Vec& p = sq_center[corner];
        for (int j = 0; j < sq_center.size(); ++j) {
            if (j == corner) continue;
            REQUIRE(cmp(r.witness.value(p), r.witness.value(sq_center[j])) > 0);
        }
    }
    auto center = is_extreme(4, sq_center);
    REQUIRE(!center.extreme);
    Rational total(0);
    Vec sum(2);
    for (const auto& [idx, coeff] : center.combination) {
        REQUIRE(idx != 4);
        REQUIRE(sgn(coeff) >= 0);
        total += coeff;
        sum = sum + coeff * sq_center[idx];
    }
    REQUIRE(total == rat(1));
    REQUIRE(sum == sq_center[4]);
}

TEST_CASE("is_extreme middle of three collinear points") {
    PointSet line = planar({{0, 0}, {1, 0}, {2, 0}});
    auto mid = is_extreme(1, line);
    REQUIRE(!mid.extreme);
    REQUIRE(mid.combination.size() == 2);
    for (const auto& [idx, coeff] : mid.combination) {
        REQUIRE((idx == 0 || idx == 2));
        REQUIRE(coeff == rat(1, 2));
    }
}

TEST_CASE("is_extreme agrees with the subset-enumeration oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2 + static_cast<int>(rng.below(2));
        int n = 4 + static_cast<int>(rng.below(4));  // <= 7 < 8-point oracle cap
        PointSet s = testutil::random_point_set(rng, n, d, 6, 4);
        for (int i = 0; i < n; ++i) {
            auto r = is_extreme(i, s);
            REQUIRE(r.extreme == testutil::extreme_oracle(i, s));
        }
    }
}

TEST_CASE("convexly_independent fixed examples") {
    REQUIRE(convexly_independent(planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}})).verdict ==
            ConvexPositionCertificate::Verdict::independent);
    auto dep = convexly_independent(planar({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}}));
    REQUIRE(dep.verdict == ConvexPositionCertificate::Verdict::dependent);
    REQUIRE(dep.violation.has_value());
    REQUIRE(dep.violation->point_index == 4);
    REQUIRE(convexly_independent(planar({{0, 0}, {5, 7}})).verdict ==
            ConvexPositionCertificate::Verdict::independent);
    // duplicates are dependent with a one-term violation
    auto dup = convexly_independent(planar({{1, 1}, {1, 1}}));
    REQUIRE(dup.verdict == ConvexPositionCertificate::Verdict::dependent);
    REQUIRE(dup.violation.has_value());
    REQUIRE(dup.violation->coefficients.size() == 1);
}

TEST_CASE("certificates re-verify and match the hull-size equivalence") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 2 + static_cast<int>(rng.below(2));
        int n = 3 + static_cast<int>(rng.below(5));
        PointSet s = testutil::random_point_set(rng, n, d, 5, 3);
        auto cert = convexly_independent(s);
        REQUIRE(verify_certificate(cert, s));
        auto hull = hull_vertices(s);
        bool independent = cert.verdict == ConvexPositionCertificate::Verdict::independent;
        REQUIRE(independent == (static_cast<int>(hull.indices.size()) == s.size()));
        REQUIRE(independent == testutil::ci_oracle(s));
    }
}

TEST_CASE("hull_vertices fixed examples") {
    auto hv = hull_vertices(planar({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}}));
    REQUIRE(hv.indices == std::vector<int>{0, 1, 2, 3});
    auto line = hull_vertices(planar({{0, 0}, {1, 0}, {2, 0}}));
    REQUIRE(line.indices == std::vector<int>{0, 2});
    // six rational points on x^2 + y^2 = 25: all extreme
    PointSet circle = planar({{5, 0}, {3, 4}, {-3, 4}, {-4, -3}, {0, -5}, {4, -3}});
    auto on_circle = hull_vertices(circle);
    REQUIRE(static_cast<int>(on_circle.indices.size()) == 6);
}

TEST_CASE("separate_from_hull yields a unit-gap separator outside") {
    std::vector<Vec> tri = {Vec{rat(0), rat(0)}, Vec{rat(2), rat(0)}, Vec{rat(0), rat(2)}};
    auto inside = separate_from_hull(Vec{rat(1, 2), rat(1, 2)}, tri);
    REQUIRE(inside.inside);
    Vec recon(2);
    Rational total(0);
    for (size_t i = 0; i < tri.size(); ++i) {
        REQUIRE(sgn(inside.coefficients[i]) >= 0);
        total += inside.coefficients[i];
        recon = recon + inside.coefficients[i] * tri[i];
    }
    REQUIRE(total == rat(1));
    REQUIRE(recon == Vec{rat(1, 2), rat(1, 2)});

    auto outside = separate_from_hull(Vec{rat(3), rat(3)}, tri);
    REQUIRE(!outside.inside);
    Rational target = dot(outside.normal, Vec{rat(3), rat(3)});
    Rational best = dot(outside.normal, tri[0]);
    for (const Vec& t : tri) best = std::max(best, dot(outside.normal, t));
    REQUIRE(target - best == rat(1));  // normalized strict gap
}

TEST_CASE("strictly_positive_functional separates or certifies zero in hull") {
    std::vector<Vec> pos = {Vec{rat(1), rat(0)}, Vec{rat(1), rat(1)}, Vec{rat(2), rat(-1)}};
    auto r = strictly_positive_functional(pos);
    REQUIRE(r.feasible);
    for (const Vec& v : pos) REQUIRE(sgn(dot(r.functional, v)) > 0);

    std::vector<Vec> wrap = {Vec{rat(1), rat(0)}, Vec{rat(-1), rat(1)}, Vec{rat(-1), rat(-1)}};
    auto z = strictly_positive_functional(wrap);
    REQUIRE(!z.feasible);
    Vec combo(2);
    Rational total(0);
    for (size_t i = 0; i < wrap.size(); ++i) {
        REQUIRE(sgn(z.zero_combination[i]) >= 0);
        total += z.zero_combination[i];
        combo = combo + z.zero_combination[i] * wrap[i];
    }
    REQUIRE(total == rat(1));
    REQUIRE(combo.is_zero());
}

TEST_CASE("affine_rank on degenerate and generic sets") {
    REQUIRE(affine_rank(planar({{0, 0}, {1, 0}, {2, 0}})) == 1);
    REQUIRE(affine_rank(planar({{0, 0}, {1, 0}, {0, 1}})) == 2);
    REQUIRE(affine_rank(spatial({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    REQUIRE(affine_rank(spatial({{1, 1, 1}})) == 0);
}

TEST_CASE("parallel_for results are independent of worker count") {
    std::vector<int> a(101), b(101);
    parallel_for(101, [&](int i) { a[i] = i * i; }, 1);
    parallel_for(101, [&](int i) { b[i] = i * i; }, 7);
    REQUIRE(a == b);
}
