#include "helpers.hpp"

#include <convind/constructions.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace convind;
using testutil::planar;
using testutil::spatial;

namespace {

void check_on_circle(const CubeArcs& ca) {
    // Arc i lives in the chart whose i-th coordinate is the parameter t and
    // whose other two coordinates are equal to s, with t^2 + 2 s^2 = 2.
    for (int i = 0; i < 3; ++i) {
        for (const Vec& p : ca.arcs[i].points) {
            int a = (i + 1) % 3, b = (i + 2) % 3;
            REQUIRE(p[a] == p[b]);
            REQUIRE(p[i] * p[i] + rat(2) * p[a] * p[a] == rat(2));
        }
    }
}

}  // namespace

TEST_CASE("cube_arc_points smallest case hits the edge midpoints") {
    CubeArcs ca = cube_arc_points(1, rat(1, 4));
    REQUIRE(ca.arcs[0][0] == (Vec{rat(0), rat(1), rat(1)}));
    REQUIRE(ca.arcs[1][0] == (Vec{rat(1), rat(0), rat(1)}));
    REQUIRE(ca.arcs[2][0] == (Vec{rat(1), rat(1), rat(0)}));
    REQUIRE(ca.midpoints.size() == 3);
    check_on_circle(ca);
}

TEST_CASE("cube_arc_points midpoint counts and circle membership") {
    CubeArcs two = cube_arc_points(2, rat(1, 8));
    REQUIRE(two.midpoints.size() == 12);
    REQUIRE(two.midpoints.all_distinct());
    check_on_circle(two);

    CubeArcs four = cube_arc_points(4, rat(1, 16));
    REQUIRE(four.midpoints.size() == 48);
    REQUIRE(four.midpoints.all_distinct());
    check_on_circle(four);

    REQUIRE_THROWS_AS(cube_arc_points(0, rat(1, 4)), std::invalid_argument);
    REQUIRE_THROWS_AS(cube_arc_points(2, rat(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(cube_arc_points(2, rat(1)), std::invalid_argument);
}

TEST_CASE("verify_cube_arc certifies 3 k^2 independent midpoints") {
    CubeArcVerification v3 = verify_cube_arc(3);
    REQUIRE(v3.k == 3);
    REQUIRE(v3.arcs.midpoints.size() == 27);
    REQUIRE(v3.certificate.verdict == ConvexPositionCertificate::Verdict::independent);
    REQUIRE(verify_certificate(v3.certificate, v3.arcs.midpoints));

    CubeArcVerification v6 = verify_cube_arc(6);
    REQUIRE(v6.arcs.midpoints.size() == 108);
    REQUIRE(v6.certificate.verdict == ConvexPositionCertificate::Verdict::independent);
}

TEST_CASE("perturb_nonparallel leaves good input untouched") {
    PointSet s = planar({{0, 0}, {1, 0}, {0, 1}});
    PerturbResult r = perturb_nonparallel(s, rat(1, 100), 7);
    REQUIRE(!r.changed);
    REQUIRE(r.attempts == 0);
    REQUIRE(r.points.points == s.points);
}

TEST_CASE("perturb_nonparallel separates parallel directions") {
    // Square: two pairs of parallel sides plus parallel half-diagonals.
    PointSet s = planar({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    PerturbResult r = perturb_nonparallel(s, rat(1, 50), 99);
    REQUIRE(r.changed);
    REQUIRE(r.attempts >= 1);
    std::set<Vec> dirs;
    for (int i = 0; i < r.points.size(); ++i)
        for (int j = i + 1; j < r.points.size(); ++j)
            REQUIRE(dirs.insert(canonical_direction(r.points[j] - r.points[i])).second);
    // Deterministic in the seed.
    PerturbResult again = perturb_nonparallel(s, rat(1, 50), 99);
    REQUIRE(again.points.points == r.points.points);

    REQUIRE_THROWS_AS(perturb_nonparallel(s, rat(0), 1), VerificationError);
    REQUIRE_THROWS_AS(perturb_nonparallel(s, rat(-1), 1), std::invalid_argument);
}

TEST_CASE("antipodal_triple_3d produces certified cross witnesses") {
    AntipodalTripleResult one = antipodal_triple_3d(1);
    REQUIRE(one.m == 1);
    REQUIRE(one.family.sets.size() == 3);
    REQUIRE(one.family.witnesses.size() == 3);
    REQUIRE(one.direction_count == 3);

    AntipodalTripleResult two = antipodal_triple_3d(2);
    REQUIRE(two.family.witnesses.size() == 12);
    REQUIRE(two.direction_count == 12);
    // All 12 cross directions really are distinct.
    std::set<Vec> dirs;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (const Vec& p : two.family.sets[i].points)
                for (const Vec& q : two.family.sets[j].points)
                    REQUIRE(dirs.insert(canonical_direction(q - p)).second);

    REQUIRE_THROWS_AS(antipodal_triple_3d(0), std::invalid_argument);
}

TEST_CASE("unit_ball_from_antipodal pads flat difference sets") {
    AntipodalFamily singles;
    singles.sets = {spatial({{0, 1, 1}}), spatial({{1, 0, 1}}), spatial({{1, 1, 0}})};
    UnitBallCertificate hex = unit_ball_from_antipodal(singles);
    // 6 hexagon vertices in the plane x + y + z = 0, plus 2 padding vertices.
    REQUIRE(hex.vertices.size() == 8);
    REQUIRE(hex.padding_count == 2);
    for (int i = 0; i < 6; ++i) {
        const Vec& v = hex.vertices[i];
        REQUIRE(v[0] + v[1] + v[2] == rat(0));
        REQUIRE(gauge(hex, v) == rat(1));
    }

    AntipodalFamily toy;
    toy.sets = {planar({{0, 0}}), planar({{1, 0}})};
    UnitBallCertificate seg = unit_ball_from_antipodal(toy);
    REQUIRE(seg.vertices.size() == 4);
    REQUIRE(seg.padding_count == 2);
}

TEST_CASE("unit_ball_from_antipodal keeps within-set distances short") {
    AntipodalTripleResult four = antipodal_triple_3d(4);
    UnitBallCertificate ball = unit_ball_from_antipodal(four.family);
    // 6 * 16 distinct cross differences span all of space (no rank padding);
    // one apex pair pushes the boundary past the within-arc differences.
    REQUIRE(ball.vertices.size() == 98);
    REQUIRE(ball.padding_count == 2);
    // Every cross difference is a ball vertex, hence at gauge exactly 1.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (const Vec& p : four.family.sets[i].points)
                for (const Vec& q : four.family.sets[j].points)
                    REQUIRE(gauge(ball, q - p) == rat(1));
    // ... while distances inside one arc stay strictly below 1.
    for (const PointSet& s : four.family.sets)
        for (int a = 0; a < s.size(); ++a)
            for (int b = a + 1; b < s.size(); ++b)
                REQUIRE(cmp(gauge(ball, s[b] - s[a]), rat(1)) < 0);
}

TEST_CASE("theorem3_census certifies the three extremal counts") {
    Theorem3Report one = theorem3_census(1);
    REQUIRE(one.expected == 3);
    REQUIRE(one.total_pairs == 3);
    REQUIRE(one.census.unit_pairs == 3);
    REQUIRE(one.census.unit_directions == 3);
    REQUIRE(one.census.diameter_pairs == 3);
    REQUIRE(one.census.diameter_value == rat(1));

    Theorem3Report two = theorem3_census(2);
    REQUIRE(two.expected == 12);
    REQUIRE(two.total_pairs == 15);
    REQUIRE(two.census.unit_pairs == 12);
    REQUIRE(two.census.unit_directions == 12);
    REQUIRE(two.census.diameter_pairs == 12);
    REQUIRE(two.points.size() == 6);
}
