#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "toric/fan.hpp"

using namespace toric;

TEST_CASE("projective line fan has three cones") {
    Fan f = fixtures::p1();
    CHECK(f.cones.size() == 3);
    CHECK(f.maximal.size() == 2);
    CHECK(f.complete);
    CHECK(f.smooth);
}

TEST_CASE("projective plane fan has seven cones") {
    Fan f = fixtures::p2();
    CHECK(f.cones.size() == 7);
    CHECK(f.cones_of_dim(0).size() == 1);
    CHECK(f.cones_of_dim(1).size() == 3);
    CHECK(f.cones_of_dim(2).size() == 3);
    CHECK(f.complete);
}

TEST_CASE("non-primitive rays are rejected") {
    CHECK_THROWS_AS(build_fan(1, {{2}}, {{0}}), NonPrimitiveRay);
    CHECK_THROWS_AS(build_fan(2, {{2, 4}, {0, 1}}, {{0, 1}}), NonPrimitiveRay);
}

TEST_CASE("cones containing a line are rejected") {
    CHECK_THROWS_AS(build_fan(1, {{1}, {-1}}, {{0, 1}}), NotStronglyConvex);
}

TEST_CASE("overlapping cones must intersect in a common face") {
    // two 2-cones sharing interior but not a face
    CHECK_THROWS_AS(build_fan(2, {{1, 0}, {0, 1}, {1, 1}, {-1, 2}}, {{0, 1}, {2, 3}}),
                    ConesNotIntersectingInFaces);
}

TEST_CASE("parse_fan accepts the schema and validates") {
    Fan f = parse_fan(R"({"dim":1,"rays":[[1],[-1]],"maximal_cones":[[0],[1]]})");
    CHECK(f.cones.size() == 3);
    CHECK_THROWS(parse_fan(R"({"dim":1,"rays":[[2]],"maximal_cones":[[0]]})"));
    CHECK_THROWS(parse_fan("not json"));
}

TEST_CASE("faces of a maximal cone of the projective plane") {
    Fan f = fixtures::p2();
    int sigma = f.cone_index({0, 1});
    REQUIRE(sigma >= 0);
    auto fs = faces(f, sigma);
    CHECK(fs.size() == 4);  // itself, two rays, origin
    CHECK(std::count(fs.begin(), fs.end(), 0) == 1);
    auto fac = facets_of(f, sigma);
    CHECK(fac.size() == 2);
    for (int t : fac) CHECK(f.cone(t).dim == 1);
}

TEST_CASE("faces of small cones") {
    Fan f = fixtures::p1();
    CHECK(faces(f, 0) == std::vector<int>{0});
    int rp = f.cone_index({0});
    auto fs = faces(f, rp);
    CHECK(fs.size() == 2);
}

TEST_CASE("locate finds the smallest containing cone") {
    Fan f = fixtures::p1();
    auto c = locate(f, {Rational(3)});
    REQUIRE(c.has_value());
    CHECK(*c == f.cone_index({0}));
    CHECK(*locate(f, {Rational(0)}) == 0);

    Fan a = fixtures::a1();
    CHECK(!locate(a, {Rational(-1)}).has_value());

    Fan p = fixtures::p2();
    auto ray = locate(p, {Rational(2), Rational(0)});
    REQUIRE(ray.has_value());
    CHECK(p.cone(*ray).dim == 1);
    auto top = locate(p, {Rational(1), Rational(2)});
    REQUIRE(top.has_value());
    CHECK(p.cone(*top).dim == 2);
    CHECK_THROWS_AS(locate(p, {Rational(1)}), DimensionMismatch);
}

TEST_CASE("locate is consistent with relative interiors") {
    Fan f = fixtures::p1xp1();
    RationalVec xi = {Rational(1), Rational(3)};
    int c = *locate(f, xi);
    CHECK(f.in_relative_interior(c, xi));
    for (int i = 0; i < static_cast<int>(f.cones.size()); ++i) {
        if (i == c) continue;
        if (f.is_face_of(i, c) && i != c) CHECK(!f.in_relative_interior(i, xi));
    }
}

TEST_CASE("completeness of the example fans") {
    CHECK(is_complete(fixtures::p1()));
    CHECK(is_complete(fixtures::p2()));
    CHECK(is_complete(fixtures::p1xp1()));
    CHECK(is_complete(fixtures::hirzebruch1()));
    CHECK(!is_complete(fixtures::a1()));
    CHECK(!is_complete(fixtures::a2()));
    // removing one maximal cone breaks completeness
    Fan half = build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}});
    CHECK(!is_complete(half));
}

TEST_CASE("dual cone constraint normals are the ray generators") {
    Fan f = fixtures::p2();
    CHECK(dual_cone_constraints(f, 0).empty());
    auto cs = dual_cone_constraints(f, f.cone_index({0, 1}));
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == LatticeVec{1, 0});
    CHECK(cs[1] == LatticeVec{0, 1});
    Fan l = fixtures::p1();
    auto r = dual_cone_constraints(l, l.cone_index({0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0] == LatticeVec{1});
}

TEST_CASE("unknown cone ids throw") {
    Fan f = fixtures::p1();
    CHECK_THROWS_AS(f.cone(99), UnknownCone);
    CHECK_THROWS_AS(faces(f, -1), UnknownCone);
}
