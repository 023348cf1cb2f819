#include <doctest.h>

#include "census.hpp"
#include "nsurf/enumerate.hpp"
#include "nsurf/realization.hpp"

using namespace nsurf;

namespace {

std::vector<NormalVector> sample(const Triangulation& tri, Mode mode, int cap) {
    EnumerateOptions opts;
    opts.mode = mode;
    opts.weight_cap = cap;
    return enumerate_admissible(tri, opts);
}

void check_consistent(const Triangulation& tri, const NormalVector& v) {
    auto rs = realize(v, tri);
    auto report = components(rs);
    NormalVector sum(v.mode(), tri.size());
    Integer chi = 0;
    for (const auto& c : report.components) {
        CHECK(c.euler == c.euler_cells);
        CHECK(c.euler <= 2);
        if (c.two_sided && report.ambient_orientable) CHECK(c.orientable);
        if (!c.orientable) CHECK(c.euler <= 1);
        if (c.kind == SurfaceKind::ProjectivePlane) CHECK_FALSE(c.orientable);
        sum = sum + c.vector;
        chi += c.euler;
    }
    CHECK(sum == v);
    CHECK(chi == euler_characteristic(v, tri));
}

}  // namespace

TEST_CASE("vertex links realize as spheres") {
    auto tri = census::load("boundary_4simplex");
    auto rs = realize(vertex_links_sum(tri), tri);
    CHECK(rs.component_count() == 5);
    CHECK(rs.point_count() == 20);
    auto report = components(rs);
    REQUIRE(report.components.size() == 5);
    for (const auto& c : report.components) {
        CHECK(c.kind == SurfaceKind::Sphere);
        CHECK(c.two_sided);
        CHECK(c.orientable);
        CHECK(c.weight == 4);
    }
    CHECK(duplicate_two_sided_components(report).empty());
    auto doubled = components(realize(vertex_links_sum(tri) * 2, tri));
    CHECK(doubled.components.size() == 10);
    CHECK(duplicate_two_sided_components(doubled).size() == 5);
}

TEST_CASE("cell complex matches the coordinate formulas across the census") {
    struct Case {
        const char* name;
        Mode mode;
        int cap;
    };
    for (auto c : {Case{"boundary_4simplex", Mode::OneNormal, 10}, Case{"boundary_4simplex", Mode::TwoNormal, 9},
                   Case{"s3_double", Mode::TwoNormal, 10}, Case{"s3_one_tet", Mode::TwoNormal, 9},
                   Case{"lens_4_1", Mode::TwoNormal, 9}, Case{"lens_5_2", Mode::TwoNormal, 9},
                   Case{"rp3", Mode::TwoNormal, 8}, Case{"quaternionic", Mode::TwoNormal, 8}}) {
        CAPTURE(c.name);
        auto tri = census::load(c.name);
        auto all = sample(tri, c.mode, c.cap);
        REQUIRE(!all.empty());
        for (const auto& v : all) {
            CAPTURE(serialize(v));
            check_consistent(tri, v);
        }
    }
}

TEST_CASE("one-sided surfaces are detected") {
    // RP^3 contains a one-sided projective plane of small weight.
    auto tri = census::load("rp3");
    bool saw_rp2 = false;
    for (const auto& v : sample(tri, Mode::OneNormal, 6)) {
        auto report = components(realize(v, tri));
        for (const auto& c : report.components)
            if (c.kind == SurfaceKind::ProjectivePlane) {
                saw_rp2 = true;
                CHECK_FALSE(c.two_sided);
            }
    }
    CHECK(saw_rp2);
}

TEST_CASE("octagon surfaces realize") {
    for (auto name : {"boundary_4simplex", "s3_double", "lens_4_1"}) {
        CAPTURE(name);
        auto tri = census::load(name);
        int with_octagon = 0;
        for (const auto& v : sample(tri, Mode::TwoNormal, 14)) {
            if (octagon_count(v) == 0) continue;
            ++with_octagon;
            auto report = components(realize(v, tri));
            Integer octs = 0;
            for (const auto& c : report.components) {
                octs += c.octagons;
                CHECK(c.euler == c.euler_cells);
            }
            CHECK(octs == octagon_count(v));
        }
        CHECK(with_octagon > 0);
    }
}

TEST_CASE("realize refuses bad input") {
    auto tri = census::load("boundary_4simplex");
    NormalVector v(Mode::OneNormal, 5);
    v.at(0, disc::quad(1)) = 1;
    CHECK_THROWS_AS(realize(v, tri), InvalidInput);
    CHECK_THROWS_AS(realize(vertex_links_sum(tri) * 3, tri, 10), ResourceLimit);
}

TEST_CASE("component report text") {
    auto tri = census::load("s3_double");
    auto text = serialize(components(realize(vertex_link(tri, 0), tri)));
    CHECK(text.find("components=1") == 0);
    CHECK(text.find("sphere chi=2 weight=3") != std::string::npos);
}
