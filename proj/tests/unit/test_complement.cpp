#include <doctest.h>

#include <algorithm>
#include <set>

#include "census.hpp"
#include "nsurf/complement.hpp"
#include "nsurf/enumerate.hpp"
#include "nsurf/realization.hpp"
#include "oracles.hpp"

using namespace nsurf;

namespace {

std::vector<std::vector<int>> normalized_rows(const IntegerMatrix& A) {
    std::set<std::vector<int>> rows;
    for (std::size_t r = 0; r < A.rows(); ++r) {
        auto row = A.row(r);
        auto nz = std::find_if(row.begin(), row.end(), [](int x) { return x != 0; });
        if (nz == row.end()) continue;
        if (*nz < 0)
            for (auto& x : row) x = -x;
        rows.insert(row);
    }
    return {rows.begin(), rows.end()};
}

NormalVector global_fundamental(const Triangulation& tri, std::size_t i) {
    auto c = cut(tri, NormalVector(Mode::OneNormal, tri.size()), true);
    return fundamental_surfaces(c, 0, Mode::OneNormal).surfaces.at(i).vector;
}

std::multiset<std::vector<Integer>> component_vectors(const NormalVector& v, const Triangulation& tri) {
    std::multiset<std::vector<Integer>> out;
    for (const auto& comp : components(realize(v, tri)).components) out.insert(comp.vector.coords());
    return out;
}

// F and the cutting surface X are disjoint when the canonical realization of
// F + X splits into the components of X and those of F.
bool disjoint_from(const NormalVector& f, const NormalVector& x, const Triangulation& tri) {
    auto xx = f.mode() == Mode::TwoNormal ? x.promoted() : x;
    auto sum = f + xx;
    if (!is_admissible(sum, tri)) return false;
    auto expect = component_vectors(xx, tri);
    for (const auto& v : component_vectors(f, tri)) expect.insert(v);
    return component_vectors(sum, tri) == expect;
}

void check_invariants(const Complement& c) {
    const auto& tri = c.triangulation();
    for (const auto& comp : c.components()) {
        CHECK(comp.class_count(Mode::TwoNormal) <= 10 * tri.size());
        CHECK(Integer(6 * comp.parallelity_regions) <= comp.boundary_weight * tri.size());
    }
    std::vector<int> type1(static_cast<std::size_t>(tri.size()), 0), type2(static_cast<std::size_t>(tri.size()), 0);
    for (const auto& r : c.regions()) {
        if (r.kind == RegionKind::TypeI) ++type1[static_cast<std::size_t>(r.tet)];
        if (r.kind == RegionKind::TypeII) ++type2[static_cast<std::size_t>(r.tet)];
    }
    for (int t = 0; t < tri.size(); ++t) {
        CHECK(type1[static_cast<std::size_t>(t)] <= 1);
        CHECK(type2[static_cast<std::size_t>(t)] <= 2);
        CHECK(type1[static_cast<std::size_t>(t)] + type2[static_cast<std::size_t>(t)] >= 1);
        if (type1[static_cast<std::size_t>(t)]) CHECK(type2[static_cast<std::size_t>(t)] == 0);
    }
}

}  // namespace

TEST_CASE("classify_region patterns") {
    CHECK(classify_region({{0, 0}, {0, 1}}) == RegionKind::Parallelity);
    CHECK(classify_region({{5, 2}, {5, 3}}) == RegionKind::Parallelity);
    CHECK(classify_region({{0, 0}, {1, 0}, {2, 0}, {3, 0}}) == RegionKind::TypeI);
    CHECK(classify_region({{0, 0}, {1, 0}, {4, 0}}) == RegionKind::TypeII);
    CHECK_THROWS_AS(classify_region({{0, 0}, {1, 0}}), InternalError);
    CHECK_THROWS_AS(classify_region({{0, 0}, {7, 0}}), InternalError);
}

TEST_CASE("truncated 4-simplex boundary is one type I component") {
    auto tri = census::load("boundary_4simplex");
    auto c = cut(tri, NormalVector(Mode::OneNormal, 5), true);
    REQUIRE(c.components().size() == 1);
    CHECK(c.regions().size() == 5);
    for (const auto& r : c.regions()) CHECK(r.kind == RegionKind::TypeI);
    const auto& comp = c.components()[0];
    CHECK(comp.boundary_components.size() == 5);
    CHECK(comp.boundary_weight == 20);
    CHECK(comp.class_count(Mode::TwoNormal) == 50);
    CHECK(comp.parallelity_regions == 0);
    check_invariants(c);

    for (Mode mode : {Mode::OneNormal, Mode::TwoNormal}) {
        auto rs = reduced_matching_system(c, 0, mode);
        CHECK(rs.retained.size() == static_cast<std::size_t>(5 * stride(mode)));
        // no parallelity regions: the reduced system is the matching system
        CHECK(normalized_rows(rs.matrix) == normalized_rows(matching_system(tri, mode)));
        // class order is tet-major, kind-minor, so embed_back is the identity
        auto link = vertex_link(tri, 2, mode);
        auto full = lift_solution(rs, link.coords());
        CHECK(embed_back(c, rs, full) == link);
        auto zero = lift_solution(rs, std::vector<Integer>(rs.retained.size(), 0));
        CHECK(embed_back(c, rs, zero).is_zero());
    }
}

TEST_CASE("fundamental surfaces of the truncated manifold match the global basis") {
    auto tri = census::load("boundary_4simplex");
    auto c = cut(tri, NormalVector(Mode::OneNormal, 5), true);
    for (Mode mode : {Mode::OneNormal, Mode::TwoNormal}) {
        auto fs = fundamental_surfaces(c, 0, mode);
        HilbertOptions opts;
        for (int t = 0; t < 5; ++t) {
            opts.exclusive_groups.emplace_back();
            for (int k = 4; k < stride(mode); ++k) opts.exclusive_groups.back().push_back(t * stride(mode) + k);
        }
        auto hb = hilbert_basis(matching_system(tri, mode), opts);
        std::set<std::vector<Integer>> a, b(hb.elements.begin(), hb.elements.end());
        for (const auto& f : fs.surfaces) a.insert(f.vector.coords());
        CHECK(a == b);
        for (int v = 0; v < 5; ++v) CHECK(a.count(vertex_link(tri, v, mode).coords()) == 1);
        CHECK(fs.surfaces.size() == (mode == Mode::OneNormal ? 15u : 70u));
    }
}

TEST_CASE("cutting along a vertex link leaves a product shell") {
    auto tri = census::load("boundary_4simplex");
    auto link = vertex_link(tri, 1);
    auto c = cut(tri, link, true);
    REQUIRE(c.components().size() == 2);
    check_invariants(c);
    int shell = c.components()[0].all_parallel() ? 0 : 1;
    const auto& comp = c.components()[static_cast<std::size_t>(shell)];
    CHECK(comp.all_parallel());
    CHECK(comp.boundary_weight == 8);
    CHECK(comp.boundary_components.size() == 2);
    CHECK(surfaces_in_parallel_component(c, shell) == link);
    auto fs = fundamental_surfaces(c, shell, Mode::TwoNormal);
    REQUIRE(fs.surfaces.size() == 1);
    CHECK(fs.parallel_component);
    CHECK(fs.surfaces[0].vector == link.promoted());
    CHECK(fs.surfaces[0].weight * 2 == comp.boundary_weight);
    CHECK_THROWS_AS(reduced_matching_system(c, shell, Mode::OneNormal), InvalidInput);
    CHECK_THROWS_AS(surfaces_in_parallel_component(c, 1 - shell), InvalidInput);

    // two more copies: two nested shells
    auto c3 = cut(tri, link * 2, true);
    CHECK(c3.components().size() == 3);
    int shells = 0;
    for (const auto& k : c3.components()) shells += k.all_parallel();
    CHECK(shells == 2);
}

TEST_CASE("quad sphere cut produces type II regions") {
    auto tri = census::load("boundary_4simplex");
    auto s = global_fundamental(tri, 5);
    REQUIRE(total_weight(s, tri) == 6);
    auto c = cut(tri, s, true);
    REQUIRE(c.components().size() == 2);
    check_invariants(c);
    int type2 = 0;
    for (const auto& r : c.regions()) type2 += r.kind == RegionKind::TypeII;
    CHECK(type2 == 6);
    for (int i = 0; i < 2; ++i) {
        const auto& comp = c.components()[static_cast<std::size_t>(i)];
        auto fs = fundamental_surfaces(c, i, Mode::OneNormal);
        std::set<std::vector<Integer>> found;
        for (const auto& f : fs.surfaces) {
            found.insert(f.vector.coords());
            CHECK(disjoint_from(f.vector, c.cutting_vector(), tri));
        }
        // boundary spheres are fundamental in the component (parallel copies)
        for (const auto& b : comp.boundary_components) CHECK(found.count(b.coords()) == 1);
    }
}

TEST_CASE("every small surface disjoint from the cut is generated by one component") {
    struct Case {
        const char* name;
        std::size_t fundamental;  // index of the cutting surface among the global fundamentals
        int mult;
        Mode mode;
        int cap;
    };
    for (auto k : {Case{"boundary_4simplex", 5, 1, Mode::OneNormal, 14}, Case{"boundary_4simplex", 9, 1, Mode::TwoNormal, 14},
                   Case{"s3_double", 4, 2, Mode::TwoNormal, 16}, Case{"rp3", 0, 1, Mode::TwoNormal, 14},
                   Case{"quaternionic", 1, 1, Mode::OneNormal, 16}}) {
        CAPTURE(k.name);
        auto tri = census::load(k.name);
        auto sigma = global_fundamental(tri, k.fundamental) * k.mult;
        auto c = cut(tri, sigma, true);
        check_invariants(c);
        std::vector<std::vector<oracle::Vec>> gens(c.components().size());
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (const auto& f : fundamental_surfaces(c, static_cast<int>(i), k.mode).surfaces)
                gens[i].push_back(oracle::to_vec(f.vector.coords()));
        EnumerateOptions opts;
        opts.mode = k.mode;
        opts.weight_cap = k.cap;
        int tested = 0;
        for (const auto& v : enumerate_admissible(tri, opts)) {
            if (components(realize(v, tri)).components.size() != 1) continue;
            if (!disjoint_from(v, c.cutting_vector(), tri)) continue;
            ++tested;
            auto x = oracle::to_vec(v.coords());
            bool generated = std::any_of(gens.begin(), gens.end(), [&](const auto& g) { return oracle::in_monoid(x, g); });
            CAPTURE(serialize(v));
            CHECK(generated);
        }
        CHECK(tested > 0);
    }
}

TEST_CASE("lift agrees with the unreduced region system") {
    auto tri = census::load("boundary_4simplex");
    auto c = cut(tri, global_fundamental(tri, 5), true);
    int mixed = 0;
    for (int i = 0; i < static_cast<int>(c.components().size()); ++i) {
        const auto& comp = c.components()[static_cast<std::size_t>(i)];
        auto rs = reduced_matching_system(c, i, Mode::TwoNormal);
        for (const auto& e : rs.expression) CHECK((e.size() >= 1 && e.size() <= 4));
        if (comp.parallelity_regions == 0 || rs.classes.size() > 12) continue;
        ++mixed;
        // every small solution of the full region system restricts to a
        // solution of the reduced one and lifts back to itself
        auto sols = oracle::solutions_in_box(rs.full, 2);
        REQUIRE(!sols.empty());
        for (const auto& y : sols) {
            std::vector<Integer> restricted;
            for (int ci : rs.retained) restricted.push_back(y[static_cast<std::size_t>(ci)]);
            CHECK(rs.matrix.annihilates(restricted));
            auto lifted = lift_solution(rs, restricted);
            CHECK(oracle::to_vec(lifted) == y);
        }
        // and every small solution of the reduced system lifts to one of the full
        for (const auto& x : oracle::solutions_in_box(rs.matrix, 2)) {
            std::vector<Integer> xi(x.begin(), x.end());
            CHECK(rs.full.annihilates(lift_solution(rs, xi)));
        }
    }
    CHECK(mixed == 1);
}

TEST_CASE("two-tetrahedron complements stay within 20 columns") {
    auto tri = census::load("s3_double");
    for (std::size_t i = 0; i < 7; ++i)
        for (int mult : {1, 2}) {
            auto c = cut(tri, global_fundamental(tri, i) * mult, true);
            check_invariants(c);
            for (int k = 0; k < static_cast<int>(c.components().size()); ++k) {
                if (c.components()[static_cast<std::size_t>(k)].all_parallel()) continue;
                CHECK(reduced_matching_system(c, k, Mode::TwoNormal).retained.size() <= 20);
            }
        }
}

TEST_CASE("twisted I-bundle around a projective plane") {
    auto tri = census::load("rp3");
    auto c0 = cut(tri, NormalVector(Mode::OneNormal, 2), true);
    NormalVector p;
    for (const auto& f : fundamental_surfaces(c0, 0, Mode::OneNormal).surfaces)
        if (euler_characteristic(f.vector, tri) == 1) {
            p = f.vector;
            break;
        }
    REQUIRE(p.size() > 0);
    auto c = cut(tri, p * 2, true);
    check_invariants(c);
    int bundles = 0;
    for (int i = 0; i < static_cast<int>(c.components().size()); ++i) {
        const auto& comp = c.components()[static_cast<std::size_t>(i)];
        if (!comp.all_parallel()) continue;
        if (surfaces_in_parallel_component(c, i) != p) continue;
        ++bundles;
        CHECK(comp.boundary_components.size() == 1);
        CHECK(comp.boundary_components[0] == p * 2);
    }
    CHECK(bundles == 1);
}

TEST_CASE("cut preconditions") {
    auto tri = census::load("boundary_4simplex");
    CHECK_THROWS_AS(cut(tri, NormalVector(Mode::OneNormal, 5), false), InvalidInput);
    CHECK_THROWS_AS(cut(tri, NormalVector(Mode::TwoNormal, 5), true), InvalidInput);
    NormalVector bad(Mode::OneNormal, 5);
    bad.at(0, 4) = 1;
    CHECK_THROWS_AS(cut(tri, bad, true), InvalidInput);
    // vertex links supplied explicitly instead of truncating
    auto c = cut(tri, vertex_links_sum(tri), false);
    CHECK(c.components().size() == 1);
    CHECK(summary(c).find("typeI=5") != std::string::npos);
}
