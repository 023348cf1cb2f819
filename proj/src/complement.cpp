#include "nsurf/complement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "nsurf/realization.hpp"
#include "union_find.hpp"

namespace nsurf {

namespace {

struct TetPieces {
    std::array<int, 4> n{};
    int sep = -1;  // separation of the quad family, -1 if none
    int q = 0;
    std::array<std::vector<int>, 4> corner;  // corner[v][k], k >= 1 (index 0 unused)
    int central = -1, side_a = -1, side_b = -1;
    std::vector<int> quad_slab;  // quad_slab[j], j >= 1 (index 0 unused)
};

bool quad_cuts(const TetPieces& P, int face, int c) { return P.q > 0 && disc::mate(face, P.sep) == c; }

int arcs_at(const TetPieces& P, int face, int c) { return P.n[static_cast<std::size_t>(c)] + (quad_cuts(P, face, c) ? P.q : 0); }

// Region holding band k (between arc ranks k and k+1) at corner c of a face;
// band 0 is the vertex corner and has no region.
int band_region(const TetPieces& P, int face, int c, int k) {
    int nc = P.n[static_cast<std::size_t>(c)];
    if (k < nc) return P.corner[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
    NSURF_ASSERT(quad_cuts(P, face, c), "band beyond the arcs of a corner");
    bool zero = disc::on_zero_side(c, P.sep);
    if (k == nc) return zero ? P.side_a : P.side_b;
    int j = k - nc;
    return P.quad_slab[static_cast<std::size_t>(zero ? j : P.q - j)];
}

int central_region(const TetPieces& P, int face) {
    if (P.q == 0) return P.central;
    int lone = disc::mate(face, P.sep);
    return disc::on_zero_side(lone, P.sep) ? P.side_b : P.side_a;
}

std::string piece_name(const Region& r) {
    switch (r.piece) {
        case PieceKind::CornerSlab: return "corner(" + std::to_string(r.vertex) + "," + std::to_string(r.index) + ")";
        case PieceKind::Central: return "central";
        case PieceKind::SideA: return "sideA";
        case PieceKind::SideB: return "sideB";
        case PieceKind::QuadSlab: return "quadslab(" + std::to_string(r.index) + ")";
    }
    return "?";
}

// Kinds of the classes a region hosts.
std::vector<int> region_kinds(const Region& r, Mode mode) {
    switch (r.kind) {
        case RegionKind::Parallelity: return {r.frontier.front().kind};
        case RegionKind::TypeI: {
            std::vector<int> all(static_cast<std::size_t>(stride(mode)));
            for (int k = 0; k < stride(mode); ++k) all[static_cast<std::size_t>(k)] = k;
            return all;
        }
        case RegionKind::TypeII: {
            std::vector<int> ks;
            for (const auto& d : r.frontier) ks.push_back(d.kind);
            std::sort(ks.begin(), ks.end());
            return ks;
        }
    }
    return {};
}

}  // namespace

std::string region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::Parallelity: return "parallelity";
        case RegionKind::TypeI: return "typeI";
        case RegionKind::TypeII: return "typeII";
    }
    return "?";
}

RegionKind classify_region(const std::vector<DiscCopy>& frontier) {
    int tris = 0, quads = 0;
    std::set<int> kinds;
    for (const auto& d : frontier) {
        NSURF_ASSERT(!disc::is_octagon(d.kind), "octagon on a region frontier");
        ++(disc::is_triangle(d.kind) ? tris : quads);
        kinds.insert(d.kind);
    }
    if (frontier.size() == 2 && kinds.size() == 1) return RegionKind::Parallelity;
    if (tris == 4 && quads == 0 && kinds.size() == 4) return RegionKind::TypeI;
    if (tris == 2 && quads == 1 && kinds.size() == 3) return RegionKind::TypeII;
    throw InternalError("region frontier matches no region kind");
}

Complement cut(const Triangulation& tri, const NormalVector& sigma, bool truncate_vertices) {
    if (sigma.mode() != Mode::OneNormal) throw InvalidInput("cut: only 1-normal cutting surfaces are supported");
    if (auto bad = check_admissible(sigma, tri)) throw InvalidInput("cut: " + bad->message);
    Complement c(tri);
    c.cut_ = truncate_vertices ? sigma + vertex_links_sum(tri) : sigma;
    const int n = tri.size();

    std::vector<TetPieces> pieces(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        auto& P = pieces[static_cast<std::size_t>(t)];
        for (int v = 0; v < 4; ++v) {
            auto x = to_int64(c.cut_.at(t, v));
            if (x < 1)
                throw InvalidInput("cut: tet " + std::to_string(t) + " vertex " + std::to_string(v) +
                                   " has no triangle; add the vertex links or truncate");
            P.n[static_cast<std::size_t>(v)] = static_cast<int>(x);
        }
        for (int s = 0; s < 3; ++s)
            if (auto q = to_int64(c.cut_.at(t, disc::quad(s)))) {
                P.sep = s;
                P.q = static_cast<int>(q);
            }

        auto add = [&](PieceKind piece, int vertex, int index, std::vector<DiscCopy> frontier, std::vector<int> faces) {
            Region r;
            r.tet = t;
            r.piece = piece;
            r.vertex = vertex;
            r.index = index;
            r.frontier = std::move(frontier);
            r.kind = classify_region(r.frontier);
            r.faces = std::move(faces);
            c.regions_.push_back(std::move(r));
            return static_cast<int>(c.regions_.size()) - 1;
        };
        auto faces_at = [](int v) {
            std::vector<int> fs;
            for (int f = 0; f < 4; ++f)
                if (f != v) fs.push_back(f);
            return fs;
        };
        const std::vector<int> all_faces{0, 1, 2, 3};
        for (int v = 0; v < 4; ++v) {
            auto& slot = P.corner[static_cast<std::size_t>(v)];
            slot.assign(static_cast<std::size_t>(P.n[static_cast<std::size_t>(v)]), -1);
            for (int k = 1; k < P.n[static_cast<std::size_t>(v)]; ++k)
                slot[static_cast<std::size_t>(k)] =
                    add(PieceKind::CornerSlab, v, k, {{disc::triangle(v), k - 1}, {disc::triangle(v), k}}, faces_at(v));
        }
        auto outer = [&](int v) { return DiscCopy{disc::triangle(v), P.n[static_cast<std::size_t>(v)] - 1}; };
        if (P.q == 0) {
            P.central = add(PieceKind::Central, -1, 0, {outer(0), outer(1), outer(2), outer(3)}, all_faces);
        } else {
            int quad = disc::quad(P.sep);
            int a1 = disc::mate(0, P.sep);
            std::vector<int> far;
            for (int v = 1; v < 4; ++v)
                if (v != a1) far.push_back(v);
            P.side_a = add(PieceKind::SideA, -1, 0, {outer(0), outer(a1), {quad, 0}}, all_faces);
            P.quad_slab.assign(static_cast<std::size_t>(P.q), -1);
            for (int j = 1; j < P.q; ++j)
                P.quad_slab[static_cast<std::size_t>(j)] = add(PieceKind::QuadSlab, -1, j, {{quad, j - 1}, {quad, j}}, all_faces);
            P.side_b = add(PieceKind::SideB, -1, 0, {outer(far[0]), outer(far[1]), {quad, P.q - 1}}, all_faces);
        }
    }

    // Glue face pieces across every face class.
    const auto& sk = tri.skeleton();
    detail::UnionFind uf(c.regions_.size());
    std::map<std::pair<int, int>, int> met;  // (region, face) -> times met
    auto link = [&](int r1, int f1, int r2, int f2, const Perm& p) {
        Adjacency a;
        a.region[0] = r1;
        a.region[1] = r2;
        a.face[0] = f1;
        a.face[1] = f2;
        a.perm = p;
        c.adjacency_.push_back(a);
        uf.unite(static_cast<std::size_t>(r1), static_cast<std::size_t>(r2));
        ++met[{r1, f1}];
        ++met[{r2, f2}];
    };
    for (int fc = 0; fc < sk.face_count; ++fc) {
        Slot rep = sk.face_slots[static_cast<std::size_t>(fc)].front();
        const auto& g = tri.gluing(rep.tet, rep.index);
        const auto& P1 = pieces[static_cast<std::size_t>(rep.tet)];
        const auto& P2 = pieces[static_cast<std::size_t>(g.tet)];
        int f2 = g.perm[rep.index];
        for (int cc = 0; cc < 4; ++cc) {
            if (cc == rep.index) continue;
            int a = arcs_at(P1, rep.index, cc);
            NSURF_ASSERT(a == arcs_at(P2, f2, g.perm[cc]), "arc counts differ across a face");
            for (int k = 1; k < a; ++k)
                link(band_region(P1, rep.index, cc, k), rep.index, band_region(P2, f2, g.perm[cc], k), f2, g.perm);
        }
        link(central_region(P1, rep.index), rep.index, central_region(P2, f2), f2, g.perm);
    }
    for (int r = 0; r < static_cast<int>(c.regions_.size()); ++r)
        for (int f : c.regions_[static_cast<std::size_t>(r)].faces)
            NSURF_ASSERT((met[{r, f}] == 1), "region meets a face in other than one piece");

    // a type I region leaves only parallelity regions in its tet; at most two of type II
    std::vector<std::array<int, 3>> per_tet(static_cast<std::size_t>(n), {0, 0, 0});
    for (const auto& R : c.regions_) ++per_tet[static_cast<std::size_t>(R.tet)][static_cast<std::size_t>(R.kind)];
    for (int t = 0; t < n; ++t) {
        const auto& k = per_tet[static_cast<std::size_t>(t)];
        int type1 = k[static_cast<std::size_t>(RegionKind::TypeI)], type2 = k[static_cast<std::size_t>(RegionKind::TypeII)];
        NSURF_ASSERT(type1 <= 1 && type2 <= 2 && (type1 == 0 || type2 == 0),
                     "tet " + std::to_string(t) + " has " + std::to_string(type1) + " type I and " +
                         std::to_string(type2) + " type II regions");
    }

    int count = 0;
    auto labels = uf.labels(&count);
    c.components_.resize(static_cast<std::size_t>(count));
    for (auto& comp : c.components_) comp.boundary = NormalVector(Mode::OneNormal, n);
    for (int r = 0; r < static_cast<int>(c.regions_.size()); ++r) {
        auto& R = c.regions_[static_cast<std::size_t>(r)];
        R.component = labels[static_cast<std::size_t>(r)];
        auto& comp = c.components_[static_cast<std::size_t>(R.component)];
        comp.regions.push_back(r);
        switch (R.kind) {
            case RegionKind::Parallelity: ++comp.parallelity_regions; break;
            case RegionKind::TypeI: ++comp.type1_regions; break;
            case RegionKind::TypeII: ++comp.type2_regions; break;
        }
        for (const auto& d : R.frontier) comp.boundary.at(R.tet, d.kind) += 1;
    }
    for (auto& comp : c.components_) {
        comp.boundary_weight = total_weight(comp.boundary, tri);
        for (auto& sc : components(realize(comp.boundary, tri)).components)
            comp.boundary_components.push_back(std::move(sc.vector));
        NSURF_ASSERT(comp.class_count(Mode::TwoNormal) <= 10 * n, "m(N) exceeds 10t");
        NSURF_ASSERT(6 * Integer(comp.parallelity_regions) <= comp.boundary_weight * n, "m-bar(N) exceeds |dN| t / 6");
    }
    return c;
}

ReducedSystem reduced_matching_system(const Complement& c, int component, Mode mode) {
    if (component < 0 || component >= static_cast<int>(c.components().size()))
        throw InvalidInput("no complement component " + std::to_string(component));
    const auto& comp = c.components()[static_cast<std::size_t>(component)];
    if (comp.all_parallel())
        throw InvalidInput("component " + std::to_string(component) + " consists of parallelity regions only");
    const auto& regions = c.regions();

    ReducedSystem rs;
    rs.component = component;
    rs.mode = mode;
    std::map<std::pair<int, int>, int> class_of;  // (region, kind) -> class index
    std::map<int, std::vector<int>> classes_in;    // region -> class indices
    for (int r : comp.regions)
        for (int k : region_kinds(regions[static_cast<std::size_t>(r)], mode)) {
            class_of[{r, k}] = static_cast<int>(rs.classes.size());
            classes_in[r].push_back(static_cast<int>(rs.classes.size()));
            rs.classes.push_back({r, k});
        }
    const std::size_t nc = rs.classes.size();

    // Region matching equations, one per glued face piece and arc type.
    rs.full = IntegerMatrix(0, nc);
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> adj_of(regions.size());
    for (int ai = 0; ai < static_cast<int>(c.adjacencies().size()); ++ai) {
        const auto& a = c.adjacencies()[static_cast<std::size_t>(ai)];
        if (regions[static_cast<std::size_t>(a.region[0])].component != component) continue;
        adj_of[static_cast<std::size_t>(a.region[0])].push_back(ai);
        if (a.region[1] != a.region[0] || a.face[1] != a.face[0])
            adj_of[static_cast<std::size_t>(a.region[1])].push_back(ai);
        for (int corner = 0; corner < 4; ++corner) {
            if (corner == a.face[0]) continue;
            std::vector<int> row(nc, 0);
            for (int ci : classes_in[a.region[0]])
                row[static_cast<std::size_t>(ci)] += disc::arc_incidence(rs.classes[static_cast<std::size_t>(ci)].kind, a.face[0], corner);
            for (int ci : classes_in[a.region[1]])
                row[static_cast<std::size_t>(ci)] -=
                    disc::arc_incidence(rs.classes[static_cast<std::size_t>(ci)].kind, a.face[1], a.perm[corner]);
            if (std::all_of(row.begin(), row.end(), [](int x) { return x == 0; })) continue;
            if (seen.insert(row).second) rs.full.append_row(row);
        }
    }

    // Retained columns: classes of type I/II regions.
    rs.expression.assign(nc, {});
    for (std::size_t i = 0; i < nc; ++i)
        if (regions[static_cast<std::size_t>(rs.classes[i].region)].kind != RegionKind::Parallelity) {
            rs.expression[i] = {static_cast<int>(rs.retained.size())};
            rs.retained.push_back(static_cast<int>(i));
        }

    // Breadth-first elimination of parallelity classes.
    std::deque<int> queue;
    std::vector<bool> done(regions.size(), false);
    for (int r : comp.regions)
        if (regions[static_cast<std::size_t>(r)].kind != RegionKind::Parallelity) {
            queue.push_back(r);
            done[static_cast<std::size_t>(r)] = true;
        }
    while (!queue.empty()) {
        int r = queue.front();
        queue.pop_front();
        for (int ai : adj_of[static_cast<std::size_t>(r)]) {
            const auto& a = c.adjacencies()[static_cast<std::size_t>(ai)];
            for (int side = 0; side < 2; ++side) {
                if (a.region[side] != r) continue;
                int r2 = a.region[1 - side];
                if (done[static_cast<std::size_t>(r2)]) continue;
                Perm to_r2 = side == 0 ? a.perm : a.perm.inverse();
                int f2 = a.face[1 - side], fr = a.face[side];
                int cls2 = classes_in[r2].front();
                int k2 = rs.classes[static_cast<std::size_t>(cls2)].kind;
                int c2 = 0;
                while (c2 == f2 || !disc::arc_incidence(k2, f2, c2)) ++c2;
                int cr = to_r2.inverse()[c2];
                std::vector<int> expr;
                for (int ci : classes_in[r])
                    if (disc::arc_incidence(rs.classes[static_cast<std::size_t>(ci)].kind, fr, cr))
                        for (int col : rs.expression[static_cast<std::size_t>(ci)]) expr.push_back(col);
                NSURF_ASSERT(!expr.empty() && expr.size() <= 4, "elimination expression outside 1..4 terms");
                std::sort(expr.begin(), expr.end());
                rs.expression[static_cast<std::size_t>(cls2)] = std::move(expr);
                done[static_cast<std::size_t>(r2)] = true;
                queue.push_back(r2);
            }
        }
    }
    for (int r : comp.regions) NSURF_ASSERT(done[static_cast<std::size_t>(r)], "parallelity region not reached");

    // Substitute into every region equation.
    const std::size_t m = rs.retained.size();
    rs.matrix = IntegerMatrix(0, m);
    std::set<std::vector<int>> kept;
    for (std::size_t row = 0; row < rs.full.rows(); ++row) {
        std::vector<int> out(m, 0);
        for (std::size_t i = 0; i < nc; ++i)
            if (int v = rs.full(row, i))
                for (int col : rs.expression[i]) out[static_cast<std::size_t>(col)] += v;
        auto nz = std::find_if(out.begin(), out.end(), [](int x) { return x != 0; });
        if (nz == out.end()) continue;
        if (*nz < 0)
            for (auto& x : out) x = -x;
        if (kept.insert(out).second) rs.matrix.append_row(out);
    }

    for (int r : comp.regions) {
        if (regions[static_cast<std::size_t>(r)].kind != RegionKind::TypeI) continue;
        std::vector<int> group;
        for (int ci : classes_in[r]) {
            int k = rs.classes[static_cast<std::size_t>(ci)].kind;
            if (!disc::is_triangle(k)) group.push_back(rs.expression[static_cast<std::size_t>(ci)].front());
        }
        rs.exclusive_groups.push_back(std::move(group));
    }
    return rs;
}

std::vector<Integer> lift_solution(const ReducedSystem& rs, const std::vector<Integer>& x) {
    if (x.size() != rs.retained.size())
        throw InvalidInput("lift: expected " + std::to_string(rs.retained.size()) + " entries, got " + std::to_string(x.size()));
    for (const auto& v : x)
        if (v < 0) throw InvalidInput("lift: negative entry");
    if (!rs.matrix.annihilates(x)) throw InvalidInput("lift: vector does not solve the reduced system");
    for (const auto& g : rs.exclusive_groups) {
        int nonzero = 0;
        for (int col : g) nonzero += x[static_cast<std::size_t>(col)] != 0;
        if (nonzero > 1) throw InvalidInput("lift: two quad/octagon classes in one type I region");
    }
    std::vector<Integer> full(rs.classes.size(), 0);
    for (std::size_t i = 0; i < full.size(); ++i)
        for (int col : rs.expression[i]) full[i] += x[static_cast<std::size_t>(col)];
    NSURF_ASSERT(rs.full.annihilates(full), "lifted vector violates a region equation");
    return full;
}

NormalVector embed_back(const Complement& c, const ReducedSystem& rs, const std::vector<Integer>& full) {
    if (full.size() != rs.classes.size()) throw InvalidInput("embed_back: class vector has the wrong length");
    NormalVector v(rs.mode, c.triangulation().size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        const auto& cl = rs.classes[i];
        v.at(c.regions()[static_cast<std::size_t>(cl.region)].tet, cl.kind) += full[i];
    }
    return v;
}

NormalVector surfaces_in_parallel_component(const Complement& c, int component, Mode mode) {
    if (component < 0 || component >= static_cast<int>(c.components().size()))
        throw InvalidInput("no complement component " + std::to_string(component));
    const auto& comp = c.components()[static_cast<std::size_t>(component)];
    if (!comp.all_parallel())
        throw InvalidInput("component " + std::to_string(component) + " has type I or type II regions");
    NormalVector v(mode, c.triangulation().size());
    for (int r : comp.regions) {
        const auto& R = c.regions()[static_cast<std::size_t>(r)];
        v.at(R.tet, R.frontier.front().kind) += 1;
    }
    NSURF_ASSERT(total_weight(v, c.triangulation()) * 2 == comp.boundary_weight, "core weight is not half the boundary");
    return v;
}

FundamentalResult fundamental_surfaces(const Complement& c, int component, Mode mode, const HilbertOptions& opts) {
    const auto& tri = c.triangulation();
    const auto& comp = c.components().at(static_cast<std::size_t>(component));
    FundamentalResult out;
    out.boundary_weight = comp.boundary_weight;
    out.weight_bound = comp.boundary_weight * pow2(18 * static_cast<std::uint64_t>(tri.size()));
    auto add = [&](std::vector<Integer> classes, NormalVector v) {
        NSURF_ASSERT(is_admissible(v, tri), "fundamental surface is not admissible in M");
        FundamentalSurface f;
        f.weight = total_weight(v, tri);
        NSURF_ASSERT(f.weight < out.weight_bound, "fundamental surface exceeds the weight bound");
        f.classes = std::move(classes);
        f.vector = std::move(v);
        out.surfaces.push_back(std::move(f));
    };
    if (comp.all_parallel()) {
        out.parallel_component = true;
        add({}, surfaces_in_parallel_component(c, component, mode));
        return out;
    }
    auto rs = reduced_matching_system(c, component, mode);
    HilbertOptions o = opts;
    o.exclusive_groups = rs.exclusive_groups;
    auto hb = hilbert_basis(rs.matrix, o);
    out.columns = static_cast<int>(rs.retained.size());
    out.k2 = hb.k2;
    out.hilbert_bound = hb.bound;
    for (const auto& e : hb.elements) {
        auto full = lift_solution(rs, e);
        auto v = embed_back(c, rs, full);
        add(std::move(full), std::move(v));
    }
    std::stable_sort(out.surfaces.begin(), out.surfaces.end(),
                     [&](const auto& a, const auto& b) { return surface_less(a.vector, b.vector, tri); });
    return out;
}

std::string summary(const Complement& c, Mode mode) {
    const auto& tri = c.triangulation();
    std::ostringstream out;
    out << "cutting_weight=" << total_weight(c.cutting_vector(), tri) << " regions=" << c.regions().size()
        << " components=" << c.components().size() << " mode=" << mode_name(mode) << '\n';
    for (std::size_t i = 0; i < c.components().size(); ++i) {
        const auto& comp = c.components()[i];
        out << "component " << i << ": regions=" << comp.regions.size() << " parallelity=" << comp.parallelity_regions
            << " typeI=" << comp.type1_regions << " typeII=" << comp.type2_regions << " m=" << comp.class_count(mode)
            << " mbar=" << comp.parallelity_regions << " boundary_weight=" << comp.boundary_weight
            << " boundary_components=" << comp.boundary_components.size() << '\n';
        for (const auto& b : comp.boundary_components) {
            out << "  boundary weight=" << total_weight(b, tri) << " chi=" << euler_characteristic(b, tri) << " coords:";
            for (const auto& x : b.coords()) out << ' ' << x;
            out << '\n';
        }
        for (int r : comp.regions) {
            const auto& R = c.regions()[static_cast<std::size_t>(r)];
            out << "  region " << r << ": tet=" << R.tet << ' ' << piece_name(R) << ' ' << region_kind_name(R.kind) << '\n';
        }
    }
    return out.str();
}

}  // namespace nsurf
