#include "nsurf/realization.hpp"

#include <set>
#include <sstream>

#include "union_find.hpp"

namespace nsurf {

namespace {

constexpr std::size_t kDefaultMaxDiscs = 2'000'000;

// +1 when `corner` lies on the reference side of the disc: the cut-off
// vertex for a triangle, the zero side for a quad or octagon.
int reference_side(int kind, int corner) {
    if (disc::is_triangle(kind)) return 1;
    return disc::on_zero_side(corner, disc::separation(kind)) ? 1 : -1;
}

struct TetLayout {
    std::array<int, 4> tri{};
    int family = -1;  // kind of the nonzero quad/octagon, if any
    int q = 0;
    std::array<int, 10> base{};  // first disc id of each kind
};

}  // namespace

int RealizedSurface::point_id(int tet, int edge, int position) const {
    const auto& sk = tri_.skeleton();
    int e = sk.edge_of[static_cast<std::size_t>(tet)][static_cast<std::size_t>(edge)];
    int len = static_cast<int>(edge_positions(tet, edge).size());
    int along = sk.edge_sign[static_cast<std::size_t>(tet)][static_cast<std::size_t>(edge)] > 0 ? position
                                                                                              : len - 1 - position;
    return point_offset_[static_cast<std::size_t>(e)] + along;
}

RealizedSurface realize(const NormalVector& v, const Triangulation& tri) { return realize(v, tri, kDefaultMaxDiscs); }

RealizedSurface realize(const NormalVector& v, const Triangulation& tri, std::size_t max_discs) {
    if (auto bad = check_admissible(v, tri)) throw InvalidInput("cannot realize: " + bad->message);
    Integer total = 0;
    for (const auto& c : v.coords()) total += c;
    if (total > Integer(max_discs))
        throw ResourceLimit("realization needs " + to_string(total) + " discs (cap " + std::to_string(max_discs) + ")");

    RealizedSurface rs(tri);
    rs.vector_ = v;
    const int n = tri.size();
    const int width = stride(v.mode());
    const auto& sk = tri.skeleton();

    std::vector<TetLayout> layout(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        auto& L = layout[static_cast<std::size_t>(t)];
        for (int k = 0; k < width; ++k) {
            int count = static_cast<int>(to_int64(v.at(t, k)));
            L.base[static_cast<std::size_t>(k)] = static_cast<int>(rs.discs_.size());
            for (int i = 0; i < count; ++i) rs.discs_.push_back({DiscType{t, k}, i});
            if (disc::is_triangle(k))
                L.tri[static_cast<std::size_t>(k)] = count;
            else if (count > 0) {
                L.family = k;
                L.q = count;
            }
        }
    }

    // Arcs, bucketed per (tet, face, corner) by rank.
    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(n) * 16);
    auto bucket_of = [&](int t, int f, int c) -> std::vector<int>& {
        return bucket[static_cast<std::size_t>(t * 16 + f * 4 + c)];
    };
    auto rank_of = [&](int t, int k, int copy, int c) {
        const auto& L = layout[static_cast<std::size_t>(t)];
        int nc = L.tri[static_cast<std::size_t>(c)];
        if (disc::is_triangle(k)) return copy + 1;
        return nc + (disc::on_zero_side(c, disc::separation(k)) ? copy + 1 : L.q - copy);
    };
    for (int d = 0; d < static_cast<int>(rs.discs_.size()); ++d) {
        const auto& D = rs.discs_[static_cast<std::size_t>(d)];
        for (int f = 0; f < 4; ++f)
            for (int c = 0; c < 4; ++c) {
                if (c == f || !disc::arc_incidence(D.type.kind, f, c)) continue;
                int r = rank_of(D.type.tet, D.type.kind, D.copy, c);
                auto& b = bucket_of(D.type.tet, f, c);
                if (static_cast<int>(b.size()) < r) b.resize(static_cast<std::size_t>(r), -1);
                NSURF_ASSERT(b[static_cast<std::size_t>(r - 1)] < 0, "two arcs share a rank");
                b[static_cast<std::size_t>(r - 1)] = static_cast<int>(rs.arcs_.size());
                rs.arcs_.push_back({d, f, c, r, -1});
            }
    }
    for (const auto& b : bucket)
        for (int a : b) NSURF_ASSERT(a >= 0, "gap in arc ranks");

    // Crossing order along every edge slot, from the lower vertex.
    rs.edge_positions_.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const auto& L = layout[static_cast<std::size_t>(t)];
        for (int e = 0; e < 6; ++e) {
            auto [u, w] = kEdgeVertices[static_cast<std::size_t>(e)];
            auto& seq = rs.edge_positions_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
            for (int i = 0; i < L.tri[static_cast<std::size_t>(u)]; ++i) seq.push_back(L.base[static_cast<std::size_t>(u)] + i);
            if (L.family >= 0) {
                int s = disc::separation(L.family);
                int fb = L.base[static_cast<std::size_t>(L.family)];
                bool zu = disc::on_zero_side(u, s), zw = disc::on_zero_side(w, s);
                auto up = [&] { for (int i = 0; i < L.q; ++i) seq.push_back(fb + i); };
                auto down = [&] { for (int i = L.q - 1; i >= 0; --i) seq.push_back(fb + i); };
                if (zu != zw) {
                    zu ? up() : down();
                } else if (disc::is_octagon(L.family)) {
                    if (zu) { up(); down(); } else { down(); up(); }
                }
            }
            for (int i = L.tri[static_cast<std::size_t>(w)] - 1; i >= 0; --i)
                seq.push_back(L.base[static_cast<std::size_t>(w)] + i);
        }
    }

    // Crossing points: one block per edge class, sized by the edge weight.
    rs.point_offset_.assign(static_cast<std::size_t>(sk.edge_count), 0);
    for (int e = 0; e < sk.edge_count; ++e) {
        std::size_t len = 0;
        bool first = true;
        for (const auto& slot : sk.edge_slots[static_cast<std::size_t>(e)]) {
            std::size_t l = rs.edge_positions(slot.tet, slot.index).size();
            NSURF_ASSERT(first || l == len, "edge slots disagree on crossing count");
            len = l;
            first = false;
        }
        rs.point_offset_[static_cast<std::size_t>(e)] = rs.point_count_;
        rs.point_count_ += static_cast<int>(len);
    }

    // Each arc endpoint sits on edge {corner, x} at distance rank from corner.
    auto endpoint = [&](const RealizedSurface::Arc& A, int x, int* slot_edge, int* index) {
        int t = rs.discs_[static_cast<std::size_t>(A.disc)].type.tet;
        int e = edge_index(A.corner, x);
        int len = static_cast<int>(rs.edge_positions(t, e).size());
        *slot_edge = e;
        *index = A.corner < x ? A.rank - 1 : len - A.rank;
        NSURF_ASSERT(*index >= 0 && *index < len, "arc endpoint off the edge");
        NSURF_ASSERT(rs.edge_positions(t, e)[static_cast<std::size_t>(*index)] == A.disc,
                     "arc endpoint lands on another disc");
    };

    // Node = crossing position in an edge slot; every node must carry exactly
    // two arc endpoints of one disc, from the two faces through that edge.
    std::vector<int> node_base(static_cast<std::size_t>(n) * 6 + 1, 0);
    for (int t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e)
            node_base[static_cast<std::size_t>(t * 6 + e + 1)] =
                node_base[static_cast<std::size_t>(t * 6 + e)] + static_cast<int>(rs.edge_positions(t, e).size());
    const int node_count = node_base.back();
    auto node_of = [&](int t, int e, int idx) { return node_base[static_cast<std::size_t>(t * 6 + e)] + idx; };
    std::vector<int> node_hits(static_cast<std::size_t>(node_count), 0);
    for (const auto& A : rs.arcs_) {
        int t = rs.discs_[static_cast<std::size_t>(A.disc)].type.tet;
        for (int x = 0; x < 4; ++x) {
            if (x == A.face || x == A.corner) continue;
            int e, idx;
            endpoint(A, x, &e, &idx);
            ++node_hits[static_cast<std::size_t>(node_of(t, e, idx))];
        }
    }
    for (int h : node_hits) NSURF_ASSERT(h == 2, "crossing point not shared by exactly two arcs of its disc");

    // Glue arcs across faces, rank by rank.
    detail::UnionFind discs_uf(rs.discs_.size());
    detail::UnionFind nodes_uf(static_cast<std::size_t>(node_count));
    for (int fc = 0; fc < sk.face_count; ++fc) {
        Slot rep = sk.face_slots[static_cast<std::size_t>(fc)].front();
        const auto& g = tri.gluing(rep.tet, rep.index);
        int f2 = g.perm[rep.index];
        for (int c = 0; c < 4; ++c) {
            if (c == rep.index) continue;
            const auto& mine = bucket_of(rep.tet, rep.index, c);
            const auto& theirs = bucket_of(g.tet, f2, g.perm[c]);
            NSURF_ASSERT(mine.size() == theirs.size(), "arc counts differ across a face");
            for (std::size_t r = 0; r < mine.size(); ++r) {
                auto& A = rs.arcs_[static_cast<std::size_t>(mine[r])];
                auto& B = rs.arcs_[static_cast<std::size_t>(theirs[r])];
                A.partner = theirs[r];
                B.partner = mine[r];
                discs_uf.unite(static_cast<std::size_t>(A.disc), static_cast<std::size_t>(B.disc));
                for (int x = 0; x < 4; ++x) {
                    if (x == rep.index || x == c) continue;
                    int ea, ia, eb, ib;
                    endpoint(A, x, &ea, &ia);
                    endpoint(B, g.perm[x], &eb, &ib);
                    NSURF_ASSERT(rs.point_id(rep.tet, ea, ia) == rs.point_id(g.tet, eb, ib),
                                 "glued arc endpoints disagree");
                    nodes_uf.unite(static_cast<std::size_t>(node_of(rep.tet, ea, ia)),
                                   static_cast<std::size_t>(node_of(g.tet, eb, ib)));
                }
            }
        }
    }
    for (const auto& A : rs.arcs_) NSURF_ASSERT(A.partner >= 0, "unglued arc");

    // Link of every crossing point closes into a single cycle.
    int node_classes = 0;
    nodes_uf.labels(&node_classes);
    NSURF_ASSERT(node_classes == rs.point_count_, "a crossing point has a disconnected disc link");

    rs.component_of_ = discs_uf.labels(&rs.component_count_);
    return rs;
}

std::string kind_name(SurfaceKind kind, const Integer& euler) {
    switch (kind) {
        case SurfaceKind::Sphere: return "sphere";
        case SurfaceKind::ProjectivePlane: return "projective plane";
        case SurfaceKind::Torus: return "torus";
        case SurfaceKind::KleinBottle: return "Klein bottle";
        case SurfaceKind::Other: break;
    }
    return "surface(chi=" + to_string(euler) + ")";
}

ComponentReport components(const RealizedSurface& rs) {
    const auto& tri = rs.triangulation();
    const auto& discs = rs.discs();
    const auto& arcs = rs.arcs();
    const int count = rs.component_count();

    ComponentReport report;
    report.ambient_orientable = is_orientable(tri);

    std::vector<std::vector<int>> disc_arcs(discs.size());
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a)
        disc_arcs[static_cast<std::size_t>(arcs[static_cast<std::size_t>(a)].disc)].push_back(a);

    // tau: transverse direction relative to the reference side; omega:
    // ambient orientation carried along the surface.
    std::vector<int> tau(discs.size(), 0), omega(discs.size(), 0);
    std::vector<bool> two_sided(static_cast<std::size_t>(count), true), orientable(static_cast<std::size_t>(count), true);
    for (std::size_t start = 0; start < discs.size(); ++start) {
        if (tau[start]) continue;
        int comp = rs.component_of()[start];
        tau[start] = omega[start] = 1;
        std::vector<int> stack{static_cast<int>(start)};
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            const auto& D = discs[static_cast<std::size_t>(d)];
            for (int a : disc_arcs[static_cast<std::size_t>(d)]) {
                const auto& A = arcs[static_cast<std::size_t>(a)];
                const auto& B = arcs[static_cast<std::size_t>(A.partner)];
                const auto& D2 = discs[static_cast<std::size_t>(B.disc)];
                const auto& g = tri.gluing(D.type.tet, A.face);
                int t2 = tau[static_cast<std::size_t>(d)] * reference_side(D.type.kind, A.corner) *
                         reference_side(D2.type.kind, B.corner);
                int o2 = omega[static_cast<std::size_t>(d)] * (g.perm.is_odd() ? 1 : -1);
                auto& tb = tau[static_cast<std::size_t>(B.disc)];
                auto& ob = omega[static_cast<std::size_t>(B.disc)];
                if (!tb) {
                    tb = t2;
                    ob = o2;
                    stack.push_back(B.disc);
                } else {
                    if (tb != t2) two_sided[static_cast<std::size_t>(comp)] = false;
                    if (tb * ob != t2 * o2) orientable[static_cast<std::size_t>(comp)] = false;
                }
            }
        }
    }

    const auto mode = rs.vector().mode();
    std::vector<NormalVector> vecs(static_cast<std::size_t>(count), NormalVector(mode, tri.size()));
    std::vector<Integer> faces(static_cast<std::size_t>(count)), edges(static_cast<std::size_t>(count));
    std::vector<std::set<int>> points(static_cast<std::size_t>(count));
    for (std::size_t d = 0; d < discs.size(); ++d) {
        int comp = rs.component_of()[d];
        const auto& D = discs[d];
        vecs[static_cast<std::size_t>(comp)].at(D.type.tet, D.type.kind) += 1;
        faces[static_cast<std::size_t>(comp)] += 1;
    }
    for (const auto& A : arcs) edges[static_cast<std::size_t>(rs.component_of()[static_cast<std::size_t>(A.disc)])] += 1;
    for (int t = 0; t < tri.size(); ++t)
        for (int e = 0; e < 6; ++e) {
            const auto& seq = rs.edge_positions(t, e);
            for (std::size_t p = 0; p < seq.size(); ++p)
                points[static_cast<std::size_t>(rs.component_of()[static_cast<std::size_t>(seq[p])])].insert(
                    rs.point_id(t, e, static_cast<int>(p)));
        }

    for (int c = 0; c < count; ++c) {
        auto i = static_cast<std::size_t>(c);
        SurfaceComponent sc;
        sc.vector = vecs[i];
        sc.weight = total_weight(sc.vector, tri);
        sc.euler = euler_characteristic(sc.vector, tri);
        sc.euler_cells = Integer(points[i].size()) - edges[i] / 2 + faces[i];
        sc.octagons = octagon_count(sc.vector);
        sc.two_sided = two_sided[i];
        sc.orientable = orientable[i];
        if (sc.euler == 2)
            sc.kind = SurfaceKind::Sphere;
        else if (sc.euler == 1)
            sc.kind = SurfaceKind::ProjectivePlane;
        else if (sc.euler == 0)
            sc.kind = sc.orientable ? SurfaceKind::Torus : SurfaceKind::KleinBottle;
        report.components.push_back(std::move(sc));
    }
    return report;
}

Integer octagon_count(const NormalVector& v) {
    Integer total = 0;
    if (v.mode() != Mode::TwoNormal) return total;
    for (int t = 0; t < v.tets(); ++t)
        for (int s = 0; s < 3; ++s) total += v.at(t, disc::octagon(s));
    return total;
}

std::vector<std::pair<int, int>> duplicate_two_sided_components(const ComponentReport& report) {
    std::vector<std::pair<int, int>> out;
    const auto& cs = report.components;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (cs[i].two_sided && cs[j].two_sided && cs[i].vector == cs[j].vector)
                out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

std::string serialize(const ComponentReport& report) {
    std::ostringstream out;
    out << "components=" << report.components.size() << " ambient_orientable=" << (report.ambient_orientable ? "yes" : "no")
        << '\n';
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        const auto& c = report.components[i];
        out << "component " << i << ": " << kind_name(c.kind, c.euler) << " chi=" << c.euler << " weight=" << c.weight
            << " octagons=" << c.octagons << " orientable=" << (c.orientable ? "yes" : "no")
            << " two_sided=" << (c.two_sided ? "yes" : "no") << "\n  coords:";
        for (const auto& x : c.vector.coords()) out << ' ' << x;
        out << '\n';
    }
    return out.str();
}

}  // namespace nsurf
