#include "nsurf/triangulation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

#include "nsurf/errors.hpp"
#include "union_find.hpp"

namespace nsurf {

std::optional<Perm> Perm::from_string(std::string_view s) {
    if (s.size() != 4) return std::nullopt;
    std::array<int, 4> img{};
    std::array<bool, 4> seen{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (s[i] < '0' || s[i] > '3') return std::nullopt;
        img[i] = s[i] - '0';
        if (seen[static_cast<std::size_t>(img[i])]) return std::nullopt;
        seen[static_cast<std::size_t>(img[i])] = true;
    }
    return Perm(img[0], img[1], img[2], img[3]);
}

Perm Perm::inverse() const {
    std::array<int, 4> inv{};
    for (int v = 0; v < 4; ++v) inv[static_cast<std::size_t>((*this)[v])] = v;
    return Perm(inv[0], inv[1], inv[2], inv[3]);
}

Perm Perm::operator*(const Perm& other) const {
    return Perm((*this)[other[0]], (*this)[other[1]], (*this)[other[2]], (*this)[other[3]]);
}

bool Perm::is_odd() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if ((*this)[i] > (*this)[j]) ++inversions;
    return inversions % 2 == 1;
}

std::string Perm::str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + (*this)[i]);
    return s;
}

int edge_index(int u, int w) {
    if (u > w) std::swap(u, w);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVertices[static_cast<std::size_t>(e)][0] == u && kEdgeVertices[static_cast<std::size_t>(e)][1] == w)
            return e;
    throw InvalidInput("no edge between vertices " + std::to_string(u) + " and " + std::to_string(w));
}

Triangulation::Triangulation(std::vector<std::array<FaceGluing, 4>> gluings) : gluings_(std::move(gluings)) {
    const int n = size();
    if (n == 0) throw InvalidInput("triangulation has no tetrahedra");
    std::map<Slot, std::vector<Slot>> claims;
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = gluing(t, f);
            if (g.tet < 0 || g.tet >= n)
                throw InvalidInput("tetrahedron index " + std::to_string(g.tet) + " out of range in gluing of tet " +
                                   std::to_string(t) + " face " + std::to_string(f));
            Slot target{g.tet, g.perm[f]};
            if (target == Slot{t, f})
                throw InvalidInput("face glued to itself: tet " + std::to_string(t) + " face " + std::to_string(f));
            claims[target].push_back(Slot{t, f});
        }
    }
    for (const auto& [target, sources] : claims) {
        if (sources.size() > 1)
            throw InvalidInput("face reglued: tet " + std::to_string(target.tet) + " face " +
                               std::to_string(target.index) + " is the target of " + std::to_string(sources.size()) +
                               " gluings");
    }
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = gluing(t, f);
            const FaceGluing& back = gluing(g.tet, g.perm[f]);
            if (back.tet != t || !(back.perm == g.perm.inverse()))
                throw InvalidInput("gluing of tet " + std::to_string(t) + " face " + std::to_string(f) +
                                   " is not reciprocated by tet " + std::to_string(g.tet) + " face " +
                                   std::to_string(g.perm[f]));
        }
    }
    skeleton_ = std::make_shared<const SkeletonIndex>(build_skeleton(*this));
}

namespace {

class LineScanner {
public:
    LineScanner(std::string_view line, int line_no) : s_(line), line_(line_no) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column()); }
    int column() const { return static_cast<int>(pos_) + 1; }
    bool at_end() const { return pos_ >= s_.size(); }

    // Requires at least one space, then skips all spaces.
    void spaces() {
        if (at_end() || s_[pos_] != ' ') fail("expected a space");
        while (!at_end() && s_[pos_] == ' ') ++pos_;
    }
    void skip_spaces() {
        while (!at_end() && s_[pos_] == ' ') ++pos_;
    }
    void expect(std::string_view word) {
        if (s_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
        pos_ += word.size();
    }
    bool peek(char c) const { return !at_end() && s_[pos_] == c; }
    int number() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer");
        int value = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (ec != std::errc()) {
            pos_ = start;
            fail("integer out of range");
        }
        return value;
    }
    std::string_view take_until(char c) {
        std::size_t start = pos_;
        while (!at_end() && s_[pos_] != c) ++pos_;
        return s_.substr(start, pos_ - start);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
};

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
    std::map<int, std::array<FaceGluing, 4>> rows;
    std::map<int, std::array<int, 4>> unglued_cols;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        start = end + 1;

        for (std::size_t i = 0; i < line.size(); ++i)
            if (static_cast<unsigned char>(line[i]) > 127)
                throw ParseError("non-ASCII character", line_no, static_cast<int>(i) + 1);
        std::size_t first = line.find_first_not_of(' ');
        if (first == std::string_view::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }

        LineScanner sc(line, line_no);
        sc.skip_spaces();
        sc.expect("tet");
        sc.spaces();
        int col_index = sc.column();
        int tet = sc.number();
        sc.expect(":");
        if (rows.count(tet)) throw ParseError("tetrahedron " + std::to_string(tet) + " listed twice", line_no, col_index);
        std::array<FaceGluing, 4> row{};
        std::array<int, 4> unglued{-1, -1, -1, -1};
        for (int f = 0; f < 4; ++f) {
            sc.spaces();
            if (sc.peek('-')) {
                unglued[static_cast<std::size_t>(f)] = sc.column();
                sc.expect("-");
                continue;
            }
            row[static_cast<std::size_t>(f)].tet = sc.number();
            sc.expect("(");
            int perm_col = sc.column();
            std::string_view perm = sc.take_until(')');
            auto p = Perm::from_string(perm);
            if (!p) throw ParseError("permutation \"" + std::string(perm) + "\" is not a bijection", line_no, perm_col);
            row[static_cast<std::size_t>(f)].perm = *p;
            sc.expect(")");
        }
        sc.skip_spaces();
        if (!sc.at_end()) sc.fail("unexpected trailing text");
        rows[tet] = row;
        unglued_cols[tet] = unglued;
        if (end == text.size()) break;
    }
    if (rows.empty()) throw InvalidInput("no tetrahedra in gluing table");
    const int n = static_cast<int>(rows.size());
    for (int t = 0; t < n; ++t)
        if (!rows.count(t)) throw InvalidInput("tetrahedron " + std::to_string(t) + " missing from gluing table");
    if (rows.rbegin()->first != n - 1)
        throw InvalidInput("tetrahedron index " + std::to_string(rows.rbegin()->first) + " out of range");
    for (const auto& [t, cols] : unglued_cols)
        for (int f = 0; f < 4; ++f)
            if (cols[static_cast<std::size_t>(f)] >= 0)
                throw InvalidInput("face unglued: tet " + std::to_string(t) + " face " + std::to_string(f) +
                                   " (closed triangulations only)");

    std::vector<std::array<FaceGluing, 4>> gluings;
    gluings.reserve(rows.size());
    for (auto& [t, row] : rows) gluings.push_back(row);
    return Triangulation(std::move(gluings));
}

std::string serialize(const Triangulation& tri) {
    std::ostringstream out;
    for (int t = 0; t < tri.size(); ++t) {
        out << "tet " << t << ":";
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tri.gluing(t, f);
            out << ' ' << g.tet << '(' << g.perm.str() << ')';
        }
        out << '\n';
    }
    return out.str();
}

SkeletonIndex build_skeleton(const Triangulation& tri) {
    const int n = tri.size();
    const auto nz = static_cast<std::size_t>(n);
    SkeletonIndex sk;

    detail::UnionFind vertices(4 * nz);
    detail::UnionFind edges(6 * nz);
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = tri.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                if (v != f)
                    vertices.unite(static_cast<std::size_t>(4 * t + v), static_cast<std::size_t>(4 * g.tet + g.perm[v]));
            for (int e = 0; e < 6; ++e) {
                auto [u, w] = kEdgeVertices[static_cast<std::size_t>(e)];
                if (u == f || w == f) continue;
                edges.unite(static_cast<std::size_t>(6 * t + e),
                            static_cast<std::size_t>(6 * g.tet + edge_index(g.perm[u], g.perm[w])));
            }
        }
    }
    std::vector<int> vlabel = vertices.labels(&sk.vertex_count);
    std::vector<int> elabel = edges.labels(&sk.edge_count);

    sk.vertex_of.resize(nz);
    sk.edge_of.resize(nz);
    sk.face_of.assign(nz, {-1, -1, -1, -1});
    sk.edge_sign.assign(nz, {0, 0, 0, 0, 0, 0});
    sk.vertex_slots.resize(static_cast<std::size_t>(sk.vertex_count));
    sk.edge_slots.resize(static_cast<std::size_t>(sk.edge_count));
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) {
            int c = vlabel[static_cast<std::size_t>(4 * t + v)];
            sk.vertex_of[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)] = c;
            sk.vertex_slots[static_cast<std::size_t>(c)].push_back({t, v});
        }
        for (int e = 0; e < 6; ++e) {
            int c = elabel[static_cast<std::size_t>(6 * t + e)];
            sk.edge_of[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)] = c;
            sk.edge_slots[static_cast<std::size_t>(c)].push_back({t, e});
        }
    }
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            if (sk.face_of[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] >= 0) continue;
            const FaceGluing& g = tri.gluing(t, f);
            int c = sk.face_count++;
            sk.face_of[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] = c;
            sk.face_of[static_cast<std::size_t>(g.tet)][static_cast<std::size_t>(g.perm[f])] = c;
            std::vector<Slot> slots{{t, f}, {g.tet, g.perm[f]}};
            std::sort(slots.begin(), slots.end());
            sk.face_slots.push_back(slots);
        }
    }
    for (const auto& slots : sk.edge_slots) sk.edge_degree.push_back(static_cast<int>(slots.size()));

    // Orient every edge slot relative to its class representative.
    for (const auto& slots : sk.edge_slots) {
        const Slot rep = slots.front();
        sk.edge_sign[static_cast<std::size_t>(rep.tet)][static_cast<std::size_t>(rep.index)] = 1;
        std::deque<Slot> queue{rep};
        while (!queue.empty()) {
            Slot cur = queue.front();
            queue.pop_front();
            int sign = sk.edge_sign[static_cast<std::size_t>(cur.tet)][static_cast<std::size_t>(cur.index)];
            auto [u, w] = kEdgeVertices[static_cast<std::size_t>(cur.index)];
            for (int f = 0; f < 4; ++f) {
                if (f == u || f == w) continue;
                const FaceGluing& g = tri.gluing(cur.tet, f);
                int pu = g.perm[u], pw = g.perm[w];
                Slot next{g.tet, edge_index(pu, pw)};
                int next_sign = sign * (pu < pw ? 1 : -1);
                int& stored = sk.edge_sign[static_cast<std::size_t>(next.tet)][static_cast<std::size_t>(next.index)];
                if (stored == 0) {
                    stored = next_sign;
                    queue.push_back(next);
                } else if (stored != next_sign) {
                    sk.edges_consistent = false;
                }
            }
        }
    }
    return sk;
}

bool is_orientable(const Triangulation& tri) {
    const auto n = static_cast<std::size_t>(tri.size());
    std::vector<int> sign(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (sign[start] != 0) continue;
        sign[start] = 1;
        std::deque<int> queue{static_cast<int>(start)};
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            for (int f = 0; f < 4; ++f) {
                const FaceGluing& g = tri.gluing(t, f);
                int want = sign[static_cast<std::size_t>(t)] * (g.perm.is_odd() ? 1 : -1);
                int& have = sign[static_cast<std::size_t>(g.tet)];
                if (have == 0) {
                    have = want;
                    queue.push_back(g.tet);
                } else if (have != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::string> manifold_problems(const Triangulation& tri) {
    const SkeletonIndex& sk = tri.skeleton();
    std::vector<std::string> problems;
    if (!sk.edges_consistent) problems.push_back("an edge is identified with itself in reverse");
    // Vertex link: T triangles, 3T/2 edges, and one vertex per edge end.
    std::vector<int> link_vertices(static_cast<std::size_t>(sk.vertex_count), 0);
    for (const auto& slots : sk.edge_slots) {
        auto [u, w] = kEdgeVertices[static_cast<std::size_t>(slots.front().index)];
        const auto& vt = sk.vertex_of[static_cast<std::size_t>(slots.front().tet)];
        ++link_vertices[static_cast<std::size_t>(vt[static_cast<std::size_t>(u)])];
        ++link_vertices[static_cast<std::size_t>(vt[static_cast<std::size_t>(w)])];
    }
    for (int v = 0; v < sk.vertex_count; ++v) {
        int triangles = static_cast<int>(sk.vertex_slots[static_cast<std::size_t>(v)].size());
        int euler2 = 2 * link_vertices[static_cast<std::size_t>(v)] - triangles;  // 2*chi
        if (euler2 != 4)
            problems.push_back("link of vertex " + std::to_string(v) + " is not a 2-sphere (euler characteristic " +
                               std::to_string(euler2) + "/2)");
    }
    return problems;
}

int min_edge_degree(const Triangulation& tri) {
    const auto& d = tri.skeleton().edge_degree;
    return *std::min_element(d.begin(), d.end());
}

}  // namespace nsurf
