#include "nsurf/normal_coords.hpp"

#include <algorithm>
#include <sstream>

namespace nsurf {

std::string_view mode_name(Mode m) { return m == Mode::OneNormal ? "1N" : "2N"; }

namespace disc {

namespace {
// Pairs of each separation: {0, mate}, {other two}.
constexpr int kMate[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
}  // namespace

int mate(int v, int s) { return kMate[s][v]; }

bool on_zero_side(int v, int s) { return v == 0 || v == kMate[s][0]; }

int edge_crossings(int k, int u, int w) {
    if (is_triangle(k)) return (u == k || w == k) ? 1 : 0;
    const bool paired = mate(u, separation(k)) == w;
    if (is_quad(k)) return paired ? 0 : 1;
    return paired ? 2 : 1;
}

int arc_incidence(int k, int face, int corner) {
    if (corner == face) return 0;
    if (is_triangle(k)) return k == corner ? 1 : 0;
    const int m = mate(face, separation(k));
    if (is_quad(k)) return corner == m ? 1 : 0;
    return corner == m ? 0 : 1;
}

std::string name(int k) {
    static const char* seps[3] = {"01|23", "02|13", "03|12"};
    if (is_triangle(k)) return "T" + std::to_string(k);
    if (is_quad(k)) return std::string("Q(") + seps[separation(k)] + ")";
    return std::string("O(") + seps[separation(k)] + ")";
}

}  // namespace disc

NormalVector::NormalVector(Mode mode, int tets)
    : mode_(mode), tets_(tets), coords_(static_cast<std::size_t>(tets * stride(mode)), 0) {}

NormalVector::NormalVector(Mode mode, int tets, std::vector<Integer> coords)
    : mode_(mode), tets_(tets), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(tets * stride(mode)))
        throw InvalidInput("normal vector has " + std::to_string(coords_.size()) + " coordinates, expected " +
                           std::to_string(tets * stride(mode)));
}

const Integer& NormalVector::at(int tet, int kind) const {
    return coords_[static_cast<std::size_t>(tet * stride(mode_) + kind)];
}

Integer& NormalVector::at(int tet, int kind) { return coords_[static_cast<std::size_t>(tet * stride(mode_) + kind)]; }

bool NormalVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
}

NormalVector NormalVector::promoted() const {
    if (mode_ == Mode::TwoNormal) return *this;
    NormalVector out(Mode::TwoNormal, tets_);
    for (int t = 0; t < tets_; ++t)
        for (int k = 0; k < 7; ++k) out.at(t, k) = at(t, k);
    return out;
}

NormalVector NormalVector::demoted() const {
    if (mode_ == Mode::OneNormal) return *this;
    NormalVector out(Mode::OneNormal, tets_);
    for (int t = 0; t < tets_; ++t) {
        for (int k = 0; k < 7; ++k) out.at(t, k) = at(t, k);
        for (int k = 7; k < 10; ++k)
            if (at(t, k) != 0) throw InvalidInput("vector has octagons and cannot be made 1-normal");
    }
    return out;
}

NormalVector NormalVector::operator+(const NormalVector& other) const {
    if (tets_ != other.tets_) throw InvalidInput("adding vectors over different triangulations");
    if (mode_ != other.mode_) return promoted() + other.promoted();
    NormalVector out = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += other.coords_[i];
    return out;
}

NormalVector NormalVector::operator*(const Integer& k) const {
    NormalVector out = *this;
    for (auto& x : out.coords_) x *= k;
    return out;
}

bool coord_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer sa = 0, sb = 0;
    for (const auto& x : a) sa += x;
    for (const auto& x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
}

void IntegerMatrix::append_row(const std::vector<int>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw InvalidInput("matrix row has the wrong length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<int> IntegerMatrix::row(std::size_t r) const {
    return std::vector<int>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::int64_t IntegerMatrix::max_row_norm2() const {
    std::int64_t best = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        std::int64_t s = 0;
        for (std::size_t c = 0; c < cols_; ++c) s += static_cast<std::int64_t>((*this)(r, c)) * (*this)(r, c);
        best = std::max(best, s);
    }
    return best;
}

std::vector<Integer> IntegerMatrix::apply(const std::vector<Integer>& x) const {
    if (x.size() != cols_) throw InvalidInput("vector length does not match the matrix");
    std::vector<Integer> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (int a = (*this)(r, c); a != 0 && x[c] != 0) out[r] += a * x[c];
    return out;
}

bool IntegerMatrix::annihilates(const std::vector<Integer>& x) const {
    auto y = apply(x);
    return std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
}

namespace {

std::vector<int> face_corners(int face) {
    std::vector<int> out;
    for (int c = 0; c < 4; ++c)
        if (c != face) out.push_back(c);
    return out;
}

void require_shape(const NormalVector& v, const Triangulation& tri) {
    if (v.tets() != tri.size())
        throw InvalidInput("vector has " + std::to_string(v.tets()) + " tetrahedra, triangulation has " +
                           std::to_string(tri.size()));
    if (v.size() != static_cast<std::size_t>(v.tets() * stride(v.mode())))
        throw InvalidInput("vector length does not match its mode");
}

std::optional<Violation> check_matching(const NormalVector& v, const Triangulation& tri) {
    const SkeletonIndex& sk = tri.skeleton();
    int row = 0;
    for (int fc = 0; fc < sk.face_count; ++fc) {
        const Slot rep = sk.face_slots[static_cast<std::size_t>(fc)].front();
        const FaceGluing& g = tri.gluing(rep.tet, rep.index);
        for (int c : face_corners(rep.index)) {
            if (arc_count(v, rep.tet, rep.index, c) != arc_count(v, g.tet, g.perm[rep.index], g.perm[c])) {
                return Violation{Violation::Kind::Matching, row,
                                 "matching equation " + std::to_string(row) + " fails (face class " +
                                     std::to_string(fc) + ", arc cutting corner " + std::to_string(c) + " of tet " +
                                     std::to_string(rep.tet) + ")"};
            }
            ++row;
        }
    }
    return std::nullopt;
}

}  // namespace

IntegerMatrix matching_system(const Triangulation& tri, Mode mode) {
    const SkeletonIndex& sk = tri.skeleton();
    const int st = stride(mode);
    IntegerMatrix m(0, static_cast<std::size_t>(tri.size() * st));
    for (int fc = 0; fc < sk.face_count; ++fc) {
        const Slot rep = sk.face_slots[static_cast<std::size_t>(fc)].front();
        const FaceGluing& g = tri.gluing(rep.tet, rep.index);
        for (int c : face_corners(rep.index)) {
            std::vector<int> row(static_cast<std::size_t>(tri.size() * st), 0);
            for (int k = 0; k < st; ++k) {
                row[static_cast<std::size_t>(rep.tet * st + k)] += disc::arc_incidence(k, rep.index, c);
                row[static_cast<std::size_t>(g.tet * st + k)] -= disc::arc_incidence(k, g.perm[rep.index], g.perm[c]);
            }
            m.append_row(row);
        }
    }
    return m;
}

std::vector<ArcType> matching_rows(const Triangulation& tri) {
    const SkeletonIndex& sk = tri.skeleton();
    std::vector<ArcType> rows;
    for (int fc = 0; fc < sk.face_count; ++fc)
        for (int c : face_corners(sk.face_slots[static_cast<std::size_t>(fc)].front().index)) rows.push_back({fc, c});
    return rows;
}

Integer arc_count(const NormalVector& v, int tet, int face, int corner) {
    Integer n = 0;
    for (int k = 0; k < stride(v.mode()); ++k)
        if (disc::arc_incidence(k, face, corner)) n += v.at(tet, k);
    return n;
}

std::vector<int> incompatible_tets(const NormalVector& v) {
    std::vector<int> bad;
    for (int t = 0; t < v.tets(); ++t) {
        int nonzero = 0;
        for (int k = 4; k < stride(v.mode()); ++k)
            if (v.at(t, k) != 0) ++nonzero;
        if (nonzero > 1) bad.push_back(t);
    }
    return bad;
}

std::optional<Violation> check_admissible(const NormalVector& v, const Triangulation& tri) {
    require_shape(v, tri);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < 0)
            return Violation{Violation::Kind::Negative, static_cast<int>(i),
                             "coordinate " + std::to_string(i) + " is negative"};
    if (auto bad = incompatible_tets(v); !bad.empty())
        return Violation{Violation::Kind::Compatibility, bad.front(),
                         "compatibility fails in tet " + std::to_string(bad.front()) +
                             ": more than one quad/octagon type is present"};
    return check_matching(v, tri);
}

bool is_admissible(const NormalVector& v, const Triangulation& tri) { return !check_admissible(v, tri).has_value(); }

namespace {

Integer slot_weight(const NormalVector& v, int tet, int edge) {
    auto [u, w] = kEdgeVertices[static_cast<std::size_t>(edge)];
    Integer n = 0;
    for (int k = 0; k < stride(v.mode()); ++k)
        if (int c = disc::edge_crossings(k, u, w); c != 0) n += c * v.at(tet, k);
    return n;
}

void require_matching(const NormalVector& v, const Triangulation& tri) {
    require_shape(v, tri);
    if (auto bad = check_matching(v, tri)) throw InvalidInput("inadmissible vector: " + bad->message);
}

void require_admissible(const NormalVector& v, const Triangulation& tri) {
    if (auto bad = check_admissible(v, tri)) throw InvalidInput("inadmissible vector: " + bad->message);
}

}  // namespace

Integer edge_weight(const NormalVector& v, const Triangulation& tri, int edge_class) {
    require_matching(v, tri);
    const Slot rep = tri.skeleton().edge_slots.at(static_cast<std::size_t>(edge_class)).front();
    return slot_weight(v, rep.tet, rep.index);
}

std::vector<Integer> edge_weights(const NormalVector& v, const Triangulation& tri) {
    require_matching(v, tri);
    std::vector<Integer> out;
    for (const auto& slots : tri.skeleton().edge_slots) out.push_back(slot_weight(v, slots.front().tet, slots.front().index));
    return out;
}

Integer total_weight(const NormalVector& v, const Triangulation& tri) {
    Integer sum = 0;
    for (const auto& w : edge_weights(v, tri)) sum += w;
    return sum;
}

Integer euler_characteristic(const NormalVector& v, const Triangulation& tri) {
    require_admissible(v, tri);
    const SkeletonIndex& sk = tri.skeleton();
    Integer vertices = total_weight(v, tri);
    Integer edges = 0;
    for (int fc = 0; fc < sk.face_count; ++fc) {
        // The lexicographically smaller side is the representative.
        const Slot rep = sk.face_slots[static_cast<std::size_t>(fc)].front();
        for (int c : face_corners(rep.index)) edges += arc_count(v, rep.tet, rep.index, c);
    }
    Integer faces = 0;
    for (const auto& x : v.coords()) faces += x;
    return vertices - edges + faces;
}

IncompatibleSum::IncompatibleSum(std::vector<int> tets)
    : InvalidInput([&] {
          std::string s = "incompatible Haken sum: two quad/octagon types in tet";
          for (int t : tets) s += " " + std::to_string(t);
          return s;
      }()),
      tets_(std::move(tets)) {}

NormalVector haken_sum(const NormalVector& u, const NormalVector& w, const Triangulation& tri) {
    require_admissible(u, tri);
    require_admissible(w, tri);
    NormalVector s = u + w;
    if (auto bad = incompatible_tets(s); !bad.empty()) throw IncompatibleSum(std::move(bad));
    return s;
}

NormalVector vertex_link(const Triangulation& tri, int vertex_class, Mode mode) {
    NormalVector v(mode, tri.size());
    for (const Slot& s : tri.skeleton().vertex_slots.at(static_cast<std::size_t>(vertex_class)))
        v.at(s.tet, disc::triangle(s.index)) += 1;
    return v;
}

NormalVector vertex_links_sum(const Triangulation& tri, Mode mode) {
    NormalVector v(mode, tri.size());
    for (int t = 0; t < tri.size(); ++t)
        for (int c = 0; c < 4; ++c) v.at(t, disc::triangle(c)) = 1;
    return v;
}

bool surface_less(const NormalVector& a, const NormalVector& b, const Triangulation& tri) {
    Integer wa = total_weight(a, tri), wb = total_weight(b, tri);
    if (wa != wb) return wa < wb;
    if (a.mode() != b.mode()) return a.promoted().coords() < b.promoted().coords();
    return a.coords() < b.coords();
}

std::string serialize(const NormalVector& v) {
    std::ostringstream out;
    out << "mode=" << mode_name(v.mode()) << " tets=" << v.tets() << '\n';
    for (int t = 0; t < v.tets(); ++t) {
        for (int k = 0; k < stride(v.mode()); ++k) out << (k ? " " : "") << v.at(t, k);
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

NormalVector parse_block(const std::vector<std::string>& lines, std::size_t& i) {
    const int header_line = static_cast<int>(i) + 1;
    std::istringstream head(lines[i]);
    std::string mode_tok, tets_tok, extra;
    head >> mode_tok >> tets_tok;
    if (head >> extra) throw ParseError("unexpected text in vector header", header_line, 1);
    Mode mode;
    if (mode_tok == "mode=1N")
        mode = Mode::OneNormal;
    else if (mode_tok == "mode=2N")
        mode = Mode::TwoNormal;
    else
        throw ParseError("expected mode=1N or mode=2N", header_line, 1);
    if (tets_tok.rfind("tets=", 0) != 0) throw ParseError("expected tets=<count>", header_line, 1);
    int tets = 0;
    try {
        tets = std::stoi(tets_tok.substr(5));
    } catch (const std::exception&) {
        throw ParseError("bad tetrahedron count", header_line, 1);
    }
    if (tets <= 0) throw ParseError("tetrahedron count must be positive", header_line, 1);
    ++i;
    std::vector<Integer> coords;
    for (int t = 0; t < tets; ++t, ++i) {
        if (i >= lines.size()) throw ParseError("missing coordinate line", static_cast<int>(i) + 1, 1);
        std::istringstream row(lines[i]);
        std::string tok;
        int count = 0;
        while (row >> tok) {
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw ParseError("coordinate \"" + tok + "\" is not a non-negative integer", static_cast<int>(i) + 1, 1);
            coords.emplace_back(tok);
            ++count;
        }
        if (count != stride(mode))
            throw ParseError("expected " + std::to_string(stride(mode)) + " coordinates", static_cast<int>(i) + 1, 1);
    }
    return NormalVector(mode, tets, std::move(coords));
}

}  // namespace

NormalVector parse_normal_vector(std::string_view text) {
    auto vs = parse_normal_vector_list(text);
    if (vs.size() != 1) throw InvalidInput("expected exactly one vector, found " + std::to_string(vs.size()));
    return vs.front();
}

std::string serialize_list(const std::vector<NormalVector>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += '\n';
        out += serialize(vs[i]);
    }
    return out;
}

std::vector<NormalVector> parse_normal_vector_list(std::string_view text) {
    auto lines = split_lines(text);
    std::vector<NormalVector> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto& l = lines[i];
        if (l.find_first_not_of(' ') == std::string::npos || l[l.find_first_not_of(' ')] == '#') {
            ++i;
            continue;
        }
        out.push_back(parse_block(lines, i));
    }
    return out;
}

}  // namespace nsurf
