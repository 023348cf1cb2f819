#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsurf/errors.hpp"
#include "nsurf/integer.hpp"
#include "nsurf/triangulation.hpp"

namespace nsurf {

enum class Mode { OneNormal, TwoNormal };

// Coordinates per tetrahedron: 7 (triangles + quads) or 10 (+ octagons).
constexpr int stride(Mode m) { return m == Mode::OneNormal ? 7 : 10; }
std::string_view mode_name(Mode m);  // "1N" / "2N"

// Disc kinds inside one tetrahedron, in coordinate order:
//   0..3  Triangle(v)
//   4..6  Quad(01|23), Quad(02|13), Quad(03|12)
//   7..9  Octagon(01|23), Octagon(02|13), Octagon(03|12)
namespace disc {
constexpr int triangle(int v) { return v; }
constexpr int quad(int s) { return 4 + s; }
constexpr int octagon(int s) { return 7 + s; }
constexpr bool is_triangle(int k) { return k < 4; }
constexpr bool is_quad(int k) { return k >= 4 && k < 7; }
constexpr bool is_octagon(int k) { return k >= 7; }
// Separation index 0..2 of a quad or octagon kind.
constexpr int separation(int k) { return is_quad(k) ? k - 4 : k - 7; }

// The vertex paired with v by separation s (s = 0: 01|23, 1: 02|13, 2: 03|12).
int mate(int v, int s);
// Side of vertex v relative to separation s: true for the side containing 0.
bool on_zero_side(int v, int s);

// Number of times a disc of kind k meets the edge {u, w}.
int edge_crossings(int k, int u, int w);
// 1 iff a disc of kind k has a boundary arc in face `face` cutting off
// `corner` (corner != face); else 0.
int arc_incidence(int k, int face, int corner);

std::string name(int k);
}  // namespace disc

struct DiscType {
    int tet = 0;
    int kind = 0;
    auto operator<=>(const DiscType&) const = default;
};

// A normal arc type: the face class and the corner (a vertex of the face
// class representative's tetrahedron) that the arc cuts off.
struct ArcType {
    int face_class = 0;
    int corner = 0;
};

class NormalVector {
public:
    NormalVector() = default;
    NormalVector(Mode mode, int tets);
    NormalVector(Mode mode, int tets, std::vector<Integer> coords);

    Mode mode() const { return mode_; }
    int tets() const { return tets_; }
    std::size_t size() const { return coords_.size(); }

    const Integer& at(int tet, int kind) const;
    Integer& at(int tet, int kind);
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Integer>& coords() const { return coords_; }

    bool is_zero() const;
    // Same coordinates in TwoNormal layout (octagons zero).
    NormalVector promoted() const;
    // Drops the octagon coordinates; throws if any is nonzero.
    NormalVector demoted() const;

    NormalVector operator+(const NormalVector& other) const;
    NormalVector operator*(const Integer& k) const;
    bool operator==(const NormalVector& other) const = default;

private:
    Mode mode_ = Mode::OneNormal;
    int tets_ = 0;
    std::vector<Integer> coords_;
};

// Canonical order: by total coordinate sum, then lexicographic. Used where no
// triangulation is at hand; see surface_less for the weight-based order.
bool coord_less(const std::vector<Integer>& a, const std::vector<Integer>& b);

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    void append_row(const std::vector<int>& row);
    std::vector<int> row(std::size_t r) const;
    // max over rows of the squared Euclidean norm (K^2).
    std::int64_t max_row_norm2() const;

    // A * x for a non-negative integer vector.
    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    bool annihilates(const std::vector<Integer>& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<int> data_;
};

// One row per (face class, corner of the representative face), face classes
// in index order and corners ascending: +1 for disc types on the
// representative side meeting that arc type, -1 on the other side.
IntegerMatrix matching_system(const Triangulation& tri, Mode mode);
// Arc type of each row of matching_system.
std::vector<ArcType> matching_rows(const Triangulation& tri);

struct Violation {
    enum class Kind { Negative, Matching, Compatibility } kind;
    int index;  // coordinate, matching row, or tetrahedron
    std::string message;
};

// nullopt when v is non-negative, satisfies matching, and is compatible (at
// most one nonzero quad/octagon coordinate per tetrahedron). Throws
// InvalidInput on a dimension mismatch.
std::optional<Violation> check_admissible(const NormalVector& v, const Triangulation& tri);
bool is_admissible(const NormalVector& v, const Triangulation& tri);
// Tetrahedra where two different quad/octagon types are nonzero.
std::vector<int> incompatible_tets(const NormalVector& v);

// Number of arcs of the given type on the `face` side of tetrahedron `tet`.
Integer arc_count(const NormalVector& v, int tet, int face, int corner);

// Crossings of v with edge class `edge_class`, read off the class
// representative slot. Throws when v violates matching (the count would then
// depend on the slot).
Integer edge_weight(const NormalVector& v, const Triangulation& tri, int edge_class);
std::vector<Integer> edge_weights(const NormalVector& v, const Triangulation& tri);
// ||S||: the number of points of S on the 1-skeleton.
Integer total_weight(const NormalVector& v, const Triangulation& tri);

// V - E + F of the induced cell structure. Throws on inadmissible v.
Integer euler_characteristic(const NormalVector& v, const Triangulation& tri);

// Coordinatewise sum; TwoNormal if either input is. Throws
// IncompatibleSum when the sum violates compatibility.
class IncompatibleSum : public InvalidInput {
public:
    IncompatibleSum(std::vector<int> tets);
    const std::vector<int>& tets() const { return tets_; }

private:
    std::vector<int> tets_;
};
NormalVector haken_sum(const NormalVector& u, const NormalVector& w, const Triangulation& tri);

// Vertex link of a vertex class: one triangle in every (tet, vertex) slot of
// the class.
NormalVector vertex_link(const Triangulation& tri, int vertex_class, Mode mode = Mode::OneNormal);
// Sum of all vertex links (the boundary of a neighbourhood of the vertices).
NormalVector vertex_links_sum(const Triangulation& tri, Mode mode = Mode::OneNormal);

// Canonical surface order: by total weight, then lexicographic coordinates.
bool surface_less(const NormalVector& a, const NormalVector& b, const Triangulation& tri);

// Vector file format: "mode=1N|2N tets=<t>", then one line per tetrahedron.
std::string serialize(const NormalVector& v);
NormalVector parse_normal_vector(std::string_view text);
// Several vectors separated by blank lines.
std::string serialize_list(const std::vector<NormalVector>& vs);
std::vector<NormalVector> parse_normal_vector_list(std::string_view text);

}  // namespace nsurf
