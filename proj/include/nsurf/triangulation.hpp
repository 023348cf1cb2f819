#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsurf {

// A bijection of the tetrahedron vertices {0,1,2,3}.
class Perm {
public:
    constexpr Perm() : img_{0, 1, 2, 3} {}
    constexpr Perm(int a, int b, int c, int d) : img_{a, b, c, d} {}

    // Parses a 4-character image string such as "1023". Returns nullopt if the
    // string is not a bijection of {0,1,2,3}.
    static std::optional<Perm> from_string(std::string_view s);

    constexpr int operator[](int v) const { return img_[static_cast<std::size_t>(v)]; }
    Perm inverse() const;
    // (a * b)[v] == a[b[v]]
    Perm operator*(const Perm& other) const;
    bool is_odd() const;
    std::string str() const;

    bool operator==(const Perm&) const = default;

private:
    std::array<int, 4> img_;
};

// Face `f` of a tetrahedron is glued to face `perm[f]` of tetrahedron `tet`;
// vertex v of the source maps to vertex perm[v] of the target.
struct FaceGluing {
    int tet = -1;
    Perm perm;
};

// A (tetrahedron, local index) pair; ordering is lexicographic.
struct Slot {
    int tet = 0;
    int index = 0;
    auto operator<=>(const Slot&) const = default;
};

// Local edge numbering: 0:{0,1} 1:{0,2} 2:{0,3} 3:{1,2} 4:{1,3} 5:{2,3}.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int edge_index(int u, int w);

struct SkeletonIndex {
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;

    std::vector<std::array<int, 4>> vertex_of;  // [tet][vertex] -> vertex class
    std::vector<std::array<int, 6>> edge_of;    // [tet][edge]   -> edge class
    std::vector<std::array<int, 4>> face_of;    // [tet][face]   -> face class
    // +1 when the slot's local direction (lower -> higher vertex) agrees with
    // the direction of the class representative, -1 otherwise.
    std::vector<std::array<int, 6>> edge_sign;

    // Sorted slot lists per class; front() is the canonical representative.
    std::vector<std::vector<Slot>> vertex_slots;
    std::vector<std::vector<Slot>> edge_slots;
    std::vector<std::vector<Slot>> face_slots;

    std::vector<int> edge_degree;
    // False if some edge is identified with itself in reverse.
    bool edges_consistent = true;
};

class Triangulation {
public:
    // Validates that the gluings form a fixed-point-free involution on the
    // (tetrahedron, face) slots with mutually inverse permutations; throws
    // InvalidInput otherwise.
    explicit Triangulation(std::vector<std::array<FaceGluing, 4>> gluings);

    int size() const { return static_cast<int>(gluings_.size()); }
    const FaceGluing& gluing(int tet, int face) const {
        return gluings_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
    }
    const SkeletonIndex& skeleton() const { return *skeleton_; }

private:
    std::vector<std::array<FaceGluing, 4>> gluings_;
    std::shared_ptr<const SkeletonIndex> skeleton_;
};

Triangulation parse_triangulation(std::string_view text);
std::string serialize(const Triangulation& tri);

SkeletonIndex build_skeleton(const Triangulation& tri);

// True iff every connected component admits orientations making each gluing
// permutation odd.
bool is_orientable(const Triangulation& tri);

// Closed-manifold checks beyond the gluing involution: no edge identified
// with its reverse, every vertex link a 2-sphere. Returns human-readable
// problems; empty means valid.
std::vector<std::string> manifold_problems(const Triangulation& tri);

int min_edge_degree(const Triangulation& tri);

}  // namespace nsurf
