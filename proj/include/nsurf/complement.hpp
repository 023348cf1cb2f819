#pragma once

#include <string>
#include <vector>

#include "nsurf/hilbert.hpp"
#include "nsurf/normal_coords.hpp"

namespace nsurf {

enum class RegionKind { Parallelity, TypeI, TypeII };
std::string region_kind_name(RegionKind k);

// Pieces of one tetrahedron cut by the stacked discs of a 1-normal surface.
// With triangle counts n_v >= 1 at every corner and q copies of one quad:
//   CornerSlab(v, k), 1 <= k < n_v : between triangle copies k-1 and k at v
//   Central                        : q == 0, inside all four outer triangles
//   SideA / SideB                  : q >= 1, between the outer triangles of
//                                    the zero side (resp. far side) and the
//                                    nearest quad copy
//   QuadSlab(j), 1 <= j < q        : between quad copies j-1 and j
// The vertex corners inside the innermost triangles are not regions.
enum class PieceKind { CornerSlab, Central, SideA, SideB, QuadSlab };

struct DiscCopy {
    int kind = 0;
    int copy = 0;
    bool operator==(const DiscCopy&) const = default;
};

struct Region {
    int tet = 0;
    PieceKind piece = PieceKind::Central;
    int vertex = -1;  // CornerSlab only
    int index = 0;    // slab index
    std::vector<DiscCopy> frontier;  // cutting-surface discs bounding the region
    RegionKind kind = RegionKind::TypeI;
    int component = -1;
    std::vector<int> faces;  // the tet faces the region meets
};

// Frontier pattern -> classification. Throws InternalError on a pattern that
// matches none of the three kinds.
RegionKind classify_region(const std::vector<DiscCopy>& frontier);

// The two regions on either side of one glued face piece.
struct Adjacency {
    int region[2] = {0, 0};
    int face[2] = {0, 0};  // local face in each region's tetrahedron
    Perm perm;             // local vertices of side 0 -> side 1
};

struct ComplementComponent {
    std::vector<int> regions;
    NormalVector boundary;  // 1-normal vector of the frontier discs
    std::vector<NormalVector> boundary_components;
    Integer boundary_weight;
    int parallelity_regions = 0;  // m-bar(N)
    int type1_regions = 0;
    int type2_regions = 0;
    bool all_parallel() const { return type1_regions == 0 && type2_regions == 0; }
    // m(N): classes in type I and type II regions.
    int class_count(Mode mode) const { return type1_regions * stride(mode) + type2_regions * 3; }
};

class Complement {
public:
    const Triangulation& triangulation() const { return tri_; }
    // sigma plus (when truncating) the vertex links.
    const NormalVector& cutting_vector() const { return cut_; }
    const std::vector<Region>& regions() const { return regions_; }
    const std::vector<Adjacency>& adjacencies() const { return adjacency_; }
    const std::vector<ComplementComponent>& components() const { return components_; }

private:
    friend Complement cut(const Triangulation& tri, const NormalVector& sigma, bool truncate_vertices);
    explicit Complement(const Triangulation& tri) : tri_(tri) {}

    Triangulation tri_;
    NormalVector cut_;
    std::vector<Region> regions_;
    std::vector<Adjacency> adjacency_;
    std::vector<ComplementComponent> components_;
};

// Cuts M along the canonical realization of sigma (1-normal, admissible),
// after adding the vertex links when truncate_vertices is set. Every corner
// of every tetrahedron must then carry at least one triangle, so that no
// region contains a vertex; otherwise InvalidInput.
Complement cut(const Triangulation& tri, const NormalVector& sigma, bool truncate_vertices);

struct ClassRef {
    int region = 0;
    int kind = 0;
};

struct ReducedSystem {
    int component = 0;
    Mode mode = Mode::OneNormal;
    std::vector<ClassRef> classes;  // every class of N, region order
    IntegerMatrix full;             // region matching equations over all classes
    std::vector<int> retained;      // class indices kept as columns of `matrix`
    // Per class, the retained columns summing to it (a retained class maps
    // to its own column).
    std::vector<std::vector<int>> expression;
    IntegerMatrix matrix;                            // reduced system over retained columns
    std::vector<std::vector<int>> exclusive_groups;  // quad/octagon columns of each type I region
};

// The reduced system for component N. Parallelity classes are eliminated
// breadth-first from the type I/II regions. Throws InvalidInput when N has no
// type I/II region.
ReducedSystem reduced_matching_system(const Complement& c, int component, Mode mode);

// Full class vector from a solution over the retained columns. Throws
// InvalidInput when x is not a non-negative compatible solution.
std::vector<Integer> lift_solution(const ReducedSystem& rs, const std::vector<Integer>& x);

// Global vector of a full class vector: class counts summed per disc type.
NormalVector embed_back(const Complement& c, const ReducedSystem& rs, const std::vector<Integer>& full);

// Core surface of a component made of parallelity regions only: one disc per
// region. Throws InvalidInput otherwise.
NormalVector surfaces_in_parallel_component(const Complement& c, int component, Mode mode = Mode::OneNormal);

struct FundamentalSurface {
    std::vector<Integer> classes;  // empty for the core of a parallel component
    NormalVector vector;
    Integer weight;
};

struct FundamentalResult {
    std::vector<FundamentalSurface> surfaces;  // surface_less order
    Integer boundary_weight;
    Integer weight_bound;  // ||dN|| * 2^(18 t)
    int columns = 0;       // m(N), 0 for a parallel component
    std::int64_t k2 = 0;
    Integer hilbert_bound;
    bool parallel_component = false;
};

// Compatible Hilbert basis of the reduced system, lifted and embedded; every
// element checked to be admissible in M and to satisfy the weight bound
// (InternalError otherwise).
FundamentalResult fundamental_surfaces(const Complement& c, int component, Mode mode,
                                       const HilbertOptions& opts = {});

// Per component: region census, m(N), m-bar(N), boundary vectors.
std::string summary(const Complement& c, Mode mode = Mode::TwoNormal);

}  // namespace nsurf
