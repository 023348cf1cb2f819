#pragma once

#include <array>
#include <string>
#include <vector>

#include "nsurf/normal_coords.hpp"

namespace nsurf {

// The canonical embedded surface of an admissible vector, as a cell complex:
// disc copies (2-cells), boundary arcs glued across faces (1-cells) and
// crossing points on the 1-skeleton (0-cells).
//
// Stacking convention inside a tetrahedron: triangle copies at vertex v are
// numbered from v outward; the copies of the single quad/octagon family are
// numbered 0..q-1 from the side containing vertex 0 to the other side, so
// copy 0 is nearest every vertex on the zero side and copy q-1 nearest every
// vertex on the far side.
class RealizedSurface {
public:
    struct Disc {
        DiscType type;
        int copy = 0;
    };
    struct Arc {
        int disc = 0;
        int face = 0;    // local face of the disc's tetrahedron
        int corner = 0;  // local vertex cut off
        int rank = 0;    // 1-based position among arcs cutting `corner`
        int partner = -1;
    };

    const Triangulation& triangulation() const { return tri_; }
    const NormalVector& vector() const { return vector_; }
    const std::vector<Disc>& discs() const { return discs_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    // Disc ids crossing a (tet, edge) slot, from the lower local vertex.
    const std::vector<int>& edge_positions(int tet, int edge) const {
        return edge_positions_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(edge)];
    }
    // Global crossing point of each (tet, edge, position): offset of the edge
    // class plus the position along the class representative's direction.
    int point_id(int tet, int edge, int position) const;
    int point_count() const { return point_count_; }
    // Disc id -> component label (labels ordered by least disc id).
    const std::vector<int>& component_of() const { return component_of_; }
    int component_count() const { return component_count_; }

private:
    friend RealizedSurface realize(const NormalVector& v, const Triangulation& tri, std::size_t max_discs);
    explicit RealizedSurface(const Triangulation& tri) : tri_(tri) {}

    Triangulation tri_;
    NormalVector vector_;
    std::vector<Disc> discs_;
    std::vector<Arc> arcs_;
    std::vector<std::array<std::vector<int>, 6>> edge_positions_;
    std::vector<int> point_offset_;  // per edge class
    int point_count_ = 0;
    std::vector<int> component_of_;
    int component_count_ = 0;
};

// Throws InvalidInput for inadmissible v, ResourceLimit beyond `max_discs`
// disc copies, and InternalError if the glued cell complex fails to close up.
RealizedSurface realize(const NormalVector& v, const Triangulation& tri, std::size_t max_discs);
RealizedSurface realize(const NormalVector& v, const Triangulation& tri);

enum class SurfaceKind { Sphere, ProjectivePlane, Torus, KleinBottle, Other };
std::string kind_name(SurfaceKind kind, const Integer& euler);

struct SurfaceComponent {
    NormalVector vector;
    Integer weight;
    Integer euler;       // from the coordinate formula
    Integer euler_cells; // V - E + F counted on the realized cells
    Integer octagons;
    bool orientable = true;
    bool two_sided = true;
    SurfaceKind kind = SurfaceKind::Other;
};

struct ComponentReport {
    bool ambient_orientable = true;
    std::vector<SurfaceComponent> components;
};

// Connected components, ordered by their least disc copy.
ComponentReport components(const RealizedSurface& rs);

// Sum of the octagon coordinates (0 for 1-normal vectors).
Integer octagon_count(const NormalVector& v);

// Pairs (i, j), i < j, of two-sided components with equal vectors, i.e.
// components isotopic mod the 2-skeleton.
std::vector<std::pair<int, int>> duplicate_two_sided_components(const ComponentReport& report);

std::string serialize(const ComponentReport& report);

}  // namespace nsurf
