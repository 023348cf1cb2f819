#pragma once

#include <string>
#include <vector>

#include "nsurf/complement.hpp"
#include "nsurf/hilbert.hpp"

namespace nsurf {

enum class SystemPart { VertexLink, Sphere, DoubledProjectivePlane, OctagonSphere };
std::string part_name(SystemPart p);

struct SystemComponent {
    NormalVector vector;  // 1-normal, or 2-normal for octagon spheres
    SystemPart part = SystemPart::Sphere;
    NormalVector core;    // the projective plane P of a doubled 2P
    Integer weight;
    Integer octagons;
    int step = 0;         // iteration that added it (0: initial vertex links)
    int complement_component = -1;  // for octagon spheres: the N it lies in
};

struct ConstructionStep {
    int step = 0;
    std::string action;  // "projective-plane", "sphere", "stop"
    int complement_components = 0;
    int candidates = 0;  // fundamental surfaces examined
    Integer weight_before;
    Integer weight_after;
    Integer recurrence_bound;  // weight_before * 2^(18t+2)
    bool recurrence_ok = true;
};

struct SphereSystem {
    int tets = 0;
    std::vector<SystemComponent> components;
    std::vector<ConstructionStep> log;
    NormalVector total;  // sum of all component vectors
    Integer weight;
    int iterations = 0;  // cut-and-search rounds, including the final one
};

struct SigmaOptions {
    HilbertOptions hilbert;
    // The construction assumes every edge has degree >= 3; switching this
    // off lets it run on small triangulations that violate that.
    bool require_degree3 = true;
};

// Starting from the vertex links, repeatedly cut along the current system and
// add the least 1-normal fundamental projective plane (doubled) or, failing
// that, the least 1-normal fundamental sphere not already in the system.
// Requires a closed orientable manifold triangulation (and edge degrees >= 3
// unless disabled); InvalidInput otherwise.
SphereSystem construct_sigma(const Triangulation& tri, const SigmaOptions& opts = {});

struct MaximalityCheck {
    int complement_component = 0;
    NormalVector sphere;
    bool boundary_parallel = false;
};

struct MaximalityReport {
    std::vector<MaximalityCheck> checks;
    std::vector<int> skipped_components;  // twisted I-bundles around projective planes
    bool all_pass() const;
};

// Every 1-normal fundamental sphere of every complement component must equal
// one of that component's boundary spheres.
MaximalityReport verify_maximal(const Triangulation& tri, const SphereSystem& sigma, const HilbertOptions& opts = {});

// Adds, per complement component, the least 2-normal fundamental sphere with
// exactly one octagon, if there is one.
SphereSystem construct_tilde_sigma(const Triangulation& tri, const SphereSystem& sigma, const HilbertOptions& opts = {});

struct BoundCheck {
    std::string name;
    Integer value;
    Integer bound;
    bool pass = false;
    std::string relation = "<";  // value < bound, or "=" for exact counts
};

struct BoundReport {
    int tets = 0;
    std::vector<BoundCheck> checks;
    Integer theorem_bound;  // 2^(196 t^2)
    bool all_pass() const;
};

BoundReport bound_report(const Triangulation& tri, const SphereSystem& sigma, const SphereSystem& tilde);

// 2^(196 n^2), the bound on b(L) and c(H, T^1) for n tetrahedra.
Integer theorem_bound(int tets);
// Least n >= 1 with 2^(196 n^2) > b, i.e. 14 n > sqrt(log2 b).
int min_tets_for_bridge(const Integer& bridge);

std::string serialize(const SphereSystem& s);
std::string serialize(const MaximalityReport& r);
std::string serialize(const BoundReport& r);

}  // namespace nsurf
