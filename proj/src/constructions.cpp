#include "nsurf/constructions.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "nsurf/realization.hpp"

namespace nsurf {

namespace {

Integer t2(int t) { return Integer(t) * t; }

void check_input(const Triangulation& tri, bool require_degree3) {
    auto problems = manifold_problems(tri);
    if (!problems.empty()) throw InvalidInput("not a closed 3-manifold triangulation: " + problems.front());
    if (!is_orientable(tri)) throw InvalidInput("triangulation is not orientable");
    if (require_degree3 && min_edge_degree(tri) < 3)
        throw InvalidInput("edge of degree " + std::to_string(min_edge_degree(tri)) + " (need >= 3)");
}

// The single component of a connected vector, or nullopt.
std::optional<SurfaceComponent> connected(const NormalVector& v, const Triangulation& tri) {
    auto rep = components(realize(v, tri));
    if (rep.components.size() != 1) return std::nullopt;
    return rep.components.front();
}

std::vector<NormalVector> planes_of(const SphereSystem& s) {
    std::vector<NormalVector> out;
    for (const auto& c : s.components)
        if (c.part == SystemPart::DoubledProjectivePlane) out.push_back(c.core);
    return out;
}

// U(P): a component built from parallelity regions only whose core is a
// recorded projective plane.
bool twisted_bundle(const Complement& c, int comp, const std::vector<NormalVector>& planes) {
    if (!c.components()[static_cast<std::size_t>(comp)].all_parallel()) return false;
    NormalVector core = surfaces_in_parallel_component(c, comp);
    return std::find(planes.begin(), planes.end(), core) != planes.end();
}

void refresh(SphereSystem& s, const Triangulation& tri) {
    Mode mode = Mode::OneNormal;
    for (const auto& c : s.components)
        if (c.vector.mode() == Mode::TwoNormal) mode = Mode::TwoNormal;
    NormalVector total(mode, tri.size());
    for (const auto& c : s.components) total = total + (mode == Mode::TwoNormal ? c.vector.promoted() : c.vector);
    NSURF_ASSERT(is_admissible(total, tri), "system components are not compatible");
    for (std::size_t i = 0; i < s.components.size(); ++i)
        for (std::size_t j = i + 1; j < s.components.size(); ++j)
            NSURF_ASSERT(!(s.components[i].vector == s.components[j].vector), "repeated system component");
    s.total = total;
    s.weight = total_weight(total, tri);
}

SystemComponent make_component(const NormalVector& v, SystemPart part, int step, const Triangulation& tri) {
    SystemComponent c;
    c.vector = v;
    c.part = part;
    c.weight = total_weight(v, tri);
    c.octagons = octagon_count(v);
    c.step = step;
    return c;
}

struct Pick {
    NormalVector vector;
    int component = -1;
};

void keep_least(std::optional<Pick>& best, const NormalVector& v, int comp, const Triangulation& tri) {
    if (!best || surface_less(v, best->vector, tri)) best = Pick{v, comp};
}

std::string coords_line(const NormalVector& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

}  // namespace

std::string part_name(SystemPart p) {
    switch (p) {
        case SystemPart::VertexLink: return "vertex-link";
        case SystemPart::Sphere: return "sphere";
        case SystemPart::DoubledProjectivePlane: return "doubled-projective-plane";
        case SystemPart::OctagonSphere: return "octagon-sphere";
    }
    return "?";
}

SphereSystem construct_sigma(const Triangulation& tri, const SigmaOptions& opts) {
    check_input(tri, opts.require_degree3);
    const int t = tri.size();
    SphereSystem s;
    s.tets = t;
    for (int v = 0; v < tri.skeleton().vertex_count; ++v)
        s.components.push_back(make_component(vertex_link(tri, v), SystemPart::VertexLink, 0, tri));
    refresh(s, tri);

    const int limit = 10 * t;
    for (int step = 1;; ++step) {
        NSURF_ASSERT(step < limit, "construction did not stop within 10t iterations");
        s.iterations = step;
        Complement c = cut(tri, s.total, false);
        auto planes = planes_of(s);

        ConstructionStep log;
        log.step = step;
        log.complement_components = static_cast<int>(c.components().size());
        log.weight_before = s.weight;

        std::optional<Pick> plane, sphere;
        for (int comp = 0; comp < static_cast<int>(c.components().size()); ++comp) {
            if (twisted_bundle(c, comp, planes)) continue;
            auto fr = fundamental_surfaces(c, comp, Mode::OneNormal, opts.hilbert);
            for (const auto& f : fr.surfaces) {
                ++log.candidates;
                auto info = connected(f.vector, tri);
                if (!info) continue;
                if (info->euler == 1) {
                    keep_least(plane, f.vector, comp, tri);
                } else if (info->euler == 2) {
                    bool known = std::any_of(s.components.begin(), s.components.end(),
                                             [&](const SystemComponent& x) { return x.vector == f.vector; });
                    if (!known) keep_least(sphere, f.vector, comp, tri);
                }
            }
        }

        if (plane) {
            NormalVector doubled = plane->vector * 2;
            auto info = connected(doubled, tri);
            NSURF_ASSERT(info && info->euler == 2, "doubled projective plane is not a sphere");
            auto comp = make_component(doubled, SystemPart::DoubledProjectivePlane, step, tri);
            comp.core = plane->vector;
            s.components.push_back(comp);
            log.action = "projective-plane";
        } else if (sphere) {
            s.components.push_back(make_component(sphere->vector, SystemPart::Sphere, step, tri));
            log.action = "sphere";
        } else {
            log.action = "stop";
        }
        refresh(s, tri);
        log.weight_after = s.weight;
        log.recurrence_bound = log.weight_before * pow2(static_cast<std::uint64_t>(18 * t + 2));
        log.recurrence_ok = log.weight_after < log.recurrence_bound;
        s.log.push_back(log);
        if (log.action == "stop") break;
    }
    return s;
}

bool MaximalityReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const MaximalityCheck& c) { return c.boundary_parallel; });
}

MaximalityReport verify_maximal(const Triangulation& tri, const SphereSystem& sigma, const HilbertOptions& opts) {
    MaximalityReport r;
    Complement c = cut(tri, sigma.total, false);
    auto planes = planes_of(sigma);
    for (int comp = 0; comp < static_cast<int>(c.components().size()); ++comp) {
        if (twisted_bundle(c, comp, planes)) {
            r.skipped_components.push_back(comp);
            continue;
        }
        const auto& boundary = c.components()[static_cast<std::size_t>(comp)].boundary_components;
        auto fr = fundamental_surfaces(c, comp, Mode::OneNormal, opts);
        for (const auto& f : fr.surfaces) {
            auto info = connected(f.vector, tri);
            if (!info || info->euler != 2) continue;
            MaximalityCheck chk;
            chk.complement_component = comp;
            chk.sphere = f.vector;
            chk.boundary_parallel = std::find(boundary.begin(), boundary.end(), f.vector) != boundary.end();
            r.checks.push_back(chk);
        }
    }
    return r;
}

SphereSystem construct_tilde_sigma(const Triangulation& tri, const SphereSystem& sigma, const HilbertOptions& opts) {
    SphereSystem s = sigma;
    s.log.clear();
    Complement c = cut(tri, sigma.total, false);
    auto planes = planes_of(sigma);
    for (int comp = 0; comp < static_cast<int>(c.components().size()); ++comp) {
        if (twisted_bundle(c, comp, planes)) continue;
        ConstructionStep log;
        log.step = comp;
        log.complement_components = static_cast<int>(c.components().size());
        log.weight_before = s.weight;

        std::optional<Pick> best;
        auto fr = fundamental_surfaces(c, comp, Mode::TwoNormal, opts);
        for (const auto& f : fr.surfaces) {
            ++log.candidates;
            if (octagon_count(f.vector) != 1) continue;
            auto info = connected(f.vector, tri);
            if (info && info->euler == 2) keep_least(best, f.vector, comp, tri);
        }
        if (best) {
            auto added = make_component(best->vector, SystemPart::OctagonSphere, 0, tri);
            added.complement_component = comp;
            s.components.push_back(added);
            refresh(s, tri);
            log.action = "octagon-sphere";
        } else {
            log.action = "none";
        }
        log.weight_after = s.weight;
        s.log.push_back(log);
    }
    return s;
}

bool BoundReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundReport bound_report(const Triangulation& tri, const SphereSystem& sigma, const SphereSystem& tilde) {
    BoundReport r;
    const int t = tri.size();
    r.tets = t;
    const auto sq = static_cast<std::uint64_t>(t2(t));
    auto add = [&](std::string name, const Integer& value, const Integer& bound) {
        r.checks.push_back({std::move(name), value, bound, value < bound});
    };

    add("sigma_weight", sigma.weight, pow2(185 * sq));
    add("iterations", sigma.iterations, 10 * t);
    for (const auto& step : sigma.log)
        add("recurrence_step_" + std::to_string(step.step), step.weight_after, step.recurrence_bound);
    add("sigma_components", static_cast<int>(sigma.components.size()), 10 * t + 1);
    for (const auto& c : tilde.components) {
        if (c.part != SystemPart::OctagonSphere) continue;
        std::string n = "octagon_sphere_N" + std::to_string(c.complement_component);
        add(n + "_weight", c.weight, pow2(189 * sq));
        r.checks.push_back({n + "_octagons", c.octagons, 1, c.octagons == 1, "="});
    }
    add("tilde_sigma_components", static_cast<int>(tilde.components.size()), 10 * t + 1);
    add("tilde_sigma_weight_fine", tilde.weight, 10 * t * pow2(189 * sq));
    add("tilde_sigma_weight", tilde.weight, pow2(190 * sq));
    r.theorem_bound = theorem_bound(t);
    return r;
}

Integer theorem_bound(int tets) {
    if (tets < 1) throw InvalidInput("tetrahedron count must be positive");
    return pow2(196 * static_cast<std::uint64_t>(t2(tets)));
}

int min_tets_for_bridge(const Integer& bridge) {
    if (bridge < 1) throw InvalidInput("bridge number must be positive");
    int n = 1;
    while (theorem_bound(n) <= bridge) ++n;
    return n;
}

std::string serialize(const SphereSystem& s) {
    std::ostringstream os;
    os << "tets=" << s.tets << " components=" << s.components.size() << " weight=" << s.weight
       << " iterations=" << s.iterations << '\n';
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        const auto& c = s.components[i];
        os << "component " << i << ": " << part_name(c.part) << " step=" << c.step << " weight=" << c.weight
           << " octagons=" << c.octagons;
        if (c.complement_component >= 0) os << " in=N" << c.complement_component;
        os << '\n' << "  " << mode_name(c.vector.mode()) << ": " << coords_line(c.vector) << '\n';
    }
    os << "log:\n";
    for (const auto& l : s.log) {
        os << "  step " << l.step << ": " << l.action << " complement_components=" << l.complement_components
           << " candidates=" << l.candidates << " weight " << l.weight_before << " -> " << l.weight_after;
        if (l.recurrence_bound > 0) os << " recurrence=" << (l.recurrence_ok ? "pass" : "FAIL");
        os << '\n';
    }
    return os.str();
}

std::string serialize(const MaximalityReport& r) {
    std::ostringstream os;
    os << "checks=" << r.checks.size() << " result=" << (r.all_pass() ? "pass" : "FAIL") << '\n';
    for (int comp : r.skipped_components) os << "N" << comp << ": twisted I-bundle, skipped\n";
    for (const auto& c : r.checks)
        os << "N" << c.complement_component << ": " << (c.boundary_parallel ? "boundary" : "NOT-BOUNDARY") << " "
           << coords_line(c.sphere) << '\n';
    return os.str();
}

std::string serialize(const BoundReport& r) {
    std::ostringstream os;
    os << "tets=" << r.tets << " result=" << (r.all_pass() ? "pass" : "FAIL") << '\n';
    for (const auto& c : r.checks) {
        os << c.name << ": " << (c.pass ? "pass" : "FAIL") << " " << c.value << " " << c.relation << " "
           << factor_pow2(c.bound) << '\n';
    }
    os << "theorem_bound: " << factor_pow2(r.theorem_bound) << '\n';
    return os.str();
}

}  // namespace nsurf
