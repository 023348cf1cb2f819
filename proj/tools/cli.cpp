#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "nsurf/complement.hpp"
#include "nsurf/constructions.hpp"
#include "nsurf/enumerate.hpp"
#include "nsurf/hilbert.hpp"
#include "nsurf/realization.hpp"

namespace nsurf::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InternalError("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

namespace {

struct Config {
    std::string input;
    std::string vectors;
    std::string mode = "1n";
    std::int64_t weight_cap = 0;
    std::size_t hilbert_cap = 0;
    std::string out_dir;
    int component = -1;
    bool allow_low_degree = false;
    int tets = 0;
    std::string bridge;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mode parse_mode(const std::string& m) { return m == "2n" ? Mode::TwoNormal : Mode::OneNormal; }

HilbertOptions hilbert_options(const Config& cfg) {
    HilbertOptions o;
    if (cfg.hilbert_cap > 0) o.max_elements = cfg.hilbert_cap;
    return o;
}

// Collects artifacts in memory; nothing touches the disk until commit().
class Artifacts {
public:
    explicit Artifacts(const Config& cfg, std::string command) : cfg_(cfg), command_(std::move(command)) {}

    void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

    void commit() const {
        if (cfg_.out_dir.empty()) return;
        std::error_code ec;
        fs::create_directories(cfg_.out_dir, ec);
        if (ec) throw InvalidInput("cannot create " + cfg_.out_dir + ": " + ec.message());

        nlohmann::ordered_json manifest;
        manifest["command"] = command_;
        if (!cfg_.input.empty()) {
            manifest["input"] = {{"file", fs::path(cfg_.input).filename().string()}, {"sha256", sha256_hex(slurp(cfg_.input))}};
        }
        manifest["mode"] = cfg_.mode;
        manifest["hilbert_cap"] = cfg_.hilbert_cap;
        manifest["weight_cap"] = cfg_.weight_cap;
        auto list = nlohmann::ordered_json::array();
        for (const auto& [name, content] : files_) {
            write(name, content);
            list.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
        }
        manifest["artifacts"] = list;
        write("manifest.json", manifest.dump(2) + "\n");
    }

private:
    void write(const std::string& name, const std::string& content) const {
        std::ofstream f(fs::path(cfg_.out_dir) / name, std::ios::binary);
        f << content;
        if (!f) throw InvalidInput("cannot write " + (fs::path(cfg_.out_dir) / name).string());
    }

    const Config& cfg_;
    std::string command_;
    std::vector<std::pair<std::string, std::string>> files_;
};

Integer parse_big(const std::string& s) {
    // decimal, or 2^k
    try {
        if (s.rfind("2^", 0) == 0) return pow2(std::stoull(s.substr(2)));
        std::size_t pos = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (s.empty() || pos != s.size()) throw InvalidInput("not a non-negative integer: " + s);
        return Integer(s);
    } catch (const std::logic_error&) {
        throw InvalidInput("not a non-negative integer: " + s);
    }
}

int cmd_validate(const Config& cfg, std::ostream& out) {
    auto tri = parse_triangulation(slurp(cfg.input));
    const auto& sk = tri.skeleton();
    std::ostringstream os;
    os << "t=" << tri.size() << " V=" << sk.vertex_count << " E=" << sk.edge_count << " F=" << sk.face_count << '\n';
    os << "orientable: " << (is_orientable(tri) ? "yes" : "no") << '\n';
    os << "edge degrees:";
    for (int d : sk.edge_degree) os << ' ' << d;
    os << "\nmin edge degree: " << min_edge_degree(tri) << '\n';
    auto problems = manifold_problems(tri);
    os << "closed manifold: " << (problems.empty() ? "yes" : "no") << '\n';
    for (const auto& p : problems) os << "  problem: " << p << '\n';
    out << os.str();
    Artifacts a(cfg, "validate");
    a.add("validate.txt", os.str());
    a.commit();
    return problems.empty() ? kOk : kInvalidInput;
}

std::string describe(const NormalVector& v, const Triangulation& tri) {
    auto rep = components(realize(v, tri));
    if (rep.components.size() != 1) return std::to_string(rep.components.size()) + " components";
    const auto& c = rep.components[0];
    return kind_name(c.kind, c.euler) + " chi=" + to_string(c.euler) + (c.two_sided ? "" : " one-sided");
}

int cmd_fundamental(const Config& cfg, std::ostream& out) {
    auto tri = parse_triangulation(slurp(cfg.input));
    const Mode mode = parse_mode(cfg.mode);
    Complement c = cut(tri, NormalVector(Mode::OneNormal, tri.size()), true);
    const int n = static_cast<int>(c.components().size());
    if (cfg.component >= n) throw InvalidInput("component " + std::to_string(cfg.component) + " out of range");

    std::ostringstream os;
    os << "mode=" << mode_name(mode) << " tets=" << tri.size() << " complement_components=" << n << '\n';
    os << summary(c, mode);
    std::vector<NormalVector> all;
    for (int comp = 0; comp < n; ++comp) {
        if (cfg.component >= 0 && comp != cfg.component) continue;
        auto fr = fundamental_surfaces(c, comp, mode, hilbert_options(cfg));
        os << "N" << comp << ": columns=" << fr.columns << " K2=" << fr.k2 << " hilbert_bound=" << factor_pow2(fr.hilbert_bound)
           << " weight_bound=" << factor_pow2(fr.weight_bound) << " surfaces=" << fr.surfaces.size() << '\n';
        for (const auto& f : fr.surfaces) {
            os << "  weight=" << f.weight << " octagons=" << octagon_count(f.vector) << " " << describe(f.vector, tri)
               << " :";
            for (const auto& x : f.vector.coords()) os << ' ' << x;
            os << '\n';
            all.push_back(f.vector);
        }
    }

    if (cfg.weight_cap > 0) {
        // every enumerated surface must split over the fundamentals
        HilbertBasis hb;
        hb.system = matching_system(tri, mode);
        for (const auto& v : all) hb.elements.push_back(v.coords());
        EnumerateOptions eo;
        eo.mode = mode;
        eo.weight_cap = cfg.weight_cap;
        auto surfaces = enumerate_admissible(tri, eo);
        std::size_t failed = 0;
        for (const auto& s : surfaces) {
            try {
                decompose(s, hb);
            } catch (const InvalidInput&) {
                ++failed;
            }
        }
        os << "oracle: " << surfaces.size() << " surfaces of weight <= " << cfg.weight_cap << ", "
           << (surfaces.size() - failed) << " decomposed\n";
        if (failed) {
            out << os.str();
            throw InternalError(std::to_string(failed) + " enumerated surfaces do not decompose");
        }
    }

    out << os.str();
    Artifacts a(cfg, "fundamental");
    a.add("fundamental.txt", os.str());
    a.add("fundamental.vec", serialize_list(all));
    a.commit();
    return kOk;
}

std::vector<NormalVector> vectors_of(const SphereSystem& s) {
    std::vector<NormalVector> vs;
    for (const auto& c : s.components) vs.push_back(c.vector);
    return vs;
}

SphereSystem run_sigma(const Triangulation& tri, const Config& cfg) {
    SigmaOptions o;
    o.hilbert = hilbert_options(cfg);
    o.require_degree3 = !cfg.allow_low_degree;
    return construct_sigma(tri, o);
}

int cmd_sigma(const Config& cfg, std::ostream& out) {
    auto tri = parse_triangulation(slurp(cfg.input));
    auto s = run_sigma(tri, cfg);
    auto m = verify_maximal(tri, s, hilbert_options(cfg));
    out << serialize(s) << "maximality: " << serialize(m);
    Artifacts a(cfg, "sigma");
    a.add("sigma.txt", serialize(s));
    a.add("sigma.vec", serialize_list(vectors_of(s)));
    a.add("maximality.txt", serialize(m));
    a.commit();
    return m.all_pass() ? kOk : kInternal;
}

int cmd_tilde_sigma(const Config& cfg, std::ostream& out, const std::string& command) {
    auto tri = parse_triangulation(slurp(cfg.input));
    auto s = run_sigma(tri, cfg);
    auto m = verify_maximal(tri, s, hilbert_options(cfg));
    auto ts = construct_tilde_sigma(tri, s, hilbert_options(cfg));
    auto r = bound_report(tri, s, ts);
    if (command == "tilde-sigma") out << serialize(ts);
    out << "maximality: " << serialize(m) << "bounds: " << serialize(r);
    Artifacts a(cfg, command);
    a.add("sigma.txt", serialize(s));
    a.add("sigma.vec", serialize_list(vectors_of(s)));
    a.add("maximality.txt", serialize(m));
    a.add("tilde_sigma.txt", serialize(ts));
    a.add("tilde_sigma.vec", serialize_list(vectors_of(ts)));
    a.add("bounds.txt", serialize(r));
    a.commit();
    return m.all_pass() && r.all_pass() ? kOk : kInternal;
}

int cmd_bounds(const Config& cfg, std::ostream& out) {
    if (!cfg.input.empty()) return cmd_tilde_sigma(cfg, out, "bounds");
    std::ostringstream os;
    if (cfg.tets > 0) {
        Integer b = theorem_bound(cfg.tets);
        os << "n=" << cfg.tets << " bound=" << factor_pow2(b) << '\n';
        os << "b(L) < 2^" << 196 * cfg.tets * cfg.tets << '\n';
        os << "c(H,T1) < 2^" << 196 * cfg.tets * cfg.tets << '\n';
        os << "decimal=" << b << '\n';
    } else if (!cfg.bridge.empty()) {
        Integer b = parse_big(cfg.bridge);
        int n = min_tets_for_bridge(b);
        // 2^(196 (n-1)^2) <= b < 2^(196 n^2), the exact form of 14 n > sqrt(log2 b) >= 14 (n-1)
        bool upper = b < theorem_bound(n);
        bool lower = n == 1 || theorem_bound(n - 1) <= b;
        os << "b=" << factor_pow2(b) << " n_min=" << n << '\n';
        os << "check: " << (upper && lower ? "pass" : "FAIL") << '\n';
        if (!(upper && lower)) {
            out << os.str();
            return kInternal;
        }
    } else {
        throw InvalidInput("bounds needs a triangulation, --tets or --bridge");
    }
    out << os.str();
    Artifacts a(cfg, "bounds");
    a.add("bounds.txt", os.str());
    a.commit();
    return kOk;
}

int cmd_decompose(const Config& cfg, std::ostream& out) {
    auto tri = parse_triangulation(slurp(cfg.input));
    auto vs = parse_normal_vector_list(slurp(cfg.vectors));
    const Mode mode = parse_mode(cfg.mode);

    HilbertOptions o = hilbert_options(cfg);
    const int k = stride(mode);
    for (int t = 0; t < tri.size(); ++t) {
        std::vector<int> g;
        for (int j = 4; j < k; ++j) g.push_back(t * k + j);
        o.exclusive_groups.push_back(g);
    }
    auto basis = hilbert_basis(matching_system(tri, mode), o);

    std::ostringstream os;
    os << "basis: " << serialize(basis);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        NormalVector v = vs[i];
        if (v.tets() != tri.size()) throw InvalidInput("vector " + std::to_string(i) + " has the wrong tetrahedron count");
        if (v.mode() != mode) v = mode == Mode::TwoNormal ? v.promoted() : v.demoted();
        if (auto bad = check_admissible(v, tri)) throw InvalidInput("vector " + std::to_string(i) + ": " + bad->message);
        std::vector<Term> terms;
        try {
            terms = decompose(v, basis);
        } catch (const InvalidInput& e) {
            out << os.str();
            throw InternalError(std::string("admissible vector without a decomposition: ") + e.what());
        }
        os << "vector " << i << ":";
        for (const auto& t : terms) os << ' ' << t.multiplicity << "*e" << t.element;
        os << '\n';
    }
    out << os.str();
    Artifacts a(cfg, "decompose");
    a.add("basis.txt", serialize(basis));
    a.add("decomposition.txt", os.str());
    a.commit();
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Normal surface computations on closed triangulated 3-manifolds", "nsurf"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "Directory for artifacts and manifest.json");
        sub->add_option("--hilbert-cap", cfg.hilbert_cap, "Hilbert basis working-set cap")->check(CLI::PositiveNumber);
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "1n or 2n")->transform(CLI::IsMember({"1n", "2n"}, CLI::ignore_case));
    };

    auto* validate = app.add_subcommand("validate", "Check a gluing table and print its skeleton");
    validate->add_option("triangulation", cfg.input)->required();
    validate->add_option("--out", cfg.out_dir);

    auto* fundamental = app.add_subcommand("fundamental", "Fundamental surfaces of the truncated manifold");
    fundamental->add_option("triangulation", cfg.input)->required();
    fundamental->add_option("--component", cfg.component, "Only this complement component")->check(CLI::NonNegativeNumber);
    fundamental
        ->add_option("--weight-cap", cfg.weight_cap, "Cross-check against enumeration up to this weight")
        ->check(CLI::PositiveNumber)
        ->excludes("--component");
    add_mode(fundamental);
    add_common(fundamental);

    auto* sigma = app.add_subcommand("sigma", "Maximal system of normal spheres");
    sigma->add_option("triangulation", cfg.input)->required();
    sigma->add_flag("--allow-low-degree", cfg.allow_low_degree, "Accept edges of degree < 3");
    add_common(sigma);

    auto* tilde = app.add_subcommand("tilde-sigma", "Extend the sphere system by one-octagon spheres");
    tilde->add_option("triangulation", cfg.input)->required();
    tilde->add_flag("--allow-low-degree", cfg.allow_low_degree, "Accept edges of degree < 3");
    add_common(tilde);

    auto* bounds = app.add_subcommand("bounds", "Bound report, or the theorem calculators");
    bounds->add_option("triangulation", cfg.input);
    auto* tets_opt = bounds->add_option("--tets", cfg.tets, "2^(196 n^2) for n tetrahedra")->check(CLI::PositiveNumber);
    bounds->add_option("--bridge", cfg.bridge, "Least n for bridge number b (decimal or 2^k)")->excludes(tets_opt);
    bounds->add_flag("--allow-low-degree", cfg.allow_low_degree, "Accept edges of degree < 3");
    add_common(bounds);

    auto* decomp = app.add_subcommand("decompose", "Write vectors as sums of fundamental surfaces");
    decomp->add_option("triangulation", cfg.input)->required();
    decomp->add_option("vectors", cfg.vectors)->required();
    add_mode(decomp);
    add_common(decomp);

    std::vector<const char*> argv{"nsurf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(cfg, out);
        if (*fundamental) return cmd_fundamental(cfg, out);
        if (*sigma) return cmd_sigma(cfg, out);
        if (*tilde) return cmd_tilde_sigma(cfg, out, "tilde-sigma");
        if (*bounds) return cmd_bounds(cfg, out);
        if (*decomp) return cmd_decompose(cfg, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace nsurf::cli
