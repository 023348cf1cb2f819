#include "nsurf/enumerate.hpp"

#include <algorithm>
#include <deque>

namespace nsurf {

namespace {

class Enumerator {
public:
    Enumerator(const Triangulation& tri, const EnumerateOptions& opts)
        : tri_(tri), opts_(opts), n_(tri.size()), width_(stride(opts.mode)) {
        coords_.assign(static_cast<std::size_t>(n_ * width_), 0);
        assigned_.assign(static_cast<std::size_t>(n_), false);
        // Breadth-first tetrahedron order, so every later tetrahedron meets an
        // earlier one and most triangle counts are forced.
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        for (int root = 0; root < n_; ++root) {
            if (seen[static_cast<std::size_t>(root)]) continue;
            std::deque<int> queue{root};
            seen[static_cast<std::size_t>(root)] = true;
            while (!queue.empty()) {
                int t = queue.front();
                queue.pop_front();
                order_.push_back(t);
                for (int f = 0; f < 4; ++f) {
                    int u = tri.gluing(t, f).tet;
                    if (!seen[static_cast<std::size_t>(u)]) {
                        seen[static_cast<std::size_t>(u)] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }

    std::vector<NormalVector> run() {
        tet(0);
        std::vector<NormalVector> out;
        out.reserve(found_.size());
        for (const auto& raw : found_) {
            std::vector<Integer> c(raw.begin(), raw.end());
            out.emplace_back(opts_.mode, n_, std::move(c));
        }
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return surface_less(a, b, tri_); });
        return out;
    }

private:
    std::int64_t& at(int t, int k) { return coords_[static_cast<std::size_t>(t * width_ + k)]; }

    std::int64_t arc(int t, int f, int c) {
        std::int64_t a = at(t, c);
        for (int k = 4; k < width_; ++k)
            if (disc::arc_incidence(k, f, c)) a += at(t, k);
        return a;
    }

    std::int64_t slot_weight(int t, int e) {
        auto [u, w] = kEdgeVertices[static_cast<std::size_t>(e)];
        std::int64_t s = at(t, u) + at(t, w);
        for (int k = 4; k < width_; ++k) s += at(t, k) * disc::edge_crossings(k, u, w);
        return s;
    }

    // Sum over edge classes of the largest known slot weight; -1 when two
    // complete slots of one class already disagree.
    std::int64_t weight_lower_bound(int current) {
        const auto& sk = tri_.skeleton();
        std::int64_t total = 0;
        for (int ec = 0; ec < sk.edge_count; ++ec) {
            std::int64_t best = 0, exact = -1;
            for (const auto& s : sk.edge_slots[static_cast<std::size_t>(ec)]) {
                bool done = assigned_[static_cast<std::size_t>(s.tet)];
                if (!done && s.tet != current) continue;
                std::int64_t w = slot_weight(s.tet, s.index);
                if (done) {
                    if (exact >= 0 && exact != w) return -1;
                    exact = w;
                }
                best = std::max(best, w);
            }
            total += best;
        }
        return total;
    }

    bool over_budget(int current) {
        auto lb = weight_lower_bound(current);
        return lb < 0 || lb > opts_.weight_cap;
    }

    void tet(std::size_t i) {
        if (i == order_.size()) {
            if (std::any_of(coords_.begin(), coords_.end(), [](auto x) { return x != 0; })) {
                if (found_.size() >= opts_.max_results)
                    throw ResourceLimit("more than " + std::to_string(opts_.max_results) + " admissible vectors");
                found_.push_back(coords_);
            }
            return;
        }
        family(i, 4, false);
    }

    void family(std::size_t i, int k, bool used) {
        int t = order_[i];
        if (k == width_) {
            triangle(i, 0);
            return;
        }
        at(t, k) = 0;
        family(i, k + 1, used);
        if (!(opts_.compatible && used)) {
            for (std::int64_t q = 1;; ++q) {
                at(t, k) = q;
                if (over_budget(t)) break;
                family(i, k + 1, true);
            }
        }
        at(t, k) = 0;
    }

    void triangle(std::size_t i, int c) {
        int t = order_[i];
        if (c == 4) {
            finish(i);
            return;
        }
        std::int64_t forced = -1;
        for (int f = 0; f < 4; ++f) {
            if (f == c) continue;
            const auto& g = tri_.gluing(t, f);
            if (g.tet == t || !assigned_[static_cast<std::size_t>(g.tet)]) continue;
            std::int64_t need = arc(g.tet, g.perm[f], g.perm[c]);
            for (int k = 4; k < width_; ++k)
                if (disc::arc_incidence(k, f, c)) need -= at(t, k);
            if (need < 0 || (forced >= 0 && forced != need)) return;
            forced = need;
        }
        if (forced >= 0) {
            at(t, c) = forced;
            if (!over_budget(t)) triangle(i, c + 1);
        } else {
            for (std::int64_t x = 0;; ++x) {
                at(t, c) = x;
                if (over_budget(t)) break;
                triangle(i, c + 1);
            }
        }
        at(t, c) = 0;
    }

    void finish(std::size_t i) {
        int t = order_[i];
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri_.gluing(t, f);
            if (g.tet != t && !assigned_[static_cast<std::size_t>(g.tet)]) continue;
            for (int c = 0; c < 4; ++c)
                if (c != f && arc(t, f, c) != arc(g.tet, g.perm[f], g.perm[c])) return;
        }
        assigned_[static_cast<std::size_t>(t)] = true;
        if (!over_budget(-1)) tet(i + 1);
        assigned_[static_cast<std::size_t>(t)] = false;
    }

    const Triangulation& tri_;
    EnumerateOptions opts_;
    int n_;
    int width_;
    std::vector<int> order_;
    std::vector<std::int64_t> coords_;
    std::vector<bool> assigned_;
    std::vector<std::vector<std::int64_t>> found_;
};

}  // namespace

std::vector<NormalVector> enumerate_admissible(const Triangulation& tri, const EnumerateOptions& opts) {
    if (opts.weight_cap < 0) throw InvalidInput("weight cap must be non-negative");
    return Enumerator(tri, opts).run();
}

}  // namespace nsurf
