#include "nsurf/hilbert.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <queue>
#include <sstream>

namespace nsurf {

namespace {

using Word = std::uint64_t;

struct Elem {
    std::vector<std::int64_t> x;
    std::vector<Word> supp;
    std::int64_t val = 0;   // value of the equation being processed
    std::int64_t norm = 0;  // coordinate sum
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceLimit("hilbert basis: 64-bit overflow in a candidate");
    return r;
}

// Per-equation completion: every element is a solution of the equations
// already processed; the current equation's value is split by sign, and a
// candidate s is dropped when an element w with w <= s, val(w) of the same
// sign as val(s) (or zero) and |val(w)| <= |val(s)| is already kept. The
// queue runs in coordinate-sum order, so all possible reducers of s are
// kept before s is looked at. Elements of value zero at the end solve the
// equation.
class Saturation {
public:
    Saturation(const IntegerMatrix& A, const HilbertOptions& opts) : A_(A), opts_(opts) {
        m_ = A.cols();
        words_ = (m_ + 63) / 64;
        for (const auto& g : opts.exclusive_groups) {
            std::vector<Word> mask(words_, 0);
            for (int c : g) {
                if (c < 0 || static_cast<std::size_t>(c) >= m_) throw InvalidInput("exclusive group column out of range");
                mask[static_cast<std::size_t>(c) / 64] |= Word(1) << (c % 64);
            }
            groups_.push_back(std::move(mask));
        }
    }

    std::vector<std::vector<std::int64_t>> run() {
        for (std::size_t c = 0; c < m_; ++c) {
            Elem e;
            e.x.assign(m_, 0);
            e.x[c] = 1;
            e.supp.assign(words_, 0);
            e.supp[c / 64] |= Word(1) << (c % 64);
            e.norm = 1;
            basis_.push_back(std::move(e));
        }
        std::vector<bool> done(A_.rows(), false);
        for (std::size_t step = 0; step < A_.rows(); ++step) {
            std::size_t r = pick_equation(done);
            done[r] = true;
            process(r);
        }
        std::vector<std::vector<std::int64_t>> out;
        for (auto& e : basis_) out.push_back(std::move(e.x));
        return out;
    }

    std::size_t peak() const { return peak_; }

private:
    std::int64_t value(std::size_t r, const std::vector<std::int64_t>& x) const {
        std::int64_t v = 0;
        for (std::size_t c = 0; c < m_; ++c)
            if (int a = A_(r, c)) v = checked_add(v, a * x[c]);
        return v;
    }

    // Fewest sign-opposed pairs first; ties by fewest nonzero entries, then index.
    std::size_t pick_equation(const std::vector<bool>& done) const {
        std::size_t best = A_.rows();
        std::pair<std::uint64_t, std::size_t> best_key{};
        for (std::size_t r = 0; r < A_.rows(); ++r) {
            if (done[r]) continue;
            std::uint64_t pos = 0, neg = 0;
            for (const auto& e : basis_) {
                auto v = value(r, e.x);
                pos += v > 0;
                neg += v < 0;
            }
            std::size_t nnz = 0;
            for (std::size_t c = 0; c < m_; ++c) nnz += A_(r, c) != 0;
            std::pair<std::uint64_t, std::size_t> key{pos * neg, nnz};
            if (best == A_.rows() || key < best_key) {
                best = r;
                best_key = key;
            }
        }
        return best;
    }

    bool compatible(const std::vector<Word>& supp) const {
        for (const auto& g : groups_) {
            int bits = 0;
            for (std::size_t w = 0; w < words_; ++w) bits += std::popcount(supp[w] & g[w]);
            if (bits > 1) return false;
        }
        return true;
    }

    static bool reduces(const Elem& w, const Elem& s) {
        if (w.norm > s.norm) return false;
        if (w.val > 0 && s.val < w.val) return false;
        if (w.val < 0 && s.val > w.val) return false;
        for (std::size_t i = 0; i < w.supp.size(); ++i)
            if (w.supp[i] & ~s.supp[i]) return false;
        for (std::size_t c = 0; c < w.x.size(); ++c)
            if (w.x[c] > s.x[c]) return false;
        return true;
    }

    void process(std::size_t r) {
        std::vector<Elem> pool;
        using Key = std::pair<std::int64_t, std::size_t>;
        std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
        for (auto& e : basis_) {
            e.val = value(r, e.x);
            queue.emplace(e.norm, pool.size());
            pool.push_back(std::move(e));
        }
        basis_.clear();
        // Kept elements by sign of value: zero, positive, negative.
        std::array<std::vector<std::size_t>, 3> kept;
        auto bucket = [](std::int64_t v) { return v == 0 ? 0 : v > 0 ? 1 : 2; };
        std::size_t kept_total = 0, generated = 0;

        while (!queue.empty()) {
            std::size_t id = queue.top().second;
            queue.pop();
            const Elem& s = pool[id];
            int b = bucket(s.val);
            auto hit = [&](const std::vector<std::size_t>& ks) {
                return std::any_of(ks.begin(), ks.end(), [&](std::size_t k) { return reduces(pool[k], s); });
            };
            bool reduced = hit(kept[0]) || (b != 0 && hit(kept[static_cast<std::size_t>(b)]));
            if (reduced) {
                pool[id].x = {};
                pool[id].supp = {};
                continue;
            }
            kept[static_cast<std::size_t>(b)].push_back(id);
            if (++kept_total > opts_.max_elements)
                throw ResourceLimit("hilbert basis: working set exceeds " + std::to_string(opts_.max_elements));
            peak_ = std::max(peak_, kept_total);
            if (b == 0) continue;
            const auto& partners = kept[b == 1 ? 2u : 1u];
            for (std::size_t k : partners) {
                const Elem& p = pool[k];
                const Elem& q = pool[id];
                Elem sum;
                sum.supp.resize(words_);
                for (std::size_t w = 0; w < words_; ++w) sum.supp[w] = p.supp[w] | q.supp[w];
                if (!groups_.empty() && !compatible(sum.supp)) continue;
                sum.x.resize(m_);
                for (std::size_t c = 0; c < m_; ++c) sum.x[c] = checked_add(p.x[c], q.x[c]);
                sum.val = checked_add(p.val, q.val);
                sum.norm = checked_add(p.norm, q.norm);
                if (++generated > opts_.max_queue)
                    throw ResourceLimit("hilbert basis: candidate queue exceeds " + std::to_string(opts_.max_queue));
                queue.emplace(sum.norm, pool.size());
                pool.push_back(std::move(sum));
            }
        }
        for (std::size_t k : kept[0]) basis_.push_back(std::move(pool[k]));
    }

    const IntegerMatrix& A_;
    const HilbertOptions& opts_;
    std::size_t m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<Word>> groups_;
    std::vector<Elem> basis_;
    std::size_t peak_ = 0;
};

bool leq(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace

Integer norm_bound(const IntegerMatrix& A) {
    const std::size_t m = A.cols();
    Integer k2 = A.max_row_norm2();
    if (k2 == 0) k2 = 1;
    Integer km;
    if (m % 2 == 0)
        km = boost::multiprecision::pow(k2, static_cast<unsigned>(m / 2));
    else
        km = ceil_sqrt(boost::multiprecision::pow(k2, static_cast<unsigned>(m)));
    return Integer(m) * km;
}

HilbertBasis hilbert_basis(const IntegerMatrix& A, const HilbertOptions& opts) {
    HilbertBasis hb;
    hb.system = A;
    hb.k2 = A.max_row_norm2();
    hb.bound = norm_bound(A);
    hb.restricted = !opts.exclusive_groups.empty();

    Saturation sat(A, opts);
    auto raw = sat.run();
    hb.peak_working_set = sat.peak();

    // The completion already yields minimal elements; re-check anyway.
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
        auto sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
        return sa != sb ? sa < sb : a < b;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            NSURF_ASSERT(!leq(raw[j], raw[i]), "hilbert basis element reducible by another");
        std::vector<Integer> e(raw[i].begin(), raw[i].end());
        NSURF_ASSERT(A.annihilates(e), "hilbert basis element is not a solution");
        for (const auto& c : e) {
            NSURF_ASSERT(c <= hb.bound, "hilbert basis element exceeds m*K^m");
            hb.max_entry = std::max(hb.max_entry, c);
        }
        hb.elements.push_back(std::move(e));
    }
    return hb;
}

std::vector<Term> decompose(const std::vector<Integer>& v, const HilbertBasis& basis, std::size_t max_steps) {
    const std::size_t m = basis.system.cols();
    if (v.size() != m) throw InvalidInput("decompose: vector has " + std::to_string(v.size()) + " entries, system has " +
                                          std::to_string(m) + " columns");
    for (const auto& x : v)
        if (x < 0) throw InvalidInput("decompose: negative entry");
    if (!basis.system.annihilates(v)) throw InvalidInput("decompose: vector does not solve the system");

    const auto& E = basis.elements;
    // last[c]: the last element with a nonzero entry c.
    std::vector<std::ptrdiff_t> last(m, -1);
    for (std::size_t j = 0; j < E.size(); ++j)
        for (std::size_t c = 0; c < m; ++c)
            if (E[j][c] > 0) last[c] = static_cast<std::ptrdiff_t>(j);

    std::vector<Integer> rem = v;
    std::vector<Integer> mult(E.size(), 0);
    std::size_t steps = 0;

    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (++steps > max_steps) throw ResourceLimit("decompose: search exceeds " + std::to_string(max_steps) + " steps");
        bool zero = true;
        for (std::size_t c = 0; c < m; ++c)
            if (rem[c] > 0) {
                zero = false;
                if (last[c] < static_cast<std::ptrdiff_t>(pos)) return false;
            }
        if (zero) return true;
        if (pos == E.size()) return false;
        const auto& e = E[pos];
        Integer most = -1;
        for (std::size_t c = 0; c < m; ++c)
            if (e[c] > 0) {
                Integer q = rem[c] / e[c];
                if (most < 0 || q < most) most = q;
            }
        for (Integer k = most; k >= 0; --k) {
            for (std::size_t c = 0; c < m; ++c) rem[c] -= k * e[c];
            mult[pos] = k;
            if (self(self, pos + 1)) return true;
            for (std::size_t c = 0; c < m; ++c) rem[c] += k * e[c];
        }
        mult[pos] = 0;
        return false;
    };
    if (!rec(rec, 0)) throw InvalidInput("decompose: vector is not a combination of the basis elements");

    std::vector<Term> out;
    for (std::size_t j = 0; j < E.size(); ++j)
        if (mult[j] > 0) out.push_back({j, mult[j]});
    return out;
}

std::vector<Term> decompose(const NormalVector& v, const HilbertBasis& basis, std::size_t max_steps) {
    return decompose(v.coords(), basis, max_steps);
}

std::string serialize(const HilbertBasis& basis) {
    std::ostringstream out;
    out << "m=" << basis.system.cols() << " rows=" << basis.system.rows() << " K2=" << basis.k2
        << " bound=" << factor_pow2(basis.bound) << " max_entry=" << basis.max_entry << " elements=" << basis.elements.size()
        << (basis.restricted ? " restricted=compatible" : "") << '\n';
    for (const auto& e : basis.elements) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace nsurf
