#pragma once

#include <boost/pending/disjoint_sets.hpp>

#include <cstddef>
#include <vector>

namespace nsurf::detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : n_(n), sets_(n) {}

    void unite(std::size_t a, std::size_t b) { sets_.union_set(a, b); }
    std::size_t find(std::size_t a) { return sets_.find_set(a); }

    // Class labels 0..k-1 assigned in order of each class's least element.
    std::vector<int> labels(int* count = nullptr) {
        std::vector<int> root_label(n_, -1);
        std::vector<int> out(n_);
        int next = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t r = find(i);
            if (root_label[r] < 0) root_label[r] = next++;
            out[i] = root_label[r];
        }
        if (count) *count = next;
        return out;
    }

private:
    std::size_t n_;
    boost::disjoint_sets_with_storage<> sets_;
};

}  // namespace nsurf::detail
