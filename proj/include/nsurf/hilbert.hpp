#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsurf/normal_coords.hpp"

namespace nsurf {

struct HilbertOptions {
    // Hard caps; exceeding either throws ResourceLimit (never a partial basis).
    std::size_t max_elements = 500'000;  // working set per equation
    std::size_t max_queue = 20'000'000;  // candidate sums generated per equation
    // Column groups of which at most one column may be nonzero. When given,
    // only the basis elements obeying every group are produced.
    std::vector<std::vector<int>> exclusive_groups;
};

struct HilbertBasis {
    IntegerMatrix system;
    std::vector<std::vector<Integer>> elements;  // coord_less order
    std::int64_t k2 = 0;                         // max squared row norm
    Integer bound;                               // m * K^m
    Integer max_entry;                           // largest component seen, for comparison with bound
    bool restricted = false;                     // exclusive groups applied
    std::size_t peak_working_set = 0;
};

// Minimal generating set of {x >= 0 : A x = 0}, or its elements obeying the
// exclusive groups (these are exactly the basis elements of the full monoid
// with such support).
HilbertBasis hilbert_basis(const IntegerMatrix& A, const HilbertOptions& opts = {});

// m * K^m with K^m rounded up; K^2 = 0 is taken as 1.
Integer norm_bound(const IntegerMatrix& A);

struct Term {
    std::size_t element = 0;
    Integer multiplicity;
};

// A decomposition of v as a non-negative combination of basis elements:
// greedy in basis order with exact backtracking. Throws InvalidInput if v is
// not a non-negative solution, ResourceLimit past max_steps.
std::vector<Term> decompose(const std::vector<Integer>& v, const HilbertBasis& basis,
                            std::size_t max_steps = 10'000'000);
std::vector<Term> decompose(const NormalVector& v, const HilbertBasis& basis, std::size_t max_steps = 10'000'000);

// Header "m=<cols> rows=<rows> K2=<k2> bound=<m*K^m> max_entry=<x> elements=<n>"
// then one element per line.
std::string serialize(const HilbertBasis& basis);

}  // namespace nsurf
