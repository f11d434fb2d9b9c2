#pragma once

#include <vector>

#include "lipbox/caps.hpp"
#include "lipbox/rational.hpp"

namespace lipbox {

// { x in Q^dimension : rows[i] . x <= rhs[i] }.
struct Polytope {
    std::size_t dimension = 0;
    std::vector<Vec> rows;
    Vec rhs;

    void add(Vec row, Rational bound) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(bound));
    }
};

// Exact vertex set, sorted lexicographically. Throws UnboundedPolytope,
// DegeneratePolytope (empty or not full-dimensional) or CapExceeded.
std::vector<Vec> enumerate_vertices(const Polytope& p, const Caps& caps = {});

bool contains(const Polytope& p, VecView x);

}  // namespace lipbox
