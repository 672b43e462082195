#pragma once

#include <span>
#include <utility>
#include <vector>

#include "toric/bits.hpp"

namespace toric {

// Bipartite variable/check graph in compressed form. Edge ids are grouped by
// check, so the edges of check c are the contiguous range
// [check_begin(c), check_end(c)).
class TannerGraph {
public:
    TannerGraph() = default;
    // `incidences` holds (check, variable) pairs; duplicates are rejected.
    TannerGraph(int n_variables, int n_checks,
                std::vector<std::pair<int, int>> incidences);

    int n_variables() const { return n_variables_; }
    int n_checks() const { return n_checks_; }
    int n_edges() const { return static_cast<int>(edge_variable_.size()); }

    int check_begin(int c) const { return check_ptr_[c]; }
    int check_end(int c) const { return check_ptr_[c + 1]; }
    int check_degree(int c) const { return check_ptr_[c + 1] - check_ptr_[c]; }
    std::span<const int> variable_edges(int v) const {
        return {var_edges_.data() + var_ptr_[v],
                static_cast<std::size_t>(var_ptr_[v + 1] - var_ptr_[v])};
    }
    int variable_degree(int v) const { return var_ptr_[v + 1] - var_ptr_[v]; }
    int edge_variable(int e) const { return edge_variable_[e]; }
    int edge_check(int e) const { return edge_check_[e]; }
    int max_check_degree() const;

    // Parity of `bits` (one per variable) at every check.
    SyndromeVector syndrome_of(const BitVector& bits) const;
    bool satisfies(const BitVector& bits, const SyndromeVector& s) const;

private:
    int n_variables_ = 0;
    int n_checks_ = 0;
    std::vector<int> check_ptr_;
    std::vector<int> edge_variable_;
    std::vector<int> edge_check_;
    std::vector<int> var_ptr_;
    std::vector<int> var_edges_;
};

}  // namespace toric
