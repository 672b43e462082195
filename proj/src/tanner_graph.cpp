#include "toric/tanner_graph.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

TannerGraph::TannerGraph(int n_variables, int n_checks,
                         std::vector<std::pair<int, int>> incidences)
    : n_variables_(n_variables), n_checks_(n_checks) {
    if (n_variables < 0 || n_checks < 0) throw InvalidParameter("TannerGraph: negative size");
    std::sort(incidences.begin(), incidences.end());
    if (std::adjacent_find(incidences.begin(), incidences.end()) != incidences.end())
        throw InvalidParameter("TannerGraph: duplicate incidence");

    check_ptr_.assign(n_checks + 1, 0);
    var_ptr_.assign(n_variables + 1, 0);
    edge_variable_.reserve(incidences.size());
    edge_check_.reserve(incidences.size());
    for (auto [c, v] : incidences) {
        if (c < 0 || c >= n_checks || v < 0 || v >= n_variables)
            throw InvalidParameter("TannerGraph: incidence out of range");
        ++check_ptr_[c + 1];
        ++var_ptr_[v + 1];
        edge_check_.push_back(c);
        edge_variable_.push_back(v);
    }
    for (int c = 0; c < n_checks; ++c) check_ptr_[c + 1] += check_ptr_[c];
    for (int v = 0; v < n_variables; ++v) var_ptr_[v + 1] += var_ptr_[v];

    var_edges_.resize(incidences.size());
    std::vector<int> fill(var_ptr_.begin(), var_ptr_.end() - 1);
    for (int e = 0; e < n_edges(); ++e) var_edges_[fill[edge_variable_[e]]++] = e;
}

int TannerGraph::max_check_degree() const {
    int m = 0;
    for (int c = 0; c < n_checks_; ++c) m = std::max(m, check_degree(c));
    return m;
}

SyndromeVector TannerGraph::syndrome_of(const BitVector& bits) const {
    if (static_cast<int>(bits.size()) != n_variables_)
        throw InvalidParameter("TannerGraph::syndrome_of: size mismatch");
    SyndromeVector s(n_checks_, false);
    for (int c = 0; c < n_checks_; ++c) {
        bool parity = false;
        for (int e = check_begin(c); e < check_end(c); ++e) parity ^= bits[edge_variable_[e]];
        s.set(c, parity);
    }
    return s;
}

bool TannerGraph::satisfies(const BitVector& bits, const SyndromeVector& s) const {
    for (int c = 0; c < n_checks_; ++c) {
        bool parity = false;
        for (int e = check_begin(c); e < check_end(c); ++e) parity ^= bits[edge_variable_[e]];
        if (parity != s[c]) return false;
    }
    return true;
}

}  // namespace toric
