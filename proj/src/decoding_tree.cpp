#include "toric/decoding_tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "toric/errors.hpp"

namespace toric {

std::array<int, 4> DecodingTree::incident_edges(int vertex) const {
    const auto& v = vertices_.at(vertex);
    return {v.parent_edge, v.children[0], v.children[1], v.children[2]};
}

int DecodingTree::other_end(int edge, int vertex) const {
    const auto& e = edges_.at(edge);
    if (e.ends[0] == vertex) return e.ends[1];
    if (e.ends[1] == vertex) return e.ends[0];
    throw InvalidParameter("DecodingTree::other_end: vertex not on edge");
}

DecodingTree build_tree(const ToricLattice& lat, int qubit, int depth, int depth_cap) {
    if (depth < 1) throw InvalidParameter("build_tree: depth must be >= 1");
    if (depth > depth_cap)
        throw ResourceLimit("build_tree: depth " + std::to_string(depth) + " exceeds cap " +
                            std::to_string(depth_cap));
    if (qubit < 0 || qubit >= lat.n_qubits()) throw InvalidParameter("build_tree: qubit out of range");

    DecodingTree t;
    t.depth_ = depth;
    // 2*3^k vertices at level k, 2*3^k edges at level k >= 1.
    std::size_t n_vertices = 0, n_edges = 1, layer = 2;
    for (int k = 0; k < depth; ++k) {
        n_vertices += layer;
        layer *= 3;
        n_edges += layer;
    }
    t.vertices_.reserve(n_vertices);
    t.edges_.reserve(n_edges);

    const auto ends = lat.qubit_checks(qubit);
    t.edges_.push_back({qubit, {0, 1}});
    t.vertices_.push_back({ends[0], 0, 0, {}});
    t.vertices_.push_back({ends[1], 0, 0, {}});

    for (int v = 0; v < static_cast<int>(t.vertices_.size()); ++v) {
        const int level = t.vertices_[v].level;
        const int check = t.vertices_[v].check;
        const int came_by = t.edges_[t.vertices_[v].parent_edge].qubit;
        int slot = 0;
        for (int q : lat.check_qubits(check)) {
            if (q == came_by) continue;
            const int e = static_cast<int>(t.edges_.size());
            DecodingTree::Edge edge{q, {v, DecodingTree::kNone}};
            if (level + 1 < depth) {
                edge.ends[1] = static_cast<int>(t.vertices_.size());
                t.vertices_.push_back({lat.other_end(q, check), level + 1, e, {}});
            }
            t.edges_.push_back(edge);
            t.vertices_[v].children[slot++] = e;
        }
    }
    return t;
}

MinConfigWeights min_config_weights(const DecodingTree& tree, const SyndromeVector& s) {
    const auto& vs = tree.vertices();
    const auto& es = tree.edges();
    // cost[v][a]: minimal labeled-edge count strictly below v given parent label a.
    std::vector<std::array<int, 2>> cost(vs.size());
    for (int v = tree.n_vertices() - 1; v >= 0; --v) {
        // best[p]: minimal weight of a child labeling with label parity p
        constexpr int kInf = std::numeric_limits<int>::max() / 4;
        std::array<int, 2> best{0, kInf};
        for (int e : vs[v].children) {
            const int child = es[e].ends[1];
            const int w0 = child == DecodingTree::kNone ? 0 : cost[child][0];
            const int w1 = 1 + (child == DecodingTree::kNone ? 0 : cost[child][1]);
            best = {std::min(best[0] + w0, best[1] + w1), std::min(best[0] + w1, best[1] + w0)};
        }
        const int sv = s[vs[v].check] ? 1 : 0;
        // parent label a plus child parity p must equal s(v)
        cost[v][0] = best[sv];
        cost[v][1] = best[sv ^ 1];
    }
    return {cost[0][0] + cost[1][0], 1 + cost[0][1] + cost[1][1]};
}

bool is_configuration(const DecodingTree& tree, const SyndromeVector& s, const BitVector& labels) {
    if (static_cast<int>(labels.size()) != tree.n_edges())
        throw InvalidParameter("is_configuration: labeling size mismatch");
    for (int v = 0; v < tree.n_vertices(); ++v) {
        bool parity = false;
        for (int e : tree.incident_edges(v)) parity ^= labels[e];
        if (parity != s[tree.vertices()[v].check]) return false;
    }
    return true;
}

std::vector<TreeConfiguration> enumerate_configurations(const DecodingTree& tree,
                                                        const SyndromeVector& s, bool root_label) {
    if (tree.depth() > kEnumerationDepthCap)
        throw ResourceLimit("enumerate_configurations: depth " + std::to_string(tree.depth()) +
                            " exceeds cap " + std::to_string(kEnumerationDepthCap));
    const auto& vs = tree.vertices();
    std::vector<TreeConfiguration> out;
    TreeConfiguration labels(tree.n_edges());
    labels.set(0, root_label);

    // Vertices are in breadth-first order, so the parent label of vertex v is
    // fixed by the time v is reached. Each vertex picks one of the 4 child
    // labelings of the required parity.
    auto recurse = [&](auto&& self, int v) -> void {
        if (v == tree.n_vertices()) {
            out.push_back(labels);
            return;
        }
        const bool parent = labels[vs[v].parent_edge];
        const bool want = s[vs[v].check] ^ parent;
        for (int mask = 0; mask < 8; ++mask) {
            if ((__builtin_popcount(mask) & 1) != static_cast<int>(want)) continue;
            for (int i = 0; i < 3; ++i) labels.set(vs[v].children[i], (mask >> i) & 1);
            self(self, v + 1);
        }
    };
    recurse(recurse, 0);
    return out;
}

TreeConfiguration invert_walk(const DecodingTree& tree, const TreeConfiguration& cfg,
                              std::span<const int> walk) {
    if (static_cast<int>(cfg.size()) != tree.n_edges())
        throw InvalidParameter("invert_walk: labeling size mismatch");
    if (walk.size() < 2) throw InvalidWalk("invert_walk: walk needs at least two edges");
    for (int e : walk)
        if (e < 0 || e >= tree.n_edges()) throw InvalidWalk("invert_walk: edge id out of range");
    const auto& es = tree.edges();
    if (!es[walk.front()].dangling() || !es[walk.back()].dangling())
        throw InvalidWalk("invert_walk: walk endpoints must be dangling edges");

    int at = es[walk.front()].ends[0];
    for (std::size_t i = 1; i < walk.size(); ++i) {
        const auto& e = es[walk[i]];
        if (e.ends[0] != at && e.ends[1] != at)
            throw InvalidWalk("invert_walk: consecutive edges do not share a vertex");
        at = tree.other_end(walk[i], at);
        if (at == DecodingTree::kNone && i + 1 != walk.size())
            throw InvalidWalk("invert_walk: walk leaves the tree before its last edge");
    }
    if (at != DecodingTree::kNone) throw InvalidWalk("invert_walk: walk does not exit through a dangling edge");

    TreeConfiguration out = cfg;
    for (int e : walk) out.flip(e);
    return out;
}

std::string DecodingTree::to_dot(const BitVector* labels) const {
    std::ostringstream os;
    os << "graph decoding_tree {\n";
    for (int v = 0; v < n_vertices(); ++v)
        os << "  v" << v << " [label=\"c" << vertices_[v].check << "\"];\n";
    for (int e = 0; e < n_edges(); ++e) {
        const auto& edge = edges_[e];
        const bool bold = labels && (*labels)[e];
        if (edge.dangling()) {
            os << "  d" << e << " [shape=point];\n";
            os << "  v" << edge.ends[0] << " -- d" << e;
        } else {
            os << "  v" << edge.ends[0] << " -- v" << edge.ends[1];
        }
        os << " [label=\"q" << edge.qubit << "\"" << (bold ? ", penwidth=3" : "") << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace toric
