#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "toric/bits.hpp"
#include "toric/lattice.hpp"

namespace toric {

// Tree of all walks without return through the root qubit q, unrolled to a
// fixed depth. Vertex levels run 0..depth-1 (level 0 holds the two
// endpoints of the root edge); edges below level depth-1 are dangling.
//
// The tree is stored in breadth-first order, so every vertex and every edge
// appears after its parent. Edge 0 is the root edge.
class DecodingTree {
public:
    static constexpr int kNone = -1;
    static constexpr int kDefaultDepthCap = 12;

    struct Vertex {
        int check = kNone;
        int level = 0;
        int parent_edge = kNone;
        std::array<int, 3> children{kNone, kNone, kNone};
    };
    struct Edge {
        int qubit = kNone;
        // ends[0] is the upper vertex (for the root, the first endpoint);
        // ends[1] == kNone marks a dangling edge.
        std::array<int, 2> ends{kNone, kNone};
        bool dangling() const { return ends[1] == kNone; }
    };

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    int depth() const { return depth_; }
    int root_qubit() const { return edges_.front().qubit; }

    // Parent edge followed by the three children.
    std::array<int, 4> incident_edges(int vertex) const;
    // The end of `edge` that is not `vertex` (kNone for a dangling free end).
    int other_end(int edge, int vertex) const;

    std::string to_dot(const BitVector* labels = nullptr) const;

private:
    friend DecodingTree build_tree(const ToricLattice&, int, int, int);
    int depth_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

// Throws InvalidParameter for depth < 1 and ResourceLimit above `depth_cap`.
DecodingTree build_tree(const ToricLattice& lat, int qubit, int depth,
                        int depth_cap = DecodingTree::kDefaultDepthCap);

// One label per tree edge.
class TreeConfiguration : public BitVector {
public:
    using BitVector::BitVector;
    TreeConfiguration() = default;
    explicit TreeConfiguration(BitVector bits) : BitVector(std::move(bits)) {}
};

struct MinConfigWeights {
    int w_circ = 0;    // minimal root-unlabeled configuration weight
    int w_bullet = 0;  // minimal root-labeled configuration weight
    int app() const { return w_bullet - w_circ; }
};

MinConfigWeights min_config_weights(const DecodingTree& tree, const SyndromeVector& s);

bool is_configuration(const DecodingTree& tree, const SyndromeVector& s, const BitVector& labels);

// Every configuration with the given root label. Exponential in the number
// of vertices; throws ResourceLimit for depth > kEnumerationDepthCap.
inline constexpr int kEnumerationDepthCap = 2;
std::vector<TreeConfiguration> enumerate_configurations(const DecodingTree& tree,
                                                        const SyndromeVector& s, bool root_label);

// Flips each edge once per occurrence in `walk`. The walk must enter from the
// free end of a dangling edge and leave through the free end of another.
// Throws InvalidWalk otherwise.
TreeConfiguration invert_walk(const DecodingTree& tree, const TreeConfiguration& cfg,
                              std::span<const int> walk);

// Iteration i of the flooded MS corresponds to a tree of depth i + offset.
// Pinned by the all-zero-syndrome calibration (app = 1 + 2i).
inline constexpr int kIterationDepthOffset = 0;
inline int tree_depth_for_iteration(int iteration) { return iteration + kIterationDepthOffset; }

}  // namespace toric
