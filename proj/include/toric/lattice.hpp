#pragma once

#include <array>
#include <climits>
#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "toric/bits.hpp"
#include "toric/tanner_graph.hpp"

namespace toric {

enum class Orientation : unsigned char { H = 0, V = 1 };

// H(r,c) joins vertices (r,c)-(r,c+1); V(r,c) joins (r,c)-(r+1,c), mod d.
// Rows grow downward, so "above" (r,c) is (r-1,c).
struct EdgeId {
    Orientation orientation = Orientation::H;
    int row = 0;
    int col = 0;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct VertexId {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct PlaquetteId {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const PlaquetteId&, const PlaquetteId&) = default;
};

std::string to_string(const EdgeId& e);

// Immutable d x d torus. Qubits live on edges, checks on vertices.
//
// Qubit index: H(r,c) -> r*d + c, V(r,c) -> d*d + r*d + c.
// Check and plaquette index: r*d + c.
class ToricLattice {
public:
    explicit ToricLattice(int d);

    int distance() const { return d_; }
    int n_qubits() const { return 2 * d_ * d_; }
    int n_checks() const { return d_ * d_; }
    int n_plaquettes() const { return d_ * d_; }

    int wrap(int x) const { return ((x % d_) + d_) % d_; }

    int qubit_index(const EdgeId& e) const;
    EdgeId edge(int q) const;
    int check_index(const VertexId& v) const { return wrap(v.row) * d_ + wrap(v.col); }
    VertexId vertex(int c) const { return {c / d_, c % d_}; }
    int plaquette_index(const PlaquetteId& p) const { return wrap(p.row) * d_ + wrap(p.col); }
    PlaquetteId plaquette(int p) const { return {p / d_, p % d_}; }

    // H(r,c), H(r,c-1), V(r,c), V(r-1,c).
    std::span<const int, 4> check_qubits(int c) const {
        return std::span<const int, 4>(check_qubits_.data() + 4 * c, 4);
    }
    std::span<const int, 2> qubit_checks(int q) const {
        return std::span<const int, 2>(qubit_checks_.data() + 2 * q, 2);
    }
    int other_end(int q, int c) const {
        auto ends = qubit_checks(q);
        return ends[0] == c ? ends[1] : ends[0];
    }
    // q1..q4 clockwise: top H(r,c), right V(r,c+1), bottom H(r+1,c), left V(r,c).
    std::span<const int, 4> plaquette_qubits(int p) const {
        return std::span<const int, 4>(plaquette_qubits_.data() + 4 * p, 4);
    }
    // c1..c4 clockwise from the top-left corner (r,c).
    std::span<const int, 4> plaquette_corners(int p) const {
        return std::span<const int, 4>(plaquette_corners_.data() + 4 * p, 4);
    }

    ErrorVector make_error(std::initializer_list<EdgeId> edges) const;
    ErrorVector make_error(std::span<const int> qubits) const;
    SyndromeVector make_syndrome(std::initializer_list<VertexId> checks) const;
    SyndromeVector make_syndrome(std::span<const int> checks) const;
    ErrorVector plaquette_boundary(const PlaquetteId& p) const;

    int translate_qubit(int q, int dr, int dc) const;
    int translate_check(int c, int dr, int dc) const;
    ErrorVector translate(const ErrorVector& e, int dr, int dc) const;
    SyndromeVector translate(const SyndromeVector& s, int dr, int dc) const;

    friend bool operator==(const ToricLattice& a, const ToricLattice& b) { return a.d_ == b.d_; }

private:
    int d_;
    std::vector<int> check_qubits_;
    std::vector<int> qubit_checks_;
    std::vector<int> plaquette_qubits_;
    std::vector<int> plaquette_corners_;
};

ToricLattice build_lattice(int d);

SyndromeVector syndrome_of(const ToricLattice& lat, const ErrorVector& e);

// L1 metric on the torus grid.
int check_distance(const ToricLattice& lat, const VertexId& a, const VertexId& b);
int check_distance(const ToricLattice& lat, int a, int b);

struct SyndromeMetrics {
    static constexpr int kInfinite = INT_MAX;
    int min_pairwise_distance = kInfinite;  // kInfinite for one unsatisfied check
    int diameter = 0;
};

// Throws UndefinedMetrics on the zero syndrome.
SyndromeMetrics syndrome_metrics(const ToricLattice& lat, const SyndromeVector& s);

struct Homology {
    bool wind_h = false;
    bool wind_v = false;
    bool trivial() const { return !wind_h && !wind_v; }
    friend bool operator==(const Homology&, const Homology&) = default;
};

// Parity over the cuts {H(r,0)} and {V(0,c)}. Throws NotACycle if Hr != 0.
Homology homology_class(const ToricLattice& lat, const ErrorVector& r);

// Translation-only patch embedding. The lexicographically smallest support
// element (in unwrapped patch coordinates) lands on `anchor`.
ErrorVector embed_patch(const ToricLattice& src, const ToricLattice& dst,
                        const ErrorVector& e, const VertexId& anchor);
SyndromeVector embed_patch(const ToricLattice& src, const ToricLattice& dst,
                           const SyndromeVector& s, const VertexId& anchor);

// Variable v <-> qubit v, check c <-> vertex c.
TannerGraph to_tanner(const ToricLattice& lat);

// Reflections through a check. Transpose: (r0+a, c0+b) -> (r0+b, c0+a);
// AntiTranspose: -> (r0-b, c0-a); MirrorRows: -> (r0-a, c0+b);
// MirrorCols: -> (r0+a, c0-b).
enum class Reflection { Transpose, AntiTranspose, MirrorRows, MirrorCols };

int reflect_check(const ToricLattice& lat, int c, const VertexId& center, Reflection kind);
int reflect_qubit(const ToricLattice& lat, int q, const VertexId& center, Reflection kind);
SyndromeVector reflect(const ToricLattice& lat, const SyndromeVector& s, const VertexId& center,
                       Reflection kind);

}  // namespace toric
