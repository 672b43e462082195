#pragma once

#include <array>
#include <string>
#include <vector>

#include "toric/decoder.hpp"
#include "toric/lattice.hpp"
#include "toric/tanner_graph.hpp"

namespace toric {

// Positions of the ring checks c5..c16 around a plaquette, as offsets from
// its top-left corner c1. The twelve ring positions form the boundary of the
// 4x4 block of checks centred on the plaquette.
struct RingLayout {
    std::array<VertexId, 12> offsets;  // offsets[k] is c_{5+k}

    // Ring walked from `start` (0 = the check directly above c1, counting
    // clockwise) in the given direction.
    static RingLayout walk(int start, bool clockwise);
    // The layout used by the heuristic.
    static RingLayout standard();

    friend bool operator==(const RingLayout&, const RingLayout&) = default;
};

// Ring start and direction of RingLayout::standard().
inline constexpr int kRingStart = 9;
inline constexpr bool kRingClockwise = true;

// Label k in 1..16 around plaquette p.
int neighborhood_check(const ToricLattice& lat, const PlaquetteId& p, int label,
                       const RingLayout& layout = RingLayout::standard());

bool match_patterns(const ToricLattice& lat, const SyndromeVector& s, const PlaquetteId& p,
                    int pass, const RingLayout& layout = RingLayout::standard());

struct BlowupPlan {
    std::vector<PlaquetteId> plaquettes;  // insertion order

    bool contains(const PlaquetteId& p) const;
    std::string to_json() const;
};

bool plaquettes_adjacent(const ToricLattice& lat, const PlaquetteId& a, const PlaquetteId& b);

// `operations` (optional) receives the number of plaquette inspections.
BlowupPlan build_plan(const ToricLattice& lat, const SyndromeVector& s,
                      const RingLayout& layout = RingLayout::standard(),
                      long* operations = nullptr);

struct BlownGraph {
    TannerGraph graph;
    int n_original_qubits = 0;
    int n_original_checks = 0;
    // Blown variable -> original qubit, or -1 for a new parity variable.
    std::vector<int> variable_qubit;
    // Original qubit -> blown variable, or -1 if the qubit was removed.
    std::vector<int> qubit_variable;
    struct Blown {
        PlaquetteId plaquette;
        std::array<int, 4> qubits;     // q1..q4
        std::array<int, 4> corners;    // c1..c4
        std::array<int, 4> variables;  // b1..b4
        int center_check = -1;
    };
    std::vector<Blown> blown;

    // Surviving bits of s, followed by a 0 for every center check.
    SyndromeVector extend(const SyndromeVector& s) const;
    // Image of an original error: surviving qubits copied, b_k the parity of
    // the two removed qubits at corner c_k.
    BitVector project(const ErrorVector& e) const;
    std::string dump() const;
};

// Throws InvalidPlan if two planned plaquettes share an edge, unless
// `allow_adjacent` is set.
BlownGraph apply_blowup(const ToricLattice& lat, const BlowupPlan& plan, bool allow_adjacent = false);

// Plaquette qubits from the corner parities b1..b4: the lighter of the two
// solutions, q1 = 0 on a tie. Throws InconsistentEstimate on odd b-sum.
std::array<bool, 4> unblow_plaquette(const std::array<bool, 4>& b);
ErrorVector unblow(const BitVector& blown_estimate, const BlownGraph& blown);

struct SbDecodeOutcome : DecodeOutcome {
    BlowupPlan plan;
};

// Plan, blow up, run the decoder on the blown graph, map back. The estimate
// is unblown only when the blown run converged.
SbDecodeOutcome decode_sb_ms(const ToricLattice& lat, const SyndromeVector& s, const DecoderConfig& cfg,
                             const RingLayout& layout = RingLayout::standard());

}  // namespace toric
