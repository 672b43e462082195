#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toric/decoder.hpp"
#include "toric/lattice.hpp"

namespace toric {

inline constexpr int kOracleWeightCap = 4;

struct ExplanationSet {
    SyndromeVector syndrome;
    int min_weight = -1;              // -1 when truncated
    std::vector<ErrorVector> errors;  // all minimum-weight explanations, sorted
    bool truncated = false;           // no explanation within weight_bound
};

// All minimum-weight errors e with He = s, |e| <= weight_bound.
//
// Depth-first search that always branches on the four qubits of the first
// unsatisfied check. Every explanation of weight <= 4 on a torus with
// d > 2*weight_bound is a forest of paths (a cycle costs >= 4 more), so the
// search is complete. Throws Unsupported if weight_bound > 4 or 2*weight_bound
// >= d, InvalidParameter on a fake syndrome.
ExplanationSet min_weight_explanations(const ToricLattice& lat, const SyndromeVector& s,
                                       int weight_bound);

// True iff another error of weight <= |e| has the same syndrome.
bool is_degenerate(const ToricLattice& lat, const ErrorVector& e);

// Bits on which all minimum-weight explanations agree; the rest are drawn
// from a generator seeded by `rng_seed`.
ErrorVector localized_ml_decode(const ToricLattice& lat, const SyndromeVector& s,
                                std::uint64_t rng_seed);

struct RadiusTally {
    int weight = 0;
    std::int64_t total = 0;
    std::int64_t non_degenerate = 0;
    std::int64_t decoded_non_degenerate = 0;
    std::int64_t degenerate = 0;
    std::int64_t decoded_degenerate = 0;
    std::int64_t failing_non_degenerate = 0;
    int max_iterations_non_degenerate = 0;  // worst convergence among decoded
    std::vector<ErrorVector> witnesses;      // failing non-degenerate errors (capped)
};

struct RadiusReport {
    int d = 0;
    DecoderConfig cfg;
    bool translation_symmetry = false;
    std::vector<RadiusTally> tallies;  // weights 1..w_max
    int omega = 0;
    // omega reached w_max without a failure, so it is only a lower bound
    bool omega_is_lower_bound = false;

    std::string to_json(const ToricLattice& lat) const;
    std::string table() const;
};

struct RadiusScanOptions {
    int jobs = 1;
    std::size_t witness_cap = 32;
    // Process every sample_stride-th enumerated representative (1 = all).
    int sample_stride = 1;
};

// Enumerates every error of weight 1..w_max (or one representative per
// translation orbit, weighted by orbit size), classifies it and decodes its
// syndrome. An error counts as decoded when the decoder converges and the
// residual has trivial homology.
RadiusReport radius_scan(const ToricLattice& lat, const DecoderConfig& cfg, int w_max,
                         bool use_translation_symmetry, const RadiusScanOptions& opts = {});

// Representatives of the translation orbits of weight-w errors: the
// lexicographically smallest translate of each orbit, with orbit size.
struct OrbitRepresentative {
    std::vector<int> qubits;
    int orbit_size = 0;
};
std::vector<OrbitRepresentative> translation_representatives(const ToricLattice& lat, int weight);

}  // namespace toric
