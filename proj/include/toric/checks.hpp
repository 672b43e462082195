#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

// MS APP against the decoding-tree difference w_bullet - w_circ.
struct TreeCheckReport {
    int d = 0;
    int i_max = 0;
    std::int64_t comparisons = 0;
    std::int64_t mismatches = 0;
    std::vector<std::string> first_mismatches;
    bool calibration_ok = false;  // zero syndrome: APP(q,i) = 1 + 2i
    bool ok() const { return mismatches == 0 && calibration_ok; }
};

// `valid` random realizable syndromes and `fake` random odd-weight ones;
// every qubit next to an unsatisfied check, iterations 1..i_max.
TreeCheckReport tree_check(const ToricLattice& lat, int valid, int fake, int i_max, std::uint64_t seed);

struct SbVerifyTally {
    int weight = 0;
    std::int64_t errors = 0;
    std::int64_t failures = 0;
};

struct SbVerifyReport {
    int d = 0;
    int w_max = 0;
    int t_max = 0;
    bool translation_symmetry = false;
    std::vector<SbVerifyTally> tallies;
    std::vector<std::vector<int>> witnesses;  // failing supports (capped)
    bool ok() const;
    std::string table() const;
};

// SB+MS on every error of weight 1..w_max (or one per translation orbit):
// success means convergence with a residual that is a stabilizer.
SbVerifyReport sb_verify(const ToricLattice& lat, int w_max, int t_max, bool use_translation_symmetry,
                         int jobs = 1);

}  // namespace toric
