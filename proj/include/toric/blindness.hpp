#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toric/decoder.hpp"
#include "toric/lattice.hpp"

namespace toric {

SyndromeVector fake_syndrome(const ToricLattice& lat, const VertexId& c);

struct BlindnessReport {
    SyndromeVector syndrome;
    int check = -1;
    DecoderConfig cfg;
    int i_max = 0;
    // gaps[i-1]: max over the four qubits at `check` of |APP(q,i) - APP^c(q,i)|
    std::vector<double> gaps;
    bool blind = true;                 // every comparison exactly equal
    std::optional<int> broken_at;      // first iteration with a nonzero gap
    bool real_converged = false;       // real run satisfied s at some iteration <= i_max
    std::optional<int> converged_at;

    double max_gap_at_imax() const { return gaps.empty() ? 0.0 : gaps.back(); }
};

// Runs the real syndrome and the fake syndrome of each check for exactly
// i_max iterations and compares the APPs next to the check. The fake run is
// the same at every check up to translation, so it is computed once.
class BlindnessChecker {
public:
    BlindnessChecker(const ToricLattice& lat, DecoderConfig cfg, int i_max);
    ~BlindnessChecker();
    BlindnessChecker(BlindnessChecker&&) noexcept;

    // Throws InvalidParameter if s(check) = 0.
    BlindnessReport report(const SyndromeVector& s, int check) const;
    // One report per unsatisfied check of s, in index order.
    std::vector<BlindnessReport> report_all(const SyndromeVector& s) const;

    const DecoderConfig& config() const { return cfg_; }

private:
    struct Impl;
    const ToricLattice& lat_;
    DecoderConfig cfg_;
    int i_max_;
    std::unique_ptr<Impl> impl_;
};

BlindnessReport blindness_report(const ToricLattice& lat, const SyndromeVector& s, int check,
                                 const DecoderConfig& cfg, int i_max);

// s(c_{i,j}) = 1 iff j = 5i mod 13. Throws Unsupported unless d is 13 or 26.
SyndromeVector packed_syndrome(const ToricLattice& lat);

// Weight-2 syndromes {(0,0), x} with check distance >= min_distance, one per
// translation class (x and -x give the same class).
std::vector<SyndromeVector> canonical_weight2_syndromes(const ToricLattice& lat, int min_distance);

// 0.0625, 0.125, ..., 1.
std::vector<double> default_lambda_grid();

// Reports for every (syndrome, unsatisfied check, lambda) in that order.
std::vector<BlindnessReport> nms_sweep(const ToricLattice& lat, const std::vector<SyndromeVector>& syndromes,
                                       const std::vector<double>& lambdas, int i_max, int jobs = 1);

struct GapTrace {
    std::vector<double> gaps;  // per iteration, max over the four qubits
    bool real_converged = false;
};

GapTrace bp_gap_trace(const ToricLattice& lat, const SyndromeVector& s, int check, double p_prior, int i_max);

std::string blindness_csv_header();
std::string blindness_csv_row(const ToricLattice& lat, const BlindnessReport& r, int syndrome_id);

}  // namespace toric
