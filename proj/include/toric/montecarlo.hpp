#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "toric/decoder.hpp"
#include "toric/lattice.hpp"

namespace toric {

struct ChannelConfig {
    double p = 0.0;
    std::uint64_t seed = 0;

    // Throws InvalidParameter unless 0 <= p < 0.5.
    void validate() const;
};

// Counter-based: the error of trial t depends only on (seed, t).
ErrorVector sample_error(const ToricLattice& lat, const ChannelConfig& channel, std::uint64_t trial_index);

enum class DecoderKind { MS, SBMS, NMS, BP };

struct DecoderSpec {
    DecoderKind kind = DecoderKind::MS;
    double lambda = 1.0;   // NMS
    double bp_p = 0.0;     // BP prior; 0 means the channel p

    std::string label() const;
    // Parses "ms", "sb+ms" (or "sbms"), "nms", "bp".
    static DecoderSpec parse(const std::string& name, double lambda = 1.0);
};

struct LerEstimate {
    int d = 0;
    std::string decoder;
    double lambda = 1.0;
    double p = 0.0;
    std::int64_t trials = 0;
    int t_max = 0;
    std::int64_t failures_detected = 0;
    std::int64_t failures_logical = 0;
    std::uint64_t seed = 0;

    double ler() const;
    double stderr_() const;
};

LerEstimate estimate_ler(const ToricLattice& lat, const ChannelConfig& channel, std::int64_t trials,
                         const DecoderSpec& decoder, int t_max, int jobs = 1);

std::string ler_csv_header();
std::string ler_csv_row(const LerEstimate& e);

// Least-squares slope of log(ler) against log(p) over points with ler > 0.
// Throws InsufficientData with fewer than three such points.
double fit_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace toric
