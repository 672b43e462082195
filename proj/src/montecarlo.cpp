#include "toric/montecarlo.hpp"

#include <cmath>
#include <sstream>

#include "toric/blowup.hpp"
#include "toric/errors.hpp"
#include "toric/serialize.hpp"
#include "toric/parallel.hpp"

namespace toric {

void ChannelConfig::validate() const {
    if (!(p >= 0.0 && p < 0.5)) throw InvalidParameter("channel: p must lie in [0, 0.5)");
}

namespace {

inline std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

ErrorVector sample_error(const ToricLattice& lat, const ChannelConfig& channel, std::uint64_t trial_index) {
    channel.validate();
    ErrorVector e(lat.n_qubits());
    if (channel.p == 0.0) return e;
    std::uint64_t key = channel.seed;
    std::uint64_t state = splitmix(key) ^ (trial_index * 0xd1b54a32d192ed03ULL);
    splitmix(state);
    // p·2^53 threshold against 53 uniform bits
    const std::uint64_t threshold = static_cast<std::uint64_t>(std::ldexp(channel.p, 53));
    for (int q = 0; q < lat.n_qubits(); ++q)
        if ((splitmix(state) >> 11) < threshold) e.set(q);
    return e;
}

std::string DecoderSpec::label() const {
    switch (kind) {
        case DecoderKind::MS: return "ms";
        case DecoderKind::SBMS: return "sb+ms";
        case DecoderKind::NMS: return "nms";
        case DecoderKind::BP: return "bp";
    }
    return "?";
}

DecoderSpec DecoderSpec::parse(const std::string& name, double lambda) {
    DecoderSpec s;
    s.lambda = lambda;
    if (name == "ms") s.kind = DecoderKind::MS;
    else if (name == "sb+ms" || name == "sbms" || name == "sb-ms") s.kind = DecoderKind::SBMS;
    else if (name == "nms") s.kind = DecoderKind::NMS;
    else if (name == "bp") s.kind = DecoderKind::BP;
    else throw InvalidParameter("unknown decoder '" + name + "'");
    return s;
}

double LerEstimate::ler() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures_detected + failures_logical) / trials;
}

double LerEstimate::stderr_() const {
    if (trials == 0) return 0.0;
    const double r = ler();
    return std::sqrt(r * (1 - r) / trials);
}

LerEstimate estimate_ler(const ToricLattice& lat, const ChannelConfig& channel, std::int64_t trials,
                         const DecoderSpec& decoder, int t_max, int jobs) {
    channel.validate();
    if (trials < 1) throw InvalidParameter("estimate_ler: trials must be >= 1");
    DecoderConfig cfg;
    switch (decoder.kind) {
        case DecoderKind::MS:
        case DecoderKind::SBMS: cfg = DecoderConfig::ms(t_max); break;
        case DecoderKind::NMS: cfg = DecoderConfig::nms(decoder.lambda, t_max); break;
        case DecoderKind::BP: {
            const double p = decoder.bp_p > 0 ? decoder.bp_p : channel.p;
            cfg = DecoderConfig::bp(p > 0 ? p : 1e-3, t_max);
            break;
        }
    }
    cfg.validate();
    const TannerGraph g = to_tanner(lat);

    constexpr std::int64_t kChunk = 1000;
    const std::size_t chunks = n_chunks(static_cast<std::size_t>(trials), kChunk);
    std::vector<std::pair<std::int64_t, std::int64_t>> tally(chunks);
    parallel_chunks(static_cast<std::size_t>(trials), kChunk, jobs,
                    [&](std::size_t b, std::size_t e, std::size_t chunk) {
                        auto& [detected, logical] = tally[chunk];
                        for (std::size_t t = b; t < e; ++t) {
                            const ErrorVector err = sample_error(lat, channel, t);
                            if (err.none()) continue;
                            const SyndromeVector s = syndrome_of(lat, err);
                            DecodeOutcome out = decoder.kind == DecoderKind::SBMS
                                                    ? static_cast<DecodeOutcome>(decode_sb_ms(lat, s, cfg))
                                                    : decode(g, s, cfg);
                            if (!out.converged()) ++detected;
                            else if (!homology_class(lat, err ^ out.estimate).trivial()) ++logical;
                        }
                    });

    LerEstimate est;
    est.d = lat.distance();
    est.decoder = decoder.label();
    est.lambda = decoder.kind == DecoderKind::NMS ? decoder.lambda : 1.0;
    est.p = channel.p;
    est.trials = trials;
    est.t_max = t_max;
    est.seed = channel.seed;
    for (const auto& [det, log] : tally) {
        est.failures_detected += det;
        est.failures_logical += log;
    }
    return est;
}

std::string ler_csv_header() {
    return "d,decoder,lambda,p,trials,tmax,failures_detected,failures_logical,ler,stderr,seed";
}

std::string ler_csv_row(const LerEstimate& e) {
    std::ostringstream os;
    os << e.d << "," << e.decoder << "," << format_double(e.lambda) << "," << format_double(e.p) << ","
       << e.trials << "," << e.t_max << "," << e.failures_detected << "," << e.failures_logical << ","
       << format_double(e.ler()) << "," << format_double(e.stderr_()) << "," << e.seed;
    return os.str();
}

double fit_slope(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [p, ler] : points)
        if (p > 0 && ler > 0) logs.emplace_back(std::log(p), std::log(ler));
    if (logs.size() < 3) throw InsufficientData("fit_slope: need at least three points with ler > 0");
    double mx = 0, my = 0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= logs.size();
    my /= logs.size();
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : logs) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0) throw InsufficientData("fit_slope: all p values are equal");
    return sxy / sxx;
}

}  // namespace toric
