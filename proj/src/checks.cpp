#include "toric/checks.hpp"

#include <random>
#include <sstream>

#include "toric/blowup.hpp"
#include "toric/decoder.hpp"
#include "toric/decoding_tree.hpp"
#include "toric/degeneracy.hpp"
#include "toric/errors.hpp"
#include "toric/parallel.hpp"

namespace toric {

namespace {

void compare_syndrome(const ToricLattice& lat, const TannerGraph& g, const SyndromeVector& s, int i_max,
                      TreeCheckReport& rep) {
    std::vector<int> qubits;
    std::vector<char> mark(lat.n_qubits(), 0);
    for (int c : s.support())
        for (int q : lat.check_qubits(c))
            if (!mark[q]) {
                mark[q] = 1;
                qubits.push_back(q);
            }
    auto cfg = DecoderConfig::ms(i_max);
    cfg.stop_on_convergence = false;
    const auto out = decode(g, s, cfg, qubits);
    for (int q : qubits) {
        const auto& trace = out.app_trace.at(q);
        for (int i = 1; i <= i_max; ++i) {
            const auto tree = build_tree(lat, q, tree_depth_for_iteration(i));
            const int expected = min_config_weights(tree, s).app();
            ++rep.comparisons;
            if (trace[i - 1] != expected) {
                ++rep.mismatches;
                if (rep.first_mismatches.size() < 8) {
                    std::ostringstream os;
                    os << "qubit " << to_string(lat.edge(q)) << " iteration " << i << ": ms " << trace[i - 1]
                       << " tree " << expected;
                    rep.first_mismatches.push_back(os.str());
                }
            }
        }
    }
}

}  // namespace

TreeCheckReport tree_check(const ToricLattice& lat, int valid, int fake, int i_max, std::uint64_t seed) {
    if (i_max < 1) throw InvalidParameter("tree_check: i_max must be >= 1");
    TreeCheckReport rep;
    rep.d = lat.distance();
    rep.i_max = i_max;
    const TannerGraph g = to_tanner(lat);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> qubit(0, lat.n_qubits() - 1);
    std::uniform_int_distribution<int> check(0, lat.n_checks() - 1);
    std::uniform_int_distribution<int> weight(1, 6);

    for (int k = 0; k < valid; ++k) {
        ErrorVector e(lat.n_qubits());
        for (int w = weight(rng); w > 0; --w) e.set(qubit(rng));
        const auto s = syndrome_of(lat, e);
        if (s.none()) {
            --k;
            continue;
        }
        compare_syndrome(lat, g, s, i_max, rep);
    }
    for (int k = 0; k < fake; ++k) {
        SyndromeVector s;
        do {
            s = SyndromeVector(lat.n_checks(), true);
            const int w = 2 * (weight(rng) % 3) + 1;
            for (int j = 0; j < w; ++j) s.flip(check(rng));
        } while (s.weight() % 2 == 0);
        compare_syndrome(lat, g, s, i_max, rep);
    }

    // zero syndrome
    auto cfg = DecoderConfig::ms(i_max);
    cfg.stop_on_convergence = false;
    const int watch[] = {0};
    const auto zero = decode(g, SyndromeVector(lat.n_checks()), cfg, watch);
    rep.calibration_ok = true;
    for (int i = 1; i <= i_max; ++i)
        if (zero.app_trace.at(0)[i - 1] != 1 + 2 * i) rep.calibration_ok = false;
    return rep;
}

bool SbVerifyReport::ok() const {
    for (const auto& t : tallies)
        if (t.failures) return false;
    return true;
}

std::string SbVerifyReport::table() const {
    std::ostringstream os;
    os << "SB+MS d=" << d << " tmax=" << t_max << (translation_symmetry ? " (translation classes)" : "") << "\n";
    for (const auto& t : tallies)
        os << "  weight " << t.weight << ": " << t.errors << " errors, " << t.failures << " failures\n";
    return os.str();
}

SbVerifyReport sb_verify(const ToricLattice& lat, int w_max, int t_max, bool use_symmetry, int jobs) {
    if (w_max < 1) throw InvalidParameter("sb_verify: w_max must be >= 1");
    SbVerifyReport rep;
    rep.d = lat.distance();
    rep.w_max = w_max;
    rep.t_max = t_max;
    rep.translation_symmetry = use_symmetry;
    const auto cfg = DecoderConfig::ms(t_max);

    for (int w = 1; w <= w_max; ++w) {
        std::vector<std::vector<int>> items;
        std::vector<std::int64_t> mult;
        if (use_symmetry) {
            for (auto& r : translation_representatives(lat, w)) {
                items.push_back(std::move(r.qubits));
                mult.push_back(r.orbit_size);
            }
        } else {
            std::vector<int> idx(w);
            auto rec = [&](auto&& self, int pos, int lo) -> void {
                if (pos == w) {
                    items.push_back(idx);
                    mult.push_back(1);
                    return;
                }
                for (int q = lo; q < lat.n_qubits(); ++q) {
                    idx[pos] = q;
                    self(self, pos + 1, q + 1);
                }
            };
            rec(rec, 0, 0);
        }
        constexpr std::size_t kChunk = 256;
        struct Part {
            std::int64_t errors = 0, failures = 0;
            std::vector<std::vector<int>> witnesses;
        };
        std::vector<Part> parts(n_chunks(items.size(), kChunk));
        parallel_chunks(items.size(), kChunk, jobs, [&](std::size_t b, std::size_t e, std::size_t chunk) {
            auto& part = parts[chunk];
            for (std::size_t i = b; i < e; ++i) {
                const ErrorVector err = lat.make_error(items[i]);
                const auto out = decode_sb_ms(lat, syndrome_of(lat, err), cfg);
                const bool ok = out.converged() && homology_class(lat, err ^ out.estimate).trivial();
                part.errors += mult[i];
                if (!ok) {
                    part.failures += mult[i];
                    if (part.witnesses.size() < 16) part.witnesses.push_back(items[i]);
                }
            }
        });
        SbVerifyTally t;
        t.weight = w;
        for (auto& p : parts) {
            t.errors += p.errors;
            t.failures += p.failures;
            for (auto& wit : p.witnesses)
                if (rep.witnesses.size() < 16) rep.witnesses.push_back(std::move(wit));
        }
        rep.tallies.push_back(t);
    }
    return rep;
}

}  // namespace toric
