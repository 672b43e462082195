#include "toric/degeneracy.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "toric/errors.hpp"
#include "toric/parallel.hpp"

namespace toric {

namespace {

struct Search {
    const ToricLattice& lat;
    SyndromeVector s;
    int unsatisfied = 0;
    std::vector<int> chosen;
    std::set<std::vector<int>> found;

    void flip_check(int c) {
        unsatisfied += s[c] ? -1 : 1;
        s.flip(c);
    }
    void toggle(int q) {
        for (int c : lat.qubit_checks(q)) flip_check(c);
    }

    // Explanations using exactly `budget` more qubits.
    void run(int budget) {
        if (unsatisfied == 0) {
            if (budget == 0) {
                auto key = chosen;
                std::sort(key.begin(), key.end());
                found.insert(std::move(key));
            }
            return;
        }
        if (2 * budget < unsatisfied) return;  // each qubit clears at most two checks
        int first = 0;
        while (!s[first]) ++first;
        for (int q : lat.check_qubits(first)) {
            if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
            chosen.push_back(q);
            toggle(q);
            run(budget - 1);
            toggle(q);
            chosen.pop_back();
        }
    }
};

}  // namespace

ExplanationSet min_weight_explanations(const ToricLattice& lat, const SyndromeVector& s,
                                       int weight_bound) {
    if (static_cast<int>(s.size()) != lat.n_checks())
        throw InvalidParameter("min_weight_explanations: syndrome length mismatch");
    if (s.fake() || s.weight() % 2 != 0)
        throw InvalidParameter("min_weight_explanations: syndrome is not realizable");
    if (weight_bound > kOracleWeightCap || 2 * weight_bound >= lat.distance())
        throw Unsupported("min_weight_explanations: weight bound " + std::to_string(weight_bound) +
                          " outside the oracle's range for d=" + std::to_string(lat.distance()));

    ExplanationSet out;
    out.syndrome = s;
    if (s.none()) {
        out.min_weight = 0;
        out.errors.emplace_back(lat.n_qubits());
        return out;
    }
    Search search{lat, s, s.weight(), {}, {}};
    for (int w = (s.weight() + 1) / 2; w <= weight_bound; ++w) {
        search.run(w);
        if (!search.found.empty()) {
            out.min_weight = w;
            for (const auto& qubits : search.found) out.errors.push_back(lat.make_error(qubits));
            return out;
        }
    }
    out.truncated = true;
    return out;
}

bool is_degenerate(const ToricLattice& lat, const ErrorVector& e) {
    const int w = e.weight();
    if (w > kOracleWeightCap || 2 * w >= lat.distance())
        throw Unsupported("is_degenerate: weight " + std::to_string(w) + " outside the oracle's range");
    const auto ex = min_weight_explanations(lat, syndrome_of(lat, e), w);
    if (ex.truncated) throw Error("is_degenerate: oracle found no explanation for He");
    if (ex.min_weight < w) return true;
    return ex.errors.size() > 1;
}

ErrorVector localized_ml_decode(const ToricLattice& lat, const SyndromeVector& s,
                                std::uint64_t rng_seed) {
    int bound = kOracleWeightCap;
    while (2 * bound >= lat.distance()) --bound;
    const auto ex = min_weight_explanations(lat, s, bound);
    if (ex.truncated) throw Unsupported("localized_ml_decode: minimum weight above oracle bound");
    std::mt19937_64 rng(rng_seed);
    std::bernoulli_distribution coin(0.5);
    ErrorVector out(lat.n_qubits());
    for (int q = 0; q < lat.n_qubits(); ++q) {
        const bool first = ex.errors.front()[q];
        const bool agree = std::all_of(ex.errors.begin(), ex.errors.end(),
                                       [&](const ErrorVector& e) { return e[q] == first; });
        out.set(q, agree ? first : coin(rng));
    }
    return out;
}

namespace {

// Cell-major key: qubits of cell (r,c) get keys 2*(r*d+c) + orientation.
int qubit_key(const ToricLattice& lat, int q) {
    const EdgeId e = lat.edge(q);
    return 2 * (e.row * lat.distance() + e.col) + static_cast<int>(e.orientation);
}

int key_qubit(const ToricLattice& lat, int key) {
    const int cell = key / 2;
    const auto o = static_cast<Orientation>(key % 2);
    return lat.qubit_index({o, cell / lat.distance(), cell % lat.distance()});
}

}  // namespace

std::vector<OrbitRepresentative> translation_representatives(const ToricLattice& lat, int weight) {
    std::vector<OrbitRepresentative> out;
    if (weight < 1) return out;
    const int d = lat.distance();
    const int n_keys = lat.n_qubits();
    std::vector<int> keys(weight);
    std::vector<int> translated(weight);

    // Every orbit has a member whose smallest key lies in cell (0,0).
    auto consider = [&] {
        int same = 0;
        bool is_min = true;
        for (int dr = 0; dr < d && is_min; ++dr) {
            for (int dc = 0; dc < d; ++dc) {
                for (int i = 0; i < weight; ++i)
                    translated[i] =
                        qubit_key(lat, lat.translate_qubit(key_qubit(lat, keys[i]), dr, dc));
                std::sort(translated.begin(), translated.end());
                if (translated < keys) {
                    is_min = false;
                    break;
                }
                if (translated == keys) ++same;
            }
        }
        if (!is_min) return;
        OrbitRepresentative rep;
        for (int k : keys) rep.qubits.push_back(key_qubit(lat, k));
        std::sort(rep.qubits.begin(), rep.qubits.end());
        rep.orbit_size = d * d / same;
        out.push_back(std::move(rep));
    };

    auto rec = [&](auto&& self, int pos, int lo) -> void {
        if (pos == weight) {
            consider();
            return;
        }
        for (int k = lo; k < n_keys; ++k) {
            keys[pos] = k;
            self(self, pos + 1, k + 1);
        }
    };
    for (int k0 = 0; k0 < 2; ++k0) {
        keys[0] = k0;
        rec(rec, 1, k0 + 1);
    }
    return out;
}

namespace {

struct ScanItem {
    std::vector<int> qubits;
    std::int64_t multiplicity = 1;
};

std::vector<ScanItem> all_combinations(int n, int w) {
    std::vector<ScanItem> out;
    std::vector<int> idx(w);
    auto rec = [&](auto&& self, int pos, int lo) -> void {
        if (pos == w) {
            out.push_back({idx, 1});
            return;
        }
        for (int q = lo; q < n; ++q) {
            idx[pos] = q;
            self(self, pos + 1, q + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace

RadiusReport radius_scan(const ToricLattice& lat, const DecoderConfig& cfg, int w_max,
                         bool use_translation_symmetry, const RadiusScanOptions& opts) {
    if (w_max < 1 || w_max > kOracleWeightCap) throw InvalidParameter("radius_scan: w_max must be in 1..4");
    cfg.validate();
    const TannerGraph g = to_tanner(lat);

    RadiusReport report;
    report.d = lat.distance();
    report.cfg = cfg;
    report.translation_symmetry = use_translation_symmetry;

    for (int w = 1; w <= w_max; ++w) {
        std::vector<ScanItem> items;
        if (use_translation_symmetry) {
            for (auto& rep : translation_representatives(lat, w))
                items.push_back({std::move(rep.qubits), rep.orbit_size});
        } else {
            items = all_combinations(lat.n_qubits(), w);
        }
        if (opts.sample_stride > 1) {
            std::vector<ScanItem> sampled;
            for (std::size_t i = 0; i < items.size(); i += opts.sample_stride)
                sampled.push_back(std::move(items[i]));
            items = std::move(sampled);
        }

        constexpr std::size_t kChunk = 512;
        std::vector<RadiusTally> partial(n_chunks(items.size(), kChunk));
        parallel_chunks(items.size(), kChunk, opts.jobs,
                        [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                            RadiusTally& t = partial[chunk];
                            for (std::size_t i = begin; i < end; ++i) {
                                const auto& item = items[i];
                                const ErrorVector e = lat.make_error(item.qubits);
                                const bool degenerate = is_degenerate(lat, e);
                                const auto s = syndrome_of(lat, e);
                                const auto outcome = decode(g, s, cfg);
                                bool ok = outcome.converged();
                                if (ok) ok = homology_class(lat, e ^ outcome.estimate).trivial();
                                t.total += item.multiplicity;
                                if (degenerate) {
                                    t.degenerate += item.multiplicity;
                                    if (ok) t.decoded_degenerate += item.multiplicity;
                                } else {
                                    t.non_degenerate += item.multiplicity;
                                    if (ok) {
                                        t.decoded_non_degenerate += item.multiplicity;
                                        t.max_iterations_non_degenerate =
                                            std::max(t.max_iterations_non_degenerate, outcome.iterations);
                                    } else {
                                        t.failing_non_degenerate += item.multiplicity;
                                        if (t.witnesses.size() < opts.witness_cap) t.witnesses.push_back(e);
                                    }
                                }
                            }
                        });

        RadiusTally tally;
        tally.weight = w;
        for (auto& p : partial) {
            tally.total += p.total;
            tally.non_degenerate += p.non_degenerate;
            tally.decoded_non_degenerate += p.decoded_non_degenerate;
            tally.degenerate += p.degenerate;
            tally.decoded_degenerate += p.decoded_degenerate;
            tally.failing_non_degenerate += p.failing_non_degenerate;
            tally.max_iterations_non_degenerate =
                std::max(tally.max_iterations_non_degenerate, p.max_iterations_non_degenerate);
            for (auto& wit : p.witnesses)
                if (tally.witnesses.size() < opts.witness_cap) tally.witnesses.push_back(std::move(wit));
        }
        report.tallies.push_back(std::move(tally));
    }

    report.omega = 0;
    for (const auto& t : report.tallies) {
        if (t.failing_non_degenerate > 0) break;
        report.omega = t.weight;
    }
    report.omega_is_lower_bound = report.omega == w_max;
    return report;
}

std::string RadiusReport::to_json(const ToricLattice& lat) const {
    nlohmann::json j;
    j["d"] = d;
    j["decoder"] = toric::to_string(cfg.variant);
    j["lambda"] = cfg.lambda;
    j["tmax"] = cfg.max_iterations;
    j["translation_symmetry"] = translation_symmetry;
    j["omega"] = omega;
    j["omega_is_lower_bound"] = omega_is_lower_bound;
    for (const auto& t : tallies) {
        nlohmann::json jt;
        jt["weight"] = t.weight;
        jt["total"] = t.total;
        jt["non_degenerate"] = t.non_degenerate;
        jt["decoded_non_degenerate"] = t.decoded_non_degenerate;
        jt["failing_non_degenerate"] = t.failing_non_degenerate;
        jt["degenerate"] = t.degenerate;
        jt["decoded_degenerate"] = t.decoded_degenerate;
        jt["max_iterations_non_degenerate"] = t.max_iterations_non_degenerate;
        jt["witnesses"] = nlohmann::json::array();
        for (const auto& e : t.witnesses) {
            nlohmann::json edges = nlohmann::json::array();
            for (int q : e.support()) edges.push_back(toric::to_string(lat.edge(q)));
            jt["witnesses"].push_back(edges);
        }
        j["tallies"].push_back(jt);
    }
    return j.dump(2);
}

std::string RadiusReport::table() const {
    std::ostringstream os;
    os << "d=" << d << " decoder=" << toric::to_string(cfg.variant) << " tmax=" << cfg.max_iterations
       << (translation_symmetry ? " (translation classes)" : "") << "\n";
    os << std::setw(6) << "weight" << std::setw(12) << "total" << std::setw(12) << "non-degen"
       << std::setw(12) << "decoded" << std::setw(10) << "failing" << std::setw(12) << "degen"
       << std::setw(12) << "dec.degen" << std::setw(8) << "maxit" << "\n";
    for (const auto& t : tallies) {
        os << std::setw(6) << t.weight << std::setw(12) << t.total << std::setw(12) << t.non_degenerate
           << std::setw(12) << t.decoded_non_degenerate << std::setw(10) << t.failing_non_degenerate
           << std::setw(12) << t.degenerate << std::setw(12) << t.decoded_degenerate << std::setw(8)
           << t.max_iterations_non_degenerate << "\n";
    }
    os << "non-degenerate radius omega = " << omega << (omega_is_lower_bound ? " (lower bound)" : "")
       << "\n";
    return os.str();
}

}  // namespace toric
