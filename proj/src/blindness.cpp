#include "toric/blindness.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <variant>

#include "toric/errors.hpp"
#include "toric/serialize.hpp"
#include "toric/parallel.hpp"

namespace toric {

SyndromeVector fake_syndrome(const ToricLattice& lat, const VertexId& c) {
    SyndromeVector s(lat.n_checks(), true);
    s.set(lat.check_index(c));
    return s;
}

namespace {

template <class Value>
using Trace = std::vector<std::array<Value, 4>>;

template <class Value>
struct Run {
    Trace<Value> apps;
    std::optional<int> converged_at;
};

template <class Value>
Run<Value> run_watch(const TannerGraph& g, const SyndromeVector& s, const DecoderConfig& cfg,
                     std::span<const int, 4> watch, int i_max) {
    auto st = init_state<Value>(g, cfg);
    Run<Value> out;
    out.apps.reserve(i_max);
    for (int it = 1; it <= i_max; ++it) {
        step(st, g, s, cfg);
        std::array<Value, 4> a;
        for (int k = 0; k < 4; ++k) a[k] = app_of(st, g, watch[k]);
        out.apps.push_back(std::move(a));
        if (!out.converged_at && g.satisfies(hard_decision(st, g, cfg.tie_rule), s)) out.converged_at = it;
    }
    return out;
}

inline double gap_of(double a, double b) { return std::fabs(a - b); }
inline double gap_of(const Dyadic& a, const Dyadic& b) { return abs(a - b).to_double(); }
inline bool same(double a, double b) { return a == b; }
inline bool same(const Dyadic& a, const Dyadic& b) { return a == b; }

template <class Value>
void compare(BlindnessReport& r, const Trace<Value>& real, const Trace<Value>& fake) {
    r.gaps.assign(real.size(), 0.0);
    for (std::size_t i = 0; i < real.size(); ++i) {
        bool equal = true;
        for (int k = 0; k < 4; ++k) {
            if (!same(real[i][k], fake[i][k])) equal = false;
            r.gaps[i] = std::max(r.gaps[i], gap_of(real[i][k], fake[i][k]));
        }
        if (!equal && r.blind) {
            r.blind = false;
            r.broken_at = static_cast<int>(i) + 1;
        }
    }
}

}  // namespace

struct BlindnessChecker::Impl {
    TannerGraph graph;
    // Fake run at check 0; other checks are translates. Empty for BP, whose
    // summation order is not translation invariant in floating point.
    std::variant<std::monostate, Trace<double>, Trace<Dyadic>> fake0;
};

BlindnessChecker::BlindnessChecker(const ToricLattice& lat, DecoderConfig cfg, int i_max)
    : lat_(lat), cfg_(std::move(cfg)), i_max_(i_max), impl_(std::make_unique<Impl>()) {
    if (i_max < 1) throw InvalidParameter("blindness: i_max must be >= 1");
    cfg_.stop_on_convergence = false;
    cfg_.max_iterations = i_max;
    cfg_.validate();
    impl_->graph = to_tanner(lat);
    if (cfg_.variant == Variant::BP) return;
    const auto fake = fake_syndrome(lat, {0, 0});
    if (cfg_.exact())
        impl_->fake0 = run_watch<Dyadic>(impl_->graph, fake, cfg_, lat.check_qubits(0), i_max).apps;
    else
        impl_->fake0 = run_watch<double>(impl_->graph, fake, cfg_, lat.check_qubits(0), i_max).apps;
}

BlindnessChecker::~BlindnessChecker() = default;
BlindnessChecker::BlindnessChecker(BlindnessChecker&&) noexcept = default;

BlindnessReport BlindnessChecker::report(const SyndromeVector& s, int check) const {
    if (static_cast<int>(s.size()) != lat_.n_checks()) throw InvalidParameter("blindness: syndrome length mismatch");
    if (check < 0 || check >= lat_.n_checks()) throw InvalidParameter("blindness: check out of range");
    if (!s[check]) throw InvalidParameter("blindness: the check must be unsatisfied");
    BlindnessReport r;
    r.syndrome = s;
    r.check = check;
    r.cfg = cfg_;
    r.i_max = i_max_;
    const auto watch = lat_.check_qubits(check);
    const auto& g = impl_->graph;
    auto finish = [&](const auto& real, const auto& fake) {
        compare(r, real.apps, fake);
        r.converged_at = real.converged_at;
        r.real_converged = real.converged_at.has_value();
    };
    if (cfg_.exact()) {
        const auto real = run_watch<Dyadic>(g, s, cfg_, watch, i_max_);
        finish(real, std::get<Trace<Dyadic>>(impl_->fake0));
    } else {
        const auto real = run_watch<double>(g, s, cfg_, watch, i_max_);
        if (cfg_.variant == Variant::BP) {
            const auto fake = run_watch<double>(g, fake_syndrome(lat_, lat_.vertex(check)), cfg_, watch, i_max_);
            finish(real, fake.apps);
        } else {
            finish(real, std::get<Trace<double>>(impl_->fake0));
        }
    }
    return r;
}

std::vector<BlindnessReport> BlindnessChecker::report_all(const SyndromeVector& s) const {
    std::vector<BlindnessReport> out;
    for (int c : s.support()) out.push_back(report(s, c));
    return out;
}

BlindnessReport blindness_report(const ToricLattice& lat, const SyndromeVector& s, int check,
                                 const DecoderConfig& cfg, int i_max) {
    return BlindnessChecker(lat, cfg, i_max).report(s, check);
}

SyndromeVector packed_syndrome(const ToricLattice& lat) {
    const int d = lat.distance();
    if (d != 13 && d != 26) throw Unsupported("packed_syndrome: d must be 13 or 26");
    std::vector<int> checks;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (j % 13 == (5 * i) % 13) checks.push_back(lat.check_index({i, j}));
    return lat.make_syndrome(checks);
}

std::vector<SyndromeVector> canonical_weight2_syndromes(const ToricLattice& lat, int min_distance) {
    std::vector<SyndromeVector> out;
    std::set<int> seen;
    for (int c = 1; c < lat.n_checks(); ++c) {
        if (check_distance(lat, 0, c) < min_distance) continue;
        const VertexId v = lat.vertex(c);
        const int mirror = lat.check_index({-v.row, -v.col});
        if (seen.count(mirror)) continue;
        seen.insert(c);
        const int pair[] = {0, c};
        out.push_back(lat.make_syndrome(pair));
    }
    return out;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> out;
    for (int k = 1; k <= 16; ++k) out.push_back(k / 16.0);
    return out;
}

std::vector<BlindnessReport> nms_sweep(const ToricLattice& lat, const std::vector<SyndromeVector>& syndromes,
                                       const std::vector<double>& lambdas, int i_max, int jobs) {
    struct Task {
        std::size_t syndrome;
        int check;
        std::size_t lambda;
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < syndromes.size(); ++si)
        for (int c : syndromes[si].support())
            for (std::size_t li = 0; li < lambdas.size(); ++li) tasks.push_back({si, c, li});

    std::vector<BlindnessChecker> checkers;
    for (double l : lambdas) checkers.emplace_back(lat, DecoderConfig::nms(l, i_max), i_max);

    std::vector<BlindnessReport> out(tasks.size());
    parallel_chunks(tasks.size(), 1, jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i)
            out[i] = checkers[tasks[i].lambda].report(syndromes[tasks[i].syndrome], tasks[i].check);
    });
    return out;
}

GapTrace bp_gap_trace(const ToricLattice& lat, const SyndromeVector& s, int check, double p_prior, int i_max) {
    const auto r = blindness_report(lat, s, check, DecoderConfig::bp(p_prior, i_max), i_max);
    return {r.gaps, r.real_converged};
}

std::string blindness_csv_header() { return "d,decoder,lambda,syndrome_id,check,verdict,broken_at,max_gap_at_imax"; }

std::string blindness_csv_row(const ToricLattice& lat, const BlindnessReport& r, int syndrome_id) {
    std::ostringstream os;
    const VertexId v = lat.vertex(r.check);
    os << lat.distance() << "," << to_string(r.cfg.variant) << "," << format_double(r.cfg.lambda) << "," << syndrome_id << ","
       << v.row << " " << v.col << "," << (r.blind ? "blind" : "broken") << ","
       << (r.broken_at ? std::to_string(*r.broken_at) : "") << "," << format_double(r.max_gap_at_imax());
    return os.str();
}

}  // namespace toric
