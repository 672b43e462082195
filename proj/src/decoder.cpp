#include "toric/decoder.hpp"

#include <cmath>
#include <limits>

#include "toric/errors.hpp"

namespace toric {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::MS: return "ms";
        case Variant::NMS: return "nms";
        case Variant::BP: return "bp";
    }
    return "?";
}

DecoderConfig DecoderConfig::ms(int max_iterations) {
    DecoderConfig cfg;
    cfg.max_iterations = max_iterations;
    return cfg;
}

DecoderConfig DecoderConfig::nms(double lambda, int max_iterations) {
    DecoderConfig cfg;
    cfg.variant = Variant::NMS;
    cfg.lambda = lambda;
    cfg.max_iterations = max_iterations;
    return cfg;
}

DecoderConfig DecoderConfig::bp(double channel_p, int max_iterations) {
    DecoderConfig cfg;
    cfg.variant = Variant::BP;
    cfg.channel_p = channel_p;
    cfg.max_iterations = max_iterations;
    return cfg;
}

double DecoderConfig::scalar_prior() const {
    if (prior) return *prior;
    if (variant == Variant::BP) return std::log((1.0 - channel_p) / channel_p);
    return 1.0;
}

bool DecoderConfig::exact() const {
    switch (arithmetic) {
        case Arithmetic::Exact: return true;
        case Arithmetic::Float: return false;
        case Arithmetic::Auto: return variant == Variant::NMS;
    }
    return false;
}

void DecoderConfig::validate() const {
    if (max_iterations < 1) throw InvalidParameter("max_iterations must be >= 1");
    if (variant == Variant::NMS && !(lambda > 0 && lambda <= 1))
        throw InvalidParameter("NMS lambda must lie in (0, 1]");
    if (variant == Variant::BP) {
        if (!(channel_p > 0 && channel_p < 0.5)) throw InvalidParameter("BP channel_p must lie in (0, 0.5)");
        if (exact()) throw InvalidParameter("BP has no exact arithmetic mode");
    }
}

namespace {

template <class V>
V make_value(double x);
template <>
double make_value<double>(double x) {
    return x;
}
template <>
Dyadic make_value<Dyadic>(double x) {
    return Dyadic::from_double(x);
}

struct Scaler {
    double factor = 1.0;
    DyadicScale exact;
    bool identity = true;

    double apply(double v) const { return identity ? v : v * factor; }
    Dyadic apply(const Dyadic& v) const { return identity ? v : v.scaled(exact); }
};

Scaler make_scaler(const DecoderConfig& cfg) {
    Scaler s;
    if (cfg.variant == Variant::NMS && cfg.lambda != 1.0) {
        s.identity = false;
        s.factor = cfg.lambda;
        s.exact = DyadicScale::from_double(cfg.lambda);
    }
    return s;
}

inline bool is_negative(double v) { return v < 0; }
inline bool is_negative(const Dyadic& v) { return v.negative(); }

template <class V>
void min_sum_check(const TannerGraph& g, int c, bool unsatisfied, const Scaler& scale,
                   BasicDecoderState<V>& st) {
    const int begin = g.check_begin(c);
    const int end = g.check_end(c);
    bool negative = unsatisfied;
    int argmin = -1;
    V min1{}, min2{};
    bool have1 = false, have2 = false;
    for (int e = begin; e < end; ++e) {
        const V& m = st.var_to_check[e];
        negative ^= is_negative(m);
        V mag = is_negative(m) ? V(-m) : m;
        if (!have1 || mag < min1) {
            if (have1) {
                min2 = min1;
                have2 = true;
            }
            min1 = mag;
            have1 = true;
            argmin = e;
        } else if (!have2 || mag < min2) {
            min2 = mag;
            have2 = true;
        }
    }
    const V out1 = scale.apply(min1);
    const V out2 = scale.apply(min2);
    for (int e = begin; e < end; ++e) {
        const bool neg = negative ^ is_negative(st.var_to_check[e]);
        const V& mag = e == argmin ? out2 : out1;
        st.check_to_var[e] = neg ? V(-mag) : mag;
    }
}

// Numerically stable sign(a)sign(b)min(|a|,|b|) + log(1+e^-|a+b|) - log(1+e^-|a-b|).
inline double boxplus(double a, double b) {
    const double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    return sign * std::min(std::fabs(a), std::fabs(b)) + std::log1p(std::exp(-std::fabs(a + b))) -
           std::log1p(std::exp(-std::fabs(a - b)));
}

void bp_check(const TannerGraph& g, int c, bool unsatisfied, BasicDecoderState<double>& st) {
    const int begin = g.check_begin(c);
    const int end = g.check_end(c);
    const int k = end - begin;
    // forward[i] = boxplus of inputs 0..i-1, backward[i] = of inputs i+1..k-1
    double forward[16], backward[16];
    if (k > 16) throw Unsupported("BP: check degree above 16");
    constexpr double kNeutral = std::numeric_limits<double>::infinity();
    forward[0] = kNeutral;
    for (int i = 1; i < k; ++i) {
        const double m = st.var_to_check[begin + i - 1];
        forward[i] = std::isinf(forward[i - 1]) ? m : boxplus(forward[i - 1], m);
    }
    backward[k - 1] = kNeutral;
    for (int i = k - 2; i >= 0; --i) {
        const double m = st.var_to_check[begin + i + 1];
        backward[i] = std::isinf(backward[i + 1]) ? m : boxplus(backward[i + 1], m);
    }
    for (int i = 0; i < k; ++i) {
        double out;
        if (std::isinf(forward[i])) out = backward[i];
        else if (std::isinf(backward[i])) out = forward[i];
        else out = boxplus(forward[i], backward[i]);
        st.check_to_var[begin + i] = unsatisfied ? -out : out;
    }
}

inline void bp_check(const TannerGraph&, int, bool, BasicDecoderState<Dyadic>&) {
    throw InvalidParameter("BP has no exact arithmetic mode");
}

std::vector<double> prior_values(const TannerGraph& g, const DecoderConfig& cfg) {
    if (!cfg.priors.empty()) {
        if (static_cast<int>(cfg.priors.size()) != g.n_variables())
            throw InvalidParameter("per-variable prior size mismatch");
        return cfg.priors;
    }
    return std::vector<double>(g.n_variables(), cfg.scalar_prior());
}

}  // namespace

template <class Value>
BasicDecoderState<Value> init_state(const TannerGraph& g, const DecoderConfig& cfg) {
    cfg.validate();
    for (int c = 0; c < g.n_checks(); ++c)
        if (g.check_degree(c) < 2) throw Unsupported("decoder: check of degree < 2");
    BasicDecoderState<Value> st;
    const auto priors = prior_values(g, cfg);
    st.prior.reserve(priors.size());
    for (double p : priors) st.prior.push_back(make_value<Value>(p));
    st.var_to_check.resize(g.n_edges());
    st.check_to_var.resize(g.n_edges());
    for (int e = 0; e < g.n_edges(); ++e) st.var_to_check[e] = st.prior[g.edge_variable(e)];
    return st;
}

template <class Value>
void step(BasicDecoderState<Value>& st, const TannerGraph& g, const SyndromeVector& s,
          const DecoderConfig& cfg) {
    if (static_cast<int>(s.size()) != g.n_checks())
        throw InvalidParameter("decoder: syndrome has " + std::to_string(s.size()) + " bits, graph has " +
                               std::to_string(g.n_checks()) + " checks");
    const Scaler scale = make_scaler(cfg);
    for (int c = 0; c < g.n_checks(); ++c) {
        if (cfg.variant == Variant::BP) bp_check(g, c, s[c], st);
        else min_sum_check(g, c, s[c], scale, st);
    }
    for (int v = 0; v < g.n_variables(); ++v) {
        Value total = st.prior[v];
        for (int e : g.variable_edges(v)) total += st.check_to_var[e];
        for (int e : g.variable_edges(v)) st.var_to_check[e] = total - st.check_to_var[e];
    }
    ++st.iteration;
}

template <class Value>
Value app_of(const BasicDecoderState<Value>& st, const TannerGraph& g, int v) {
    Value total = st.prior[v];
    for (int e : g.variable_edges(v)) total += st.check_to_var[e];
    return total;
}

template <class Value>
BitVector hard_decision(const BasicDecoderState<Value>& st, const TannerGraph& g, TieRule tie) {
    BitVector out(g.n_variables());
    for (int v = 0; v < g.n_variables(); ++v) {
        const Value a = app_of(st, g, v);
        const bool zero = !(a < Value{}) && !(Value{} < a);
        out.set(v, is_negative(a) || (zero && tie == TieRule::ZeroMeansError));
    }
    return out;
}

template BasicDecoderState<double> init_state(const TannerGraph&, const DecoderConfig&);
template BasicDecoderState<Dyadic> init_state(const TannerGraph&, const DecoderConfig&);
template void step(BasicDecoderState<double>&, const TannerGraph&, const SyndromeVector&,
                   const DecoderConfig&);
template void step(BasicDecoderState<Dyadic>&, const TannerGraph&, const SyndromeVector&,
                   const DecoderConfig&);
template double app_of(const BasicDecoderState<double>&, const TannerGraph&, int);
template Dyadic app_of(const BasicDecoderState<Dyadic>&, const TannerGraph&, int);
template BitVector hard_decision(const BasicDecoderState<double>&, const TannerGraph&, TieRule);
template BitVector hard_decision(const BasicDecoderState<Dyadic>&, const TannerGraph&, TieRule);

namespace {

inline double as_double(double v) { return v; }
inline double as_double(const Dyadic& v) { return v.to_double(); }

template <class Value>
DecodeOutcome run(const TannerGraph& g, const SyndromeVector& s, const DecoderConfig& cfg,
                  std::span<const int> watch) {
    auto st = init_state<Value>(g, cfg);
    DecodeOutcome out;
    for (int v : watch) {
        if (v < 0 || v >= g.n_variables()) throw InvalidParameter("decode: watched variable out of range");
        out.app_trace[v].reserve(cfg.max_iterations);
    }
    BitVector estimate;
    bool converged = false;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        step(st, g, s, cfg);
        for (auto& [v, trace] : out.app_trace) trace.push_back(as_double(app_of(st, g, v)));
        estimate = hard_decision(st, g, cfg.tie_rule);
        if (!converged && g.satisfies(estimate, s)) {
            converged = true;
            out.iterations = it;
            if (cfg.stop_on_convergence) break;
        }
    }
    out.status = converged ? DecodeOutcome::Status::Converged : DecodeOutcome::Status::Exhausted;
    if (!converged) out.iterations = cfg.max_iterations;
    out.estimate = ErrorVector(std::move(estimate));
    return out;
}

}  // namespace

DecodeOutcome decode(const TannerGraph& g, const SyndromeVector& s, const DecoderConfig& cfg,
                     std::span<const int> watch) {
    if (static_cast<int>(s.size()) != g.n_checks())
        throw InvalidParameter("decode: syndrome has " + std::to_string(s.size()) + " bits, graph has " +
                               std::to_string(g.n_checks()) + " checks");
    cfg.validate();
    return cfg.exact() ? run<Dyadic>(g, s, cfg, watch) : run<double>(g, s, cfg, watch);
}

}  // namespace toric
