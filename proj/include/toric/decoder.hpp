#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toric/bits.hpp"
#include "toric/dyadic.hpp"
#include "toric/tanner_graph.hpp"

namespace toric {

enum class Variant { MS, NMS, BP };
enum class TieRule { ZeroMeansNoError, ZeroMeansError };
// Auto picks exact fixed-point arithmetic for NMS and binary floating point
// for MS (integers, exact anyway) and BP.
enum class Arithmetic { Auto, Float, Exact };

std::string to_string(Variant v);

struct DecoderConfig {
    Variant variant = Variant::MS;
    double lambda = 1.0;              // NMS only; must be k/2^m
    std::optional<double> prior;      // scalar a priori value
    std::vector<double> priors;       // per-variable override, if non-empty
    double channel_p = 0.05;          // BP default prior ln((1-p)/p)
    int max_iterations = 16;
    TieRule tie_rule = TieRule::ZeroMeansNoError;
    bool stop_on_convergence = true;
    Arithmetic arithmetic = Arithmetic::Auto;

    static DecoderConfig ms(int max_iterations);
    static DecoderConfig nms(double lambda, int max_iterations);
    static DecoderConfig bp(double channel_p, int max_iterations);

    double scalar_prior() const;
    bool exact() const;
    void validate() const;
};

// Messages per Tanner edge. var_to_check[e] and check_to_var[e] are the two
// directions along edge e.
template <class Value>
struct BasicDecoderState {
    std::vector<Value> prior;
    std::vector<Value> var_to_check;
    std::vector<Value> check_to_var;
    int iteration = 0;
};

using DecoderState = BasicDecoderState<double>;
using ExactDecoderState = BasicDecoderState<Dyadic>;

template <class Value>
BasicDecoderState<Value> init_state(const TannerGraph& g, const DecoderConfig& cfg);

// One flooded iteration: every check update, then every variable update.
// Requires every check of degree >= 2.
template <class Value>
void step(BasicDecoderState<Value>& state, const TannerGraph& g, const SyndromeVector& s,
          const DecoderConfig& cfg);

template <class Value>
Value app_of(const BasicDecoderState<Value>& state, const TannerGraph& g, int v);

// Hard decision of every variable at the state's current iteration.
template <class Value>
BitVector hard_decision(const BasicDecoderState<Value>& state, const TannerGraph& g, TieRule tie);

extern template BasicDecoderState<double> init_state(const TannerGraph&, const DecoderConfig&);
extern template BasicDecoderState<Dyadic> init_state(const TannerGraph&, const DecoderConfig&);
extern template void step(BasicDecoderState<double>&, const TannerGraph&, const SyndromeVector&,
                          const DecoderConfig&);
extern template void step(BasicDecoderState<Dyadic>&, const TannerGraph&, const SyndromeVector&,
                          const DecoderConfig&);
extern template double app_of(const BasicDecoderState<double>&, const TannerGraph&, int);
extern template Dyadic app_of(const BasicDecoderState<Dyadic>&, const TannerGraph&, int);
extern template BitVector hard_decision(const BasicDecoderState<double>&, const TannerGraph&, TieRule);
extern template BitVector hard_decision(const BasicDecoderState<Dyadic>&, const TannerGraph&, TieRule);

struct DecodeOutcome {
    enum class Status { Converged, Exhausted };
    Status status = Status::Exhausted;
    // First iteration whose hard decision satisfied s, or max_iterations.
    int iterations = 0;
    ErrorVector estimate;  // hard decision at the final iteration run
    // watched variable -> APP after iterations 1, 2, ...
    std::map<int, std::vector<double>> app_trace;

    bool converged() const { return status == Status::Converged; }
};

// Throws InvalidParameter if s does not have one bit per check of g.
DecodeOutcome decode(const TannerGraph& g, const SyndromeVector& s, const DecoderConfig& cfg,
                     std::span<const int> watch = {});

}  // namespace toric
