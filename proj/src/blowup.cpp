#include "toric/blowup.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "toric/errors.hpp"

namespace toric {

namespace {

// Ring positions clockwise from the check above c1.
constexpr std::array<VertexId, 12> kRing{{{-1, 0},
                                          {-1, 1},
                                          {-1, 2},
                                          {0, 2},
                                          {1, 2},
                                          {2, 2},
                                          {2, 1},
                                          {2, 0},
                                          {2, -1},
                                          {1, -1},
                                          {0, -1},
                                          {-1, -1}}};

constexpr std::array<VertexId, 4> kCorners{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};

}  // namespace

RingLayout RingLayout::walk(int start, bool clockwise) {
    RingLayout out;
    for (int k = 0; k < 12; ++k) {
        const int i = clockwise ? start + k : start - k;
        out.offsets[k] = kRing[((i % 12) + 12) % 12];
    }
    return out;
}

RingLayout RingLayout::standard() {
    static const RingLayout layout = walk(kRingStart, kRingClockwise);
    return layout;
}

int neighborhood_check(const ToricLattice& lat, const PlaquetteId& p, int label, const RingLayout& layout) {
    if (label < 1 || label > 16) throw InvalidParameter("neighborhood_check: label must be in 1..16");
    const VertexId off = label <= 4 ? kCorners[label - 1] : layout.offsets[label - 5];
    return lat.check_index({p.row + off.row, p.col + off.col});
}

bool match_patterns(const ToricLattice& lat, const SyndromeVector& s, const PlaquetteId& p, int pass,
                    const RingLayout& layout) {
    auto at = [&](int label) { return s[neighborhood_check(lat, p, label, layout)]; };
    const bool c1 = at(1), c2 = at(2), c3 = at(3), c4 = at(4);
    switch (pass) {
        case 1:
            if (c1 && c2 && c3 && c4) return true;
            if (!c1 && c2 && !c3 && c4 && (at(9) ^ at(11) ^ at(5) ^ at(15)) == 0) return true;
            if (c1 && !c2 && c3 && !c4 && (at(6) ^ at(8) ^ at(12) ^ at(14)) == 0) return true;
            return false;
        case 2:
            return (!c1 && c2 && !c3 && c4) || (c1 && !c2 && c3 && !c4);
        case 3: {
            if (c3) return false;
            const bool c11 = at(11), c12 = at(12), c14 = at(14), c15 = at(15);
            return (c1 && !c2 && !c11 && !c4 && c12) || (!c1 && !c2 && c11 && c4 && !c12) ||
                   (c1 && !c2 && !c4 && !c15 && c14) || (!c1 && c2 && !c4 && c15 && !c14);
        }
        default:
            throw InvalidParameter("match_patterns: pass must be 1, 2 or 3");
    }
}

bool BlowupPlan::contains(const PlaquetteId& p) const {
    return std::find(plaquettes.begin(), plaquettes.end(), p) != plaquettes.end();
}

std::string BlowupPlan::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : plaquettes) j.push_back({p.row, p.col});
    return nlohmann::json{{"plan", j}}.dump();
}

bool plaquettes_adjacent(const ToricLattice& lat, const PlaquetteId& a, const PlaquetteId& b) {
    const int dr = lat.wrap(a.row - b.row), dc = lat.wrap(a.col - b.col);
    const int d = lat.distance();
    return (dr == 0 && (dc == 1 || dc == d - 1)) || (dc == 0 && (dr == 1 || dr == d - 1));
}

BlowupPlan build_plan(const ToricLattice& lat, const SyndromeVector& s, const RingLayout& layout,
                      long* operations) {
    const int d = lat.distance();
    std::vector<char> planned(lat.n_plaquettes(), 0);
    BlowupPlan plan;
    long ops = 0;
    auto blocked = [&](const PlaquetteId& p) {
        if (planned[lat.plaquette_index(p)]) return true;
        return planned[lat.plaquette_index({p.row - 1, p.col})] ||
               planned[lat.plaquette_index({p.row + 1, p.col})] ||
               planned[lat.plaquette_index({p.row, p.col - 1})] ||
               planned[lat.plaquette_index({p.row, p.col + 1})];
    };
    for (int pass = 1; pass <= 3; ++pass) {
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                ++ops;
                const PlaquetteId p{r, c};
                if (blocked(p) || !match_patterns(lat, s, p, pass, layout)) continue;
                planned[lat.plaquette_index(p)] = 1;
                plan.plaquettes.push_back(p);
            }
        }
    }
    if (operations) *operations = ops;
    return plan;
}

BlownGraph apply_blowup(const ToricLattice& lat, const BlowupPlan& plan, bool allow_adjacent) {
    const auto& ps = plan.plaquettes;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (lat.plaquette_index(ps[i]) == lat.plaquette_index(ps[j]))
                throw InvalidPlan("apply_blowup: plaquette planned twice");
            if (!allow_adjacent && plaquettes_adjacent(lat, ps[i], ps[j]))
                throw InvalidPlan("apply_blowup: planned plaquettes share an edge");
        }
    }

    BlownGraph out;
    out.n_original_qubits = lat.n_qubits();
    out.n_original_checks = lat.n_checks();
    std::vector<char> removed(lat.n_qubits(), 0);
    for (const auto& p : ps) {
        BlownGraph::Blown b;
        b.plaquette = p;
        const int pi = lat.plaquette_index(p);
        for (int k = 0; k < 4; ++k) {
            b.qubits[k] = lat.plaquette_qubits(pi)[k];
            b.corners[k] = lat.plaquette_corners(pi)[k];
            // edge-adjacent plaquettes (allowed only on request) share a qubit
            if (removed[b.qubits[k]] && !allow_adjacent) throw InvalidPlan("apply_blowup: qubit removed twice");
            removed[b.qubits[k]] = 1;
        }
        out.blown.push_back(b);
    }

    out.qubit_variable.assign(lat.n_qubits(), -1);
    for (int q = 0; q < lat.n_qubits(); ++q) {
        if (removed[q]) continue;
        out.qubit_variable[q] = static_cast<int>(out.variable_qubit.size());
        out.variable_qubit.push_back(q);
    }
    std::vector<std::pair<int, int>> inc;
    for (int c = 0; c < lat.n_checks(); ++c)
        for (int q : lat.check_qubits(c))
            if (!removed[q]) inc.emplace_back(c, out.qubit_variable[q]);
    int next_check = lat.n_checks();
    for (auto& b : out.blown) {
        b.center_check = next_check++;
        for (int k = 0; k < 4; ++k) {
            b.variables[k] = static_cast<int>(out.variable_qubit.size());
            out.variable_qubit.push_back(-1);
            inc.emplace_back(b.corners[k], b.variables[k]);
            inc.emplace_back(b.center_check, b.variables[k]);
        }
    }
    out.graph = TannerGraph(static_cast<int>(out.variable_qubit.size()), next_check, std::move(inc));
    return out;
}

SyndromeVector BlownGraph::extend(const SyndromeVector& s) const {
    if (static_cast<int>(s.size()) != n_original_checks)
        throw InvalidParameter("BlownGraph::extend: syndrome length mismatch");
    SyndromeVector out(graph.n_checks(), s.fake());
    for (int c = 0; c < n_original_checks; ++c) out.set(c, s[c]);
    return out;
}

BitVector BlownGraph::project(const ErrorVector& e) const {
    if (static_cast<int>(e.size()) != n_original_qubits)
        throw InvalidParameter("BlownGraph::project: error length mismatch");
    BitVector out(graph.n_variables());
    for (int v = 0; v < graph.n_variables(); ++v)
        if (variable_qubit[v] >= 0) out.set(v, e[variable_qubit[v]]);
    for (const auto& b : blown)
        for (int k = 0; k < 4; ++k) out.set(b.variables[k], e[b.qubits[(k + 3) % 4]] ^ e[b.qubits[k]]);
    return out;
}

std::string BlownGraph::dump() const {
    std::ostringstream os;
    os << "variables " << graph.n_variables() << " checks " << graph.n_checks() << "\n";
    for (const auto& b : blown) {
        os << "plaquette " << b.plaquette.row << " " << b.plaquette.col << " center " << b.center_check;
        for (int k = 0; k < 4; ++k)
            os << " b" << k + 1 << "=v" << b.variables[k] << "@c" << b.corners[k] << "(q" << b.qubits[(k + 3) % 4]
               << "+q" << b.qubits[k] << ")";
        os << "\n";
    }
    return os.str();
}

std::array<bool, 4> unblow_plaquette(const std::array<bool, 4>& b) {
    if (b[0] ^ b[1] ^ b[2] ^ b[3]) throw InconsistentEstimate("unblow: odd parity around a blown plaquette");
    // b1 = q4^q1, b2 = q1^q2, b3 = q2^q3, b4 = q3^q4
    std::array<bool, 4> q{false, b[1], static_cast<bool>(b[1] ^ b[2]), static_cast<bool>(b[1] ^ b[2] ^ b[3])};
    const int w = q[0] + q[1] + q[2] + q[3];
    if (4 - w < w)
        for (auto& x : q) x = !x;
    return q;
}

ErrorVector unblow(const BitVector& est, const BlownGraph& blown) {
    if (static_cast<int>(est.size()) != blown.graph.n_variables())
        throw InvalidParameter("unblow: estimate length mismatch");
    ErrorVector out(blown.n_original_qubits);
    for (int v = 0; v < blown.graph.n_variables(); ++v)
        if (blown.variable_qubit[v] >= 0) out.set(blown.variable_qubit[v], est[v]);
    for (const auto& b : blown.blown) {
        std::array<bool, 4> bits{};
        for (int k = 0; k < 4; ++k) bits[k] = est[b.variables[k]];
        const auto q = unblow_plaquette(bits);
        for (int k = 0; k < 4; ++k)
            if (q[k]) out.flip(b.qubits[k]);
    }
    return out;
}

SbDecodeOutcome decode_sb_ms(const ToricLattice& lat, const SyndromeVector& s, const DecoderConfig& cfg,
                             const RingLayout& layout) {
    if (static_cast<int>(s.size()) != lat.n_checks())
        throw InvalidParameter("decode_sb_ms: syndrome length mismatch");
    if (!cfg.priors.empty()) throw Unsupported("decode_sb_ms: per-variable priors are not supported");
    SbDecodeOutcome out;
    out.plan = build_plan(lat, s, layout);
    const BlownGraph blown = apply_blowup(lat, out.plan);
    const DecodeOutcome inner = decode(blown.graph, blown.extend(s), cfg);
    out.status = inner.status;
    out.iterations = inner.iterations;
    if (inner.converged()) {
        out.estimate = unblow(inner.estimate, blown);
        if (!(syndrome_of(lat, out.estimate) == s))
            throw InconsistentEstimate("decode_sb_ms: unblown estimate does not reproduce the syndrome");
    } else {
        out.estimate = ErrorVector(lat.n_qubits());
        for (int v = 0; v < blown.graph.n_variables(); ++v)
            if (blown.variable_qubit[v] >= 0 && inner.estimate[v]) out.estimate.set(blown.variable_qubit[v]);
    }
    return out;
}

}  // namespace toric
