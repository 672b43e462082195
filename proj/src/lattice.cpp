#include "toric/lattice.hpp"

#include <algorithm>
#include <tuple>

#include "toric/errors.hpp"

namespace toric {

std::string to_string(const EdgeId& e) {
    return std::string(e.orientation == Orientation::H ? "H " : "V ") + std::to_string(e.row) + " " +
           std::to_string(e.col);
}

ToricLattice::ToricLattice(int d) : d_(d) {
    if (d < 3) throw InvalidParameter("lattice distance must be >= 3, got " + std::to_string(d));
    const int n = d * d;
    check_qubits_.resize(4 * n);
    qubit_checks_.resize(2 * n_qubits());
    plaquette_qubits_.resize(4 * n);
    plaquette_corners_.resize(4 * n);

    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const int v = r * d + c;
            check_qubits_[4 * v + 0] = qubit_index({Orientation::H, r, c});
            check_qubits_[4 * v + 1] = qubit_index({Orientation::H, r, c - 1});
            check_qubits_[4 * v + 2] = qubit_index({Orientation::V, r, c});
            check_qubits_[4 * v + 3] = qubit_index({Orientation::V, r - 1, c});

            const int h = qubit_index({Orientation::H, r, c});
            qubit_checks_[2 * h + 0] = check_index({r, c});
            qubit_checks_[2 * h + 1] = check_index({r, c + 1});
            const int vv = qubit_index({Orientation::V, r, c});
            qubit_checks_[2 * vv + 0] = check_index({r, c});
            qubit_checks_[2 * vv + 1] = check_index({r + 1, c});

            plaquette_qubits_[4 * v + 0] = qubit_index({Orientation::H, r, c});
            plaquette_qubits_[4 * v + 1] = qubit_index({Orientation::V, r, c + 1});
            plaquette_qubits_[4 * v + 2] = qubit_index({Orientation::H, r + 1, c});
            plaquette_qubits_[4 * v + 3] = qubit_index({Orientation::V, r, c});

            plaquette_corners_[4 * v + 0] = check_index({r, c});
            plaquette_corners_[4 * v + 1] = check_index({r, c + 1});
            plaquette_corners_[4 * v + 2] = check_index({r + 1, c + 1});
            plaquette_corners_[4 * v + 3] = check_index({r + 1, c});
        }
    }
}

int ToricLattice::qubit_index(const EdgeId& e) const {
    const int base = e.orientation == Orientation::H ? 0 : d_ * d_;
    return base + wrap(e.row) * d_ + wrap(e.col);
}

EdgeId ToricLattice::edge(int q) const {
    const int n = d_ * d_;
    const Orientation o = q < n ? Orientation::H : Orientation::V;
    const int local = q % n;
    return {o, local / d_, local % d_};
}

ErrorVector ToricLattice::make_error(std::initializer_list<EdgeId> edges) const {
    ErrorVector e(n_qubits());
    for (const auto& id : edges) e.flip(qubit_index(id));
    return e;
}

ErrorVector ToricLattice::make_error(std::span<const int> qubits) const {
    ErrorVector e(n_qubits());
    for (int q : qubits) e.flip(q);
    return e;
}

SyndromeVector ToricLattice::make_syndrome(std::initializer_list<VertexId> checks) const {
    SyndromeVector s(n_checks(), false);
    for (const auto& v : checks) s.flip(check_index(v));
    s.set_fake(s.weight() % 2 != 0);
    return s;
}

SyndromeVector ToricLattice::make_syndrome(std::span<const int> checks) const {
    SyndromeVector s(n_checks(), false);
    for (int c : checks) s.flip(c);
    s.set_fake(s.weight() % 2 != 0);
    return s;
}

ErrorVector ToricLattice::plaquette_boundary(const PlaquetteId& p) const {
    return make_error(plaquette_qubits(plaquette_index(p)));
}

int ToricLattice::translate_qubit(int q, int dr, int dc) const {
    EdgeId e = edge(q);
    e.row += dr;
    e.col += dc;
    return qubit_index(e);
}

int ToricLattice::translate_check(int c, int dr, int dc) const {
    VertexId v = vertex(c);
    return check_index({v.row + dr, v.col + dc});
}

ErrorVector ToricLattice::translate(const ErrorVector& e, int dr, int dc) const {
    ErrorVector out(e.size());
    for (int q : e.support()) out.set(translate_qubit(q, dr, dc));
    return out;
}

SyndromeVector ToricLattice::translate(const SyndromeVector& s, int dr, int dc) const {
    SyndromeVector out(s.size(), s.fake());
    for (int c : s.support()) out.set(translate_check(c, dr, dc));
    return out;
}

ToricLattice build_lattice(int d) { return ToricLattice(d); }

SyndromeVector syndrome_of(const ToricLattice& lat, const ErrorVector& e) {
    if (static_cast<int>(e.size()) != lat.n_qubits())
        throw InvalidParameter("syndrome_of: error length " + std::to_string(e.size()) +
                               " != " + std::to_string(lat.n_qubits()));
    SyndromeVector s(lat.n_checks(), false);
    for (int q = 0; q < lat.n_qubits(); ++q) {
        if (!e[q]) continue;
        for (int c : lat.qubit_checks(q)) s.flip(c);
    }
    return s;
}

int check_distance(const ToricLattice& lat, const VertexId& a, const VertexId& b) {
    const int d = lat.distance();
    const int dr = lat.wrap(a.row - b.row);
    const int dc = lat.wrap(a.col - b.col);
    return std::min(dr, d - dr) + std::min(dc, d - dc);
}

int check_distance(const ToricLattice& lat, int a, int b) {
    return check_distance(lat, lat.vertex(a), lat.vertex(b));
}

SyndromeMetrics syndrome_metrics(const ToricLattice& lat, const SyndromeVector& s) {
    const auto supp = s.support();
    if (supp.empty()) throw UndefinedMetrics("syndrome_metrics: zero syndrome");
    SyndromeMetrics m;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        for (std::size_t j = i + 1; j < supp.size(); ++j) {
            const int dist = check_distance(lat, supp[i], supp[j]);
            m.min_pairwise_distance = std::min(m.min_pairwise_distance, dist);
            m.diameter = std::max(m.diameter, dist);
        }
    }
    return m;
}

Homology homology_class(const ToricLattice& lat, const ErrorVector& r) {
    if (!syndrome_of(lat, r).none()) throw NotACycle("homology_class: Hr != 0");
    const int d = lat.distance();
    Homology h;
    for (int i = 0; i < d; ++i) {
        h.wind_h ^= r[lat.qubit_index({Orientation::H, i, 0})];
        h.wind_v ^= r[lat.qubit_index({Orientation::V, 0, i})];
    }
    return h;
}

namespace {

// Start of the shortest cyclic arc of Z_d covering `used`, and its length.
std::pair<int, int> covering_arc(std::vector<int> used, int d) {
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    int best_gap = -1;
    int start = used.front();
    const int k = static_cast<int>(used.size());
    for (int i = 0; i < k; ++i) {
        const int next = i + 1 < k ? used[i + 1] : used[0] + d;
        const int gap = next - used[i] - 1;
        if (gap > best_gap) {
            best_gap = gap;
            start = next % d;
        }
    }
    return {start, d - best_gap};
}

struct PatchFrame {
    int row0, col0;
};

PatchFrame patch_frame(const ToricLattice& src, const ToricLattice& dst,
                       const std::vector<VertexId>& touched) {
    if (dst.distance() < src.distance())
        throw InvalidParameter("embed_patch: destination distance smaller than source");
    std::vector<int> rows, cols;
    for (const auto& v : touched) {
        rows.push_back(v.row);
        cols.push_back(v.col);
    }
    const auto [r0, rspan] = covering_arc(rows, src.distance());
    const auto [c0, cspan] = covering_arc(cols, src.distance());
    if (rspan >= src.distance() || cspan >= src.distance())
        throw NotEmbeddable("embed_patch: support wraps around the source torus");
    return {r0, c0};
}

}  // namespace

ErrorVector embed_patch(const ToricLattice& src, const ToricLattice& dst, const ErrorVector& e,
                        const VertexId& anchor) {
    if (static_cast<int>(e.size()) != src.n_qubits())
        throw InvalidParameter("embed_patch: error length mismatch");
    const auto supp = e.support();
    ErrorVector out(dst.n_qubits());
    if (supp.empty()) return out;

    std::vector<VertexId> touched;
    for (int q : supp)
        for (int c : src.qubit_checks(q)) touched.push_back(src.vertex(c));
    const auto frame = patch_frame(src, dst, touched);

    std::vector<std::tuple<int, int, Orientation>> local;
    for (int q : supp) {
        const EdgeId id = src.edge(q);
        local.emplace_back(src.wrap(id.row - frame.row0), src.wrap(id.col - frame.col0),
                           id.orientation);
    }
    const auto first = *std::min_element(local.begin(), local.end());
    for (const auto& [r, c, o] : local) {
        out.set(dst.qubit_index(
            {o, anchor.row + r - std::get<0>(first), anchor.col + c - std::get<1>(first)}));
    }
    return out;
}

SyndromeVector embed_patch(const ToricLattice& src, const ToricLattice& dst,
                           const SyndromeVector& s, const VertexId& anchor) {
    if (static_cast<int>(s.size()) != src.n_checks())
        throw InvalidParameter("embed_patch: syndrome length mismatch");
    const auto supp = s.support();
    SyndromeVector out(dst.n_checks(), s.fake());
    if (supp.empty()) return out;

    std::vector<VertexId> touched;
    for (int c : supp) touched.push_back(src.vertex(c));
    const auto frame = patch_frame(src, dst, touched);

    std::vector<VertexId> local;
    for (int c : supp) {
        const VertexId v = src.vertex(c);
        local.push_back({src.wrap(v.row - frame.row0), src.wrap(v.col - frame.col0)});
    }
    const auto first = *std::min_element(local.begin(), local.end());
    for (const auto& v : local)
        out.set(dst.check_index({anchor.row + v.row - first.row, anchor.col + v.col - first.col}));
    return out;
}

TannerGraph to_tanner(const ToricLattice& lat) {
    std::vector<std::pair<int, int>> inc;
    inc.reserve(4 * lat.n_checks());
    for (int c = 0; c < lat.n_checks(); ++c)
        for (int q : lat.check_qubits(c)) inc.emplace_back(c, q);
    return TannerGraph(lat.n_qubits(), lat.n_checks(), std::move(inc));
}

namespace {

VertexId reflect_vertex(const VertexId& v, const VertexId& o, Reflection kind) {
    const int a = v.row - o.row;
    const int b = v.col - o.col;
    switch (kind) {
        case Reflection::Transpose: return {o.row + b, o.col + a};
        case Reflection::AntiTranspose: return {o.row - b, o.col - a};
        case Reflection::MirrorRows: return {o.row - a, o.col + b};
        case Reflection::MirrorCols: return {o.row + a, o.col - b};
    }
    return v;
}

}  // namespace

int reflect_check(const ToricLattice& lat, int c, const VertexId& center, Reflection kind) {
    return lat.check_index(reflect_vertex(lat.vertex(c), center, kind));
}

int reflect_qubit(const ToricLattice& lat, int q, const VertexId& center, Reflection kind) {
    // An edge is determined by its two endpoints; reflect both and find the
    // edge joining them.
    const auto ends = lat.qubit_checks(q);
    const int a = reflect_check(lat, ends[0], center, kind);
    const int b = reflect_check(lat, ends[1], center, kind);
    for (int cand : lat.check_qubits(a))
        if (lat.other_end(cand, a) == b) return cand;
    throw Error("reflect_qubit: reflected endpoints are not adjacent");
}

SyndromeVector reflect(const ToricLattice& lat, const SyndromeVector& s, const VertexId& center,
                       Reflection kind) {
    SyndromeVector out(s.size(), s.fake());
    for (int c : s.support()) out.set(reflect_check(lat, c, center, kind));
    return out;
}

}  // namespace toric
