#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toric/errors.hpp"
#include "toric/lattice.hpp"
#include "toric/serialize.hpp"

using namespace toric;
using O = Orientation;

TEST_CASE("lattice sizes") {
    const auto l3 = build_lattice(3);
    CHECK(l3.n_qubits() == 18);
    CHECK(l3.n_checks() == 9);
    CHECK(l3.n_plaquettes() == 9);
    const auto l11 = build_lattice(11);
    CHECK(l11.n_qubits() == 242);
    CHECK(l11.n_checks() == 121);
    CHECK_THROWS_AS(build_lattice(2), InvalidParameter);
}

TEST_CASE("incidence conventions") {
    const ToricLattice lat(5);
    for (int c = 0; c < lat.n_checks(); ++c) {
        const VertexId v = lat.vertex(c);
        const auto qs = lat.check_qubits(c);
        CHECK(qs[0] == lat.qubit_index({O::H, v.row, v.col}));
        CHECK(qs[1] == lat.qubit_index({O::H, v.row, v.col - 1}));
        CHECK(qs[2] == lat.qubit_index({O::V, v.row, v.col}));
        CHECK(qs[3] == lat.qubit_index({O::V, v.row - 1, v.col}));
        for (int q : qs) {
            const auto ends = lat.qubit_checks(q);
            CHECK((ends[0] == c || ends[1] == c));
        }
    }
    // each qubit in exactly two checks
    std::vector<int> count(lat.n_qubits(), 0);
    for (int c = 0; c < lat.n_checks(); ++c)
        for (int q : lat.check_qubits(c)) ++count[q];
    for (int x : count) CHECK(x == 2);

    const int p = lat.plaquette_index({4, 4});
    const auto pq = lat.plaquette_qubits(p);
    CHECK(pq[0] == lat.qubit_index({O::H, 4, 4}));
    CHECK(pq[1] == lat.qubit_index({O::V, 4, 0}));
    CHECK(pq[2] == lat.qubit_index({O::H, 0, 4}));
    CHECK(pq[3] == lat.qubit_index({O::V, 4, 4}));
    const auto pc = lat.plaquette_corners(p);
    CHECK(pc[0] == lat.check_index({4, 4}));
    CHECK(pc[1] == lat.check_index({4, 0}));
    CHECK(pc[2] == lat.check_index({0, 0}));
    CHECK(pc[3] == lat.check_index({0, 4}));
}

TEST_CASE("rows of H sum to zero") {
    const ToricLattice lat(6);
    std::vector<int> col(lat.n_qubits(), 0);
    for (int c = 0; c < lat.n_checks(); ++c)
        for (int q : lat.check_qubits(c)) col[q] ^= 1;
    for (int x : col) CHECK(x == 0);
}

TEST_CASE("syndrome_of examples") {
    const ToricLattice lat(9);
    const auto s = syndrome_of(lat, lat.make_error({{O::H, 0, 0}}));
    CHECK(s == lat.make_syndrome({{0, 0}, {0, 1}}));
    CHECK_FALSE(s.fake());

    const auto e4 = lat.make_error({{O::H, 0, 0}, {O::H, 0, 1}, {O::H, 0, 2}, {O::H, 0, 3}});
    const auto s4 = syndrome_of(lat, e4);
    CHECK(s4 == lat.make_syndrome({{0, 0}, {0, 4}}));
    CHECK(s4.weight() == 2);

    CHECK(syndrome_of(lat, lat.plaquette_boundary({0, 0})).none());
    CHECK_THROWS_AS(syndrome_of(lat, ErrorVector(5)), InvalidParameter);
}

TEST_CASE("check_distance") {
    const ToricLattice lat(9);
    CHECK(check_distance(lat, VertexId{0, 0}, VertexId{0, 4}) == 4);
    CHECK(check_distance(lat, VertexId{0, 0}, VertexId{0, 5}) == 4);
    CHECK(check_distance(lat, VertexId{3, 7}, VertexId{3, 7}) == 0);

    const ToricLattice l5(5);
    const int n = l5.n_checks();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CHECK(check_distance(l5, a, b) == check_distance(l5, b, a));
            CHECK((check_distance(l5, a, b) == 0) == (a == b));
            for (int c = 0; c < n; ++c)
                CHECK(check_distance(l5, a, c) <= check_distance(l5, a, b) + check_distance(l5, b, c));
        }
}

TEST_CASE("syndrome_metrics") {
    const ToricLattice lat(9);
    const auto s4 = lat.make_syndrome({{0, 0}, {0, 4}});
    CHECK(syndrome_metrics(lat, s4).min_pairwise_distance == 4);
    CHECK(syndrome_metrics(lat, s4).diameter == 4);
    const auto one = lat.make_syndrome({{2, 2}});
    CHECK(one.fake());
    CHECK(syndrome_metrics(lat, one).min_pairwise_distance == SyndromeMetrics::kInfinite);
    CHECK(syndrome_metrics(lat, one).diameter == 0);
    CHECK(syndrome_metrics(lat, lat.make_syndrome({{0, 0}, {1, 1}})).min_pairwise_distance == 2);
    CHECK_THROWS_AS(syndrome_metrics(lat, SyndromeVector(lat.n_checks())), UndefinedMetrics);
}

TEST_CASE("homology_class") {
    const ToricLattice lat(7);
    ErrorVector loop(lat.n_qubits());
    for (int c = 0; c < 7; ++c) loop.set(lat.qubit_index({O::H, 2, c}));
    CHECK(homology_class(lat, loop) == Homology{true, false});
    ErrorVector vloop(lat.n_qubits());
    for (int r = 0; r < 7; ++r) vloop.set(lat.qubit_index({O::V, r, 3}));
    CHECK(homology_class(lat, vloop) == Homology{false, true});
    CHECK(homology_class(lat, lat.plaquette_boundary({3, 5})).trivial());
    CHECK(homology_class(lat, ErrorVector(lat.n_qubits())).trivial());
    CHECK_THROWS_AS(homology_class(lat, lat.make_error({{O::H, 0, 0}})), NotACycle);
    CHECK(homology_class(lat, loop ^ vloop) == Homology{true, true});
}

TEST_CASE("linearity, stabilizer invariance, homology additivity") {
    const ToricLattice lat(7);
    std::mt19937_64 rng(11);
    auto random_error = [&] {
        ErrorVector e(lat.n_qubits());
        for (int q = 0; q < lat.n_qubits(); ++q) e.set(q, rng() % 5 == 0);
        return e;
    };
    auto random_cycle = [&] {
        ErrorVector r(lat.n_qubits());
        for (int k = 0; k < 6; ++k) r ^= lat.plaquette_boundary(lat.plaquette(rng() % lat.n_plaquettes()));
        if (rng() & 1) {
            const int row = static_cast<int>(rng() % 7);
            for (int c = 0; c < 7; ++c) r.flip(lat.qubit_index({O::H, row, c}));
        }
        if (rng() & 1)
            for (int x = 0; x < 7; ++x) r.flip(lat.qubit_index({O::V, x, 1}));
        return r;
    };
    for (int t = 0; t < 200; ++t) {
        const auto a = random_error(), b = random_error();
        CHECK(syndrome_of(lat, a ^ b) == (syndrome_of(lat, a) ^ syndrome_of(lat, b)));
        const auto p = lat.plaquette_boundary(lat.plaquette(rng() % lat.n_plaquettes()));
        CHECK(syndrome_of(lat, a ^ p) == syndrome_of(lat, a));
        const auto r1 = random_cycle(), r2 = random_cycle();
        const auto h1 = homology_class(lat, r1), h2 = homology_class(lat, r2), h12 = homology_class(lat, r1 ^ r2);
        CHECK(h12.wind_h == (h1.wind_h != h2.wind_h));
        CHECK(h12.wind_v == (h1.wind_v != h2.wind_v));
        CHECK(homology_class(lat, r1 ^ p) == h1);
    }
}

TEST_CASE("embed_patch") {
    const ToricLattice l9(9), l18(18);
    const auto e4 = l9.make_error({{O::H, 0, 0}, {O::H, 0, 1}, {O::H, 0, 2}, {O::H, 0, 3}});
    const auto moved = embed_patch(l9, l18, e4, {0, 0});
    CHECK(moved == l18.make_error({{O::H, 0, 0}, {O::H, 0, 1}, {O::H, 0, 2}, {O::H, 0, 3}}));

    const auto single = embed_patch(l9, l18, l9.make_error({{O::V, 5, 6}}), {3, 4});
    CHECK(single == l18.make_error({{O::V, 3, 4}}));

    // a shape straddling the seam of the source torus is unwrapped first
    const auto seam = l9.make_error({{O::H, 8, 8}, {O::H, 8, 0}});
    CHECK(embed_patch(l9, l18, seam, {1, 1}) == l18.make_error({{O::H, 1, 1}, {O::H, 1, 2}}));

    ErrorVector loop(l9.n_qubits());
    for (int c = 0; c < 9; ++c) loop.set(l9.qubit_index({O::H, 0, c}));
    CHECK_THROWS_AS(embed_patch(l9, l18, loop, {0, 0}), NotEmbeddable);

    // embedding commutes with taking the syndrome
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        ErrorVector e(l9.n_qubits());
        for (int k = 0; k < 3; ++k) {
            const EdgeId edge{(rng() & 1) ? O::H : O::V, static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
            e.flip(l9.qubit_index(edge));
        }
        if (syndrome_of(l9, e).none()) continue;
        const auto s = syndrome_of(l9, e);
        const auto se = syndrome_of(l18, embed_patch(l9, l18, e, {5, 5}));
        // both are translates of the same pattern
        const auto direct = embed_patch(l9, l18, s, {0, 0});
        CHECK(embed_patch(l18, l18, se, {0, 0}) == direct);
    }
}

TEST_CASE("to_tanner") {
    const ToricLattice lat(3);
    const auto g = to_tanner(lat);
    CHECK(g.n_variables() == 18);
    CHECK(g.n_checks() == 9);
    CHECK(g.n_edges() == 36);
    for (int v = 0; v < g.n_variables(); ++v) CHECK(g.variable_degree(v) == 2);
    for (int c = 0; c < g.n_checks(); ++c) CHECK(g.check_degree(c) == 4);
}

TEST_CASE("fake flag and xor") {
    const ToricLattice lat(5);
    const auto a = lat.make_syndrome({{0, 0}});
    const auto b = lat.make_syndrome({{1, 1}});
    CHECK(a.fake());
    const auto ab = a ^ b;
    CHECK_FALSE(ab.fake());
    CHECK((a ^ a).none());
}

TEST_CASE("reflections through a check") {
    const ToricLattice lat(7);
    const VertexId o{2, 3};
    const auto s = lat.make_syndrome({{2, 3}, {3, 4}});
    CHECK(reflect(lat, s, o, Reflection::Transpose) == s);
    CHECK_FALSE(reflect(lat, s, o, Reflection::MirrorRows) == s);
    for (auto kind : {Reflection::Transpose, Reflection::AntiTranspose, Reflection::MirrorRows, Reflection::MirrorCols})
        for (int q = 0; q < lat.n_qubits(); ++q) {
            const int r = reflect_qubit(lat, q, o, kind);
            CHECK(reflect_qubit(lat, r, o, kind) == q);
            const auto e = syndrome_of(lat, lat.make_error(std::vector<int>{q}));
            CHECK(reflect(lat, e, o, kind) == syndrome_of(lat, lat.make_error(std::vector<int>{r})));
        }
}

TEST_CASE("json round trip") {
    const ToricLattice lat(7);
    const auto e = lat.make_error({{O::H, 0, 1}, {O::V, 6, 2}});
    int d = 0;
    CHECK(error_from_json(error_to_json(lat, e), &d) == e);
    CHECK(d == 7);
    CHECK(error_to_json(lat, e) == R"({"d":7,"error":["H 0 1","V 6 2"]})");
    const auto s = lat.make_syndrome({{0, 0}, {3, 3}, {4, 1}});
    const auto back = syndrome_from_json(syndrome_to_json(lat, s));
    CHECK(back == s);
    CHECK(back.fake());
    CHECK_THROWS_AS(error_from_json(R"({"d":7,"error":["X 0 1"]})"), InvalidParameter);
    CHECK_THROWS_AS(syndrome_from_json("{not json"), InvalidParameter);
}
