#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "toric/checks.hpp"
#include "toric/decoder.hpp"
#include "toric/decoding_tree.hpp"
#include "toric/errors.hpp"

using namespace toric;
using O = Orientation;

namespace {

SyndromeVector random_syndrome(const ToricLattice& lat, std::mt19937_64& rng, int flips) {
    SyndromeVector s(lat.n_checks());
    for (int k = 0; k < flips; ++k) s.flip(rng() % lat.n_checks());
    s.set_fake(s.weight() % 2);
    return s;
}

bool has_repeated_check(const DecodingTree& t) {
    std::set<int> seen;
    for (const auto& v : t.vertices())
        if (!seen.insert(v.check).second) return true;
    return false;
}

}  // namespace

TEST_CASE("tree sizes") {
    const ToricLattice lat(7);
    const int q = lat.qubit_index({O::H, 3, 3});
    const auto t1 = build_tree(lat, q, 1);
    CHECK(t1.n_vertices() == 2);
    CHECK(t1.n_edges() == 7);
    int dangling = 0;
    for (const auto& e : t1.edges()) dangling += e.dangling();
    CHECK(dangling == 6);
    const auto t2 = build_tree(lat, q, 2);
    CHECK(t2.n_edges() == 25);
    CHECK(t2.n_vertices() == 8);
    for (int depth = 1; depth <= 6; ++depth) {
        const auto t = build_tree(lat, q, depth);
        int edges = 1, level = 2;
        for (int k = 1; k <= depth; ++k) edges += (level *= 3);
        CHECK(t.n_edges() == edges);
        for (const auto& v : t.vertices())
            for (int c : v.children) CHECK(c != DecodingTree::kNone);
    }
    CHECK(t2.root_qubit() == q);
}

TEST_CASE("tree paths are walks without return") {
    const ToricLattice lat(7);
    const auto t = build_tree(lat, lat.qubit_index({O::V, 2, 5}), 5);
    for (int e = 1; e < t.n_edges(); ++e) {
        const auto& edge = t.edges()[e];
        const auto& up = t.vertices()[edge.ends[0]];
        const auto ends = lat.qubit_checks(edge.qubit);
        CHECK((ends[0] == up.check || ends[1] == up.check));
        CHECK(edge.qubit != t.edges()[up.parent_edge].qubit);
        if (!edge.dangling()) CHECK(t.vertices()[edge.ends[1]].check == lat.other_end(edge.qubit, up.check));
    }
}

TEST_CASE("checks repeat once the tree wraps around a plaquette") {
    const ToricLattice lat(7);
    const int q = lat.qubit_index({O::H, 3, 3});
    CHECK_FALSE(has_repeated_check(build_tree(lat, q, 1)));
    CHECK_FALSE(has_repeated_check(build_tree(lat, q, 2)));
    CHECK(has_repeated_check(build_tree(lat, q, 4)));
    // the root endpoint comes back at level 3
    const auto t4 = build_tree(lat, q, 4);
    int hits = 0;
    for (const auto& v : t4.vertices()) hits += v.check == t4.vertices()[0].check && v.level == 3;
    CHECK(hits == 2);
}

TEST_CASE("tree depth limits") {
    const ToricLattice lat(7);
    CHECK_THROWS_AS(build_tree(lat, 0, 0), InvalidParameter);
    CHECK_THROWS_AS(build_tree(lat, 0, 13), ResourceLimit);
    CHECK_NOTHROW(build_tree(lat, 0, 4, 4));
    CHECK_THROWS_AS(build_tree(lat, 0, 5, 4), ResourceLimit);
    CHECK_THROWS_AS(enumerate_configurations(build_tree(lat, 0, 3), SyndromeVector(49), false), ResourceLimit);
}

TEST_CASE("zero syndrome weights") {
    const ToricLattice lat(7);
    const SyndromeVector zero(lat.n_checks());
    int previous = -1;
    for (int depth = 1; depth <= 8; ++depth) {
        const auto w = min_config_weights(build_tree(lat, 10, depth), zero);
        CHECK(w.w_circ == 0);
        CHECK(w.w_bullet == 1 + 2 * depth);
        if (previous >= 0) CHECK(w.w_bullet == previous + 2);
        previous = w.w_bullet;
    }
    const auto t1 = build_tree(lat, 10, 1);
    const auto cfgs = enumerate_configurations(t1, zero, false);
    bool all_unlabeled = false;
    for (const auto& c : cfgs) all_unlabeled |= c.none();
    CHECK(all_unlabeled);
}

TEST_CASE("fake single-check syndrome at depth 1") {
    const ToricLattice lat(7);
    const int c = lat.check_index({3, 3});
    const auto s = lat.make_syndrome({{3, 3}});
    for (int q : lat.check_qubits(c)) {
        const auto t = build_tree(lat, q, 1);
        int v_c = t.vertices()[0].check == c ? 0 : 1;
        int best[2] = {1 << 20, 1 << 20};
        for (int root : {0, 1})
            for (const auto& cfg : enumerate_configurations(t, s, root)) {
                CHECK(is_configuration(t, s, cfg));
                int deg = 0;
                for (int e : t.incident_edges(v_c)) deg += cfg[e];
                CHECK(deg % 2 == 1);
                best[root] = std::min(best[root], cfg.weight());
            }
        // unlabeled root: one dangling edge under v_c; labeled root: the
        // other endpoint needs one more
        CHECK(best[0] == 1);
        CHECK(best[1] == 2);
        const auto w = min_config_weights(t, s);
        CHECK(w.w_circ == best[0]);
        CHECK(w.w_bullet == best[1]);
        const auto out = decode(to_tanner(lat), s, DecoderConfig::ms(1), std::vector<int>{q});
        CHECK(out.app_trace.at(q)[0] == w.app());
    }
}

TEST_CASE("dynamic program agrees with enumeration at depths 1 and 2") {
    const ToricLattice lat(7);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto s = random_syndrome(lat, rng, 1 + t % 8);
        const int q = static_cast<int>(rng() % lat.n_qubits());
        for (int depth = 1; depth <= 2; ++depth) {
            const auto tree = build_tree(lat, q, depth);
            int best[2];
            for (int root : {0, 1}) {
                best[root] = 1 << 20;
                const auto cfgs = enumerate_configurations(tree, s, root);
                REQUIRE_FALSE(cfgs.empty());
                for (const auto& c : cfgs) {
                    CHECK(c[0] == static_cast<bool>(root));
                    best[root] = std::min(best[root], c.weight());
                }
            }
            const auto w = min_config_weights(tree, s);
            CHECK(w.w_circ == best[0]);
            CHECK(w.w_bullet == best[1]);
        }
    }
}

TEST_CASE("dynamic program agrees with a T-join matching at depths 1 to 4") {
    const ToricLattice lat(7);
    std::mt19937_64 rng(5);
    int compared = 0;
    while (compared < 100) {
        const auto s = random_syndrome(lat, rng, 1 + rng() % 3);
        const auto tree = build_tree(lat, static_cast<int>(rng() % lat.n_qubits()), 1 + compared % 4);
        int odd = 0;
        for (const auto& v : tree.vertices()) odd += s[v.check];
        if (odd > 16) continue;
        const auto w = min_config_weights(tree, s);
        CHECK(w.w_circ == testing::matching_oracle(tree, s, false));
        CHECK(w.w_bullet == testing::matching_oracle(tree, s, true));
        ++compared;
    }
}

TEST_CASE("weights are finite and non-negative") {
    const ToricLattice lat(7);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto s = random_syndrome(lat, rng, static_cast<int>(rng() % 20));
        const auto w = min_config_weights(build_tree(lat, static_cast<int>(rng() % 98), 6), s);
        CHECK(w.w_circ >= 0);
        CHECK(w.w_bullet >= 1);
        CHECK(w.w_circ < 1000);
        CHECK(w.w_bullet < 1000);
    }
}

TEST_CASE("MS APP equals the tree weight difference") {
    const ToricLattice lat(7);
    const auto report = tree_check(lat, 20, 10, 6, 3);
    CHECK(report.calibration_ok);
    CHECK(report.mismatches == 0);
    CHECK(report.comparisons > 1000);
    CHECK(tree_depth_for_iteration(3) == 3);

    // and directly, for every qubit at iterations 1..4 on one syndrome
    const auto s = syndrome_of(lat, lat.make_error({{O::H, 1, 1}, {O::V, 1, 2}, {O::H, 4, 4}}));
    std::vector<int> all(lat.n_qubits());
    for (int q = 0; q < lat.n_qubits(); ++q) all[q] = q;
    auto cfg = DecoderConfig::ms(4);
    cfg.stop_on_convergence = false;
    const auto out = decode(to_tanner(lat), s, cfg, all);
    for (int q : all)
        for (int i = 1; i <= 4; ++i)
            CHECK(out.app_trace.at(q)[i - 1] ==
                  min_config_weights(build_tree(lat, q, tree_depth_for_iteration(i)), s).app());
}

TEST_CASE("is_configuration") {
    const ToricLattice lat(7);
    const auto t = build_tree(lat, lat.qubit_index({O::H, 3, 3}), 3);
    const TreeConfiguration none(t.n_edges());
    CHECK(is_configuration(t, SyndromeVector(lat.n_checks()), none));
    CHECK_FALSE(is_configuration(t, lat.make_syndrome({{3, 3}}), none));
    CHECK_THROWS_AS(is_configuration(t, SyndromeVector(lat.n_checks()), BitVector(3)), InvalidParameter);
}

TEST_CASE("invert_walk") {
    const ToricLattice lat(7);
    const auto t = build_tree(lat, lat.qubit_index({O::H, 3, 3}), 3);
    const SyndromeVector zero(lat.n_checks());
    const TreeConfiguration none(t.n_edges());

    // down from a dangling edge under vertex 0, through the root, up and
    // out under vertex 1
    auto path_to = [&](int v) {
        std::vector<int> up;
        while (t.vertices()[v].level > 0) {
            up.push_back(t.vertices()[v].parent_edge);
            v = t.edges()[t.vertices()[v].parent_edge].ends[0];
        }
        return std::pair{up, v};
    };
    int leaf0 = -1, leaf1 = -1;
    for (int v = 0; v < t.n_vertices(); ++v) {
        if (t.vertices()[v].level != 2) continue;
        const int side = path_to(v).second;
        (side == 0 ? leaf0 : leaf1) = v;
    }
    auto [up0, s0] = path_to(leaf0);
    auto [up1, s1] = path_to(leaf1);
    std::vector<int> walk{t.vertices()[leaf0].children[0]};
    walk.insert(walk.end(), up0.begin(), up0.end());
    walk.push_back(0);
    walk.insert(walk.end(), up1.rbegin(), up1.rend());
    walk.push_back(t.vertices()[leaf1].children[2]);
    const auto cfg = invert_walk(t, none, walk);
    CHECK(is_configuration(t, zero, cfg));
    CHECK(cfg.weight() == static_cast<int>(walk.size()));
    CHECK(cfg.weight() == 7);

    // parent edge traversed twice
    const auto& kids = t.vertices()[leaf0].children;
    const int parent = t.vertices()[leaf0].parent_edge;
    const auto c2 = invert_walk(t, none, std::vector<int>{kids[0], parent, parent, kids[1]});
    CHECK(is_configuration(t, zero, c2));
    CHECK_FALSE(c2[parent]);
    CHECK(c2.weight() == 2);
    const std::vector<int> bounce{kids[0], kids[1]};
    const auto c3 = invert_walk(t, invert_walk(t, none, bounce), bounce);
    CHECK(c3 == none);

    CHECK_THROWS_AS(invert_walk(t, none, std::vector<int>{0, kids[0]}), InvalidWalk);
    CHECK_THROWS_AS(invert_walk(t, none, std::vector<int>{kids[0]}), InvalidWalk);
    CHECK_THROWS_AS(invert_walk(t, none, std::vector<int>{kids[0], kids[1], parent}), InvalidWalk);
    CHECK_THROWS_AS(invert_walk(t, none, std::vector<int>{kids[0], t.vertices()[leaf1].children[0]}), InvalidWalk);
}

TEST_CASE("inverting random walks preserves configurations") {
    const ToricLattice lat(9);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = random_syndrome(lat, rng, static_cast<int>(rng() % 10));
        const auto t = build_tree(lat, static_cast<int>(rng() % lat.n_qubits()), 1 + trial % 5);
        const auto cfg = testing::random_configuration(t, s, rng);
        REQUIRE(is_configuration(t, s, cfg));
        const auto walk = testing::random_walk(t, rng);
        CHECK(is_configuration(t, s, invert_walk(t, cfg, walk)));
    }
}

TEST_CASE("dot output") {
    const ToricLattice lat(5);
    const auto t = build_tree(lat, 0, 1);
    BitVector labels(t.n_edges());
    labels.set(0);
    const auto dot = t.to_dot(&labels);
    CHECK(dot.rfind("graph decoding_tree {", 0) == 0);
    CHECK(dot.find("v0 -- v1 [label=\"q0\", penwidth=3]") != std::string::npos);
    CHECK(dot.find("shape=point") != std::string::npos);
}
