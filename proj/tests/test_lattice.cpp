// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "djw/errors.hpp"
#include "djw/lattice.hpp"

using namespace djw;

namespace {

bool is_bijection(const CanonicalOrdering &m) {
    std::vector<int> r = m.ranks();
    std::sort(r.begin(), r.end());
    for (int i = 0; i < m.size(); ++i)
        if (r[i] != i) return false;
    for (int k = 0; k < m.size(); ++k)
        if (m.rank(m.index_at(k)) != k) return false;
    return true;
}

}  // namespace

TEST_CASE("lattice shape") {
    LatticeShape s({3, 4, 2});
    CHECK(s.size() == 24);
    CHECK(s.dims() == 3);
    for (int i = 0; i < s.size(); ++i) {
        Site t = s.site(i);
        CHECK(s.index(t) == i);
        for (int a = 0; a < 3; ++a) CHECK((t[a] >= 0 && t[a] < s.length(a)));
    }
    CHECK(LatticeShape::parse("4x4") == LatticeShape({4, 4}));
    CHECK(LatticeShape::parse("3x3x3").size() == 27);
    CHECK(LatticeShape::parse("2x5").str() == "2x5");
    CHECK_THROWS_AS(LatticeShape({0, 2}), DimensionError);
    CHECK_THROWS_AS(LatticeShape::parse("4y4"), ParseError);
    CHECK(LatticeShape({6, 6}).nn_edges().size() == 60);
    CHECK(s.distance_l1(s.index({0, 0, 0}), s.index({2, 3, 1})) == 6);
}

TEST_CASE("z pattern") {
    LatticeShape s({2, 2});
    auto z = z_pattern(s);
    CHECK(z.rank_of({0, 0}) == 1);
    CHECK(z.rank_of({1, 0}) == 0);
    CHECK(z.rank_of({0, 1}) == 3);
    CHECK(z.rank_of({1, 1}) == 2);
    CHECK(z_pattern(LatticeShape({1, 1})).rank_of({0, 0}) == 0);
    auto z3 = z_pattern(LatticeShape({3, 3}));
    for (int c = 0; c < 3; ++c) {
        std::set<int> got;
        for (int r = 0; r < 3; ++r) got.insert(z3.rank_of({r, c}));
        CHECK(got == std::set<int>{3 * c, 3 * c + 1, 3 * c + 2});
    }
}

TEST_CASE("s pattern") {
    auto s = s_pattern(LatticeShape({2, 2}));
    CHECK(s.rank_of({0, 0}) == 0);
    CHECK(s.rank_of({0, 1}) == 1);
    CHECK(s.rank_of({1, 1}) == 2);
    CHECK(s.rank_of({1, 0}) == 3);
    CHECK(s_pattern(LatticeShape({3, 3})).rank_of({1, 2}) == 3);
    for (int L = 1; L <= 6; ++L) {
        auto m = s_pattern(LatticeShape({L, L + 1}));
        CHECK(m.rank_of({0, 0}) == 0);
        CHECK(is_bijection(m));
        CHECK(is_hamiltonian_path(m));
    }
}

TEST_CASE("d-dimensional s pattern") {
    auto line = d_dim_s_pattern(LatticeShape({4}), DimHierarchy::standard(1));
    for (int i = 0; i < 4; ++i) CHECK(line.rank(i) == i);
    LatticeShape s2({2, 2});
    CHECK(d_dim_s_pattern(s2, DimHierarchy::standard(2)) == s_pattern(s2));

    // plane p = 0 as a 2D S, then plane p = 1 traversed backwards
    LatticeShape s3({2, 2, 2});
    auto m = d_dim_s_pattern(s3, DimHierarchy::standard(3));
    CHECK(is_bijection(m));
    CHECK(is_hamiltonian_path(m));
    auto s2d = s_pattern(s2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            CHECK(m.rank_of({0, r, c}) == s2d.rank_of({r, c}));
            CHECK(m.rank_of({1, r, c}) == 7 - s2d.rank_of({r, c}));
        }
    for (auto &h : {std::vector<int>{2, 1, 0}, {1, 2, 0}, {0, 2, 1}}) {
        auto mh = d_dim_s_pattern(LatticeShape({3, 2, 4}), DimHierarchy{h});
        CHECK(is_bijection(mh));
        CHECK(is_hamiltonian_path(mh));
    }
    CHECK_THROWS_AS(d_dim_s_pattern(s3, DimHierarchy{{0, 0, 1}}), DimensionError);
}

TEST_CASE("boustrophedon ordering") {
    LatticeShape s({4, 4});
    CHECK(boustrophedon_ordering(BoustrophedonSpec::from_widths({4}), s) == s_pattern(s));
    auto ones = boustrophedon_ordering(BoustrophedonSpec::from_widths({1, 1, 1, 1}), s);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(ones.rank_of({r, c}) == 4 * c + r);
    auto b = boustrophedon_ordering(BoustrophedonSpec::from_widths({2, 2}), s);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) CHECK(b.rank_of({r, c}) < 8);
    CHECK(b.rank_of({0, 0}) == 0);
    CHECK(b.rank_of({0, 1}) == 1);
    CHECK(b.rank_of({1, 1}) == 2);
    CHECK(b.rank_of({0, 2}) == 8);
    for (int C = 1; C <= 6; ++C)
        for (int w = 1; w <= C; ++w)
            for (int off = 0; off < w; ++off) {
                auto m = boustrophedon_ordering(BoustrophedonSpec::uniform(C, w, off), LatticeShape({3, C}));
                CHECK(is_bijection(m));
            }
    CHECK_THROWS_AS(boustrophedon_ordering(BoustrophedonSpec::from_widths({2, 1}), s), SpecError);
    CHECK(BoustrophedonSpec::parse("1,2,1").str() == "1,2,1");
    CHECK(BoustrophedonSpec::parse("2,2;1,3").str() == "2,2;1,3");
    CHECK_THROWS_AS(BoustrophedonSpec::parse("1,,2"), ParseError);

    // 3D: row and column partitions give per-subgrid 3D S patterns
    LatticeShape s3({2, 4, 4});
    BoustrophedonSpec spec3 = BoustrophedonSpec::parse("2,2;2,2");
    auto m3 = boustrophedon_ordering(spec3, s3);
    CHECK(is_bijection(m3));
    for (int p = 0; p < 2; ++p)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) CHECK(m3.rank_of({p, r, c}) < 8);
}

TEST_CASE("subgrid partitions") {
    auto parts = subgrid_partitions(LatticeShape({4}), 1);
    REQUIRE(parts.size() == 2);
    std::set<std::vector<std::pair<int, int>>> got;
    for (auto &p : parts) {
        std::vector<std::pair<int, int>> iv;
        for (auto &b : p.blocks) iv.push_back({b[0].begin, b[0].end - 1});
        got.insert(iv);
    }
    CHECK(got.count({{0, 1}, {2, 3}}) == 1);
    CHECK(got.count({{0, 0}, {1, 2}, {3, 3}}) == 1);

    LatticeShape s({6, 6});
    auto p6 = subgrid_partitions(s, 1);
    for (auto &p : p6) {
        std::vector<int> cover(s.size(), 0);
        for (auto &b : p.blocks) {
            for (auto &iv : b) CHECK(iv.width() <= 2);
            for (int r = b[0].begin; r < b[0].end; ++r)
                for (int c = b[1].begin; c < b[1].end; ++c) ++cover[s.index({r, c})];
        }
        CHECK(std::all_of(cover.begin(), cover.end(), [](int k) { return k == 1; }));
    }
    // every NN pair lies inside one block of some partition
    int covered = 0;
    for (auto [a, b] : s.nn_edges()) {
        bool in = false;
        for (auto &p : p6)
            for (auto &blk : p.blocks) {
                auto inside = [&](int q) {
                    Site t = s.site(q);
                    return t[0] >= blk[0].begin && t[0] < blk[0].end && t[1] >= blk[1].begin && t[1] < blk[1].end;
                };
                in |= inside(a) && inside(b);
            }
        covered += in;
    }
    CHECK(covered == 60);
    CHECK_THROWS_AS(subgrid_partitions(s, 0), ParameterError);
}

TEST_CASE("inversion pairs") {
    LatticeShape s({2, 2});
    auto z = z_pattern(s), sp = s_pattern(s);
    CHECK(inversion_pairs(z, z).empty());
    auto inv = inversion_pairs(z, sp);
    std::set<std::pair<int, int>> got;
    for (auto [a, b] : inv) got.insert(std::minmax(a, b));
    auto idx = [&](int r, int c) { return s.index({r, c}); };
    std::set<std::pair<int, int>> want = {std::minmax(idx(1, 0), idx(0, 0)), std::minmax(idx(1, 0), idx(0, 1)),
                                          std::minmax(idx(1, 0), idx(1, 1)), std::minmax(idx(1, 1), idx(0, 1))};
    CHECK(got == want);
    for (int n : {3, 5, 7}) {
        auto m = s_pattern(LatticeShape({n, n}));
        CHECK(inversion_count(m, m.reversed()) == int64_t(n * n) * (n * n - 1) / 2);
    }
    // brute force against random orderings
    std::mt19937 rng(5);
    LatticeShape s4({3, 4});
    for (int k = 0; k < 20; ++k) {
        std::vector<int> a(12), b(12);
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), 0);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        CanonicalOrdering ma(s4, a), mb(s4, b);
        int64_t brute = 0;
        for (int i = 0; i < 12; ++i)
            for (int j = i + 1; j < 12; ++j) brute += (a[i] < a[j]) != (b[i] < b[j]);
        CHECK(inversion_count(ma, mb) == brute);
        CHECK(static_cast<int64_t>(inversion_pairs(ma, mb).size()) == brute);
    }
}

TEST_CASE("ordering json round trip") {
    auto m = boustrophedon_ordering(BoustrophedonSpec::from_widths({1, 2}), LatticeShape({3, 3}));
    CHECK(CanonicalOrdering::from_json(m.to_json()) == m);
    CHECK_THROWS(CanonicalOrdering(LatticeShape({2, 2}), {0, 1, 1, 3}));
}
