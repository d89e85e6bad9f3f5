// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "djw/errors.hpp"
#include "djw/oracles.hpp"

using namespace djw;

namespace {

Circuit random_circuit(int n, int m, std::mt19937 &rng) {
    Circuit c(n);
    std::uniform_int_distribution<int> q(0, n - 1), kind(0, 14), ax(0, 6);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int i = 0; i < m; ++i) {
        auto k = static_cast<GateKind>(kind(rng));
        int a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        double t = ang(rng);
        switch (k) {
            case GateKind::CNOT: c.add(Gate::cnot(a, b)); break;
            case GateKind::CZ: c.add(Gate::cz(a, b)); break;
            case GateKind::SWAP: c.add(Gate::swap(a, b)); break;
            case GateKind::FSWAP: c.add(Gate::fswap(a, b)); break;
            case GateKind::PauliRot: c.add(Gate::rot(static_cast<RotAxis>(ax(rng)), a, b, t)); break;
            case GateKind::FswapHop: c.add(Gate::fswap_hop(a, b, t)); break;
            case GateKind::CPhase: c.add(Gate::cphase(a, b, t)); break;
            default: c.add(Gate::one(k, a, (k == GateKind::RZ || k == GateKind::RY) ? t : 0.0)); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("dense unitary basics") {
    CHECK(dense_unitary(Circuit(2)).isApprox(CMatrix::Identity(4, 4)));
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    CMatrix u = dense_unitary(c);
    // control qubit 0 is bit 0 of the basis index
    CHECK(std::abs(u(3, 1) - 1.0) < 1e-14);
    CHECK(std::abs(u(1, 3) - 1.0) < 1e-14);
    CHECK(std::abs(u(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(u(2, 2) - 1.0) < 1e-14);
    CHECK_THROWS_AS(dense_unitary(Circuit(13)), SizeError);
}

TEST_CASE("dense kernels agree and compose") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit a = random_circuit(4, 30, rng), b = random_circuit(4, 30, rng);
        CMatrix ua = dense_unitary(a);
        CHECK((ua - dense_unitary_serial(a)).norm() < 1e-12);
        CHECK((ua - dense_unitary_kron(a)).norm() < 1e-10);
        CHECK((ua.adjoint() * ua - CMatrix::Identity(16, 16)).norm() < 1e-12);
        Circuit ab = a;
        ab.append(b);
        CHECK((dense_unitary(ab) - dense_unitary(b) * ua).norm() < 1e-10);
    }
}

TEST_CASE("decomposition preserves the unitary") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Circuit c = random_circuit(3 + trial % 4, 25, rng);
        for (bool cz : {false, true}) {
            Circuit d = decompose_to_cnot_basis(c, {cz});
            CHECK(phase_insensitive_distance(dense_unitary(d), dense_unitary(c)) < 1e-9);
            for (auto &g : d.gates()) {
                bool ok = g.kind == GateKind::CNOT || !g.two_qubit() || (!cz && g.kind == GateKind::CZ);
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("decomposition counts") {
    Circuit c(2);
    c.add(Gate::fswap(0, 1));
    CHECK(resource_report(c).cnot_count == 2);
    Circuit h(2);
    h.add(Gate::fswap_hop(0, 1, 0.3));
    auto d = decompose_to_cnot_basis(h);
    int two = 0;
    for (auto &g : d.gates()) two += g.two_qubit();
    CHECK(two == 2);
    Circuit s(2);
    s.add(Gate::swap(0, 1));
    CHECK(resource_report(s).cnot_count == 3);
    Circuit p(2);
    p.add(Gate::cphase(0, 1, 0.7));
    CHECK(resource_report(p).cnot_count == 2);
    Circuit three(4);
    three.add(Gate::fswap(0, 1));
    three.add(Gate::fswap(1, 2));
    three.add(Gate::fswap(2, 3));
    CHECK(resource_report(three).cnot_count == 6);
    Circuit ones(3);
    ones.add(Gate::one(GateKind::H, 0));
    ones.add(Gate::one(GateKind::RZ, 1, 0.2));
    CHECK(decompose_to_cnot_basis(ones) == ones);
    CHECK(resource_report(Circuit(3)).cnot_count == 0);
}

TEST_CASE("connectivity") {
    Circuit c(3, LatticeShape({1, 3}));
    CHECK(validate_connectivity(c).empty());
    c.add(Gate::cnot(0, 2));
    CHECK(validate_connectivity(c).size() == 1);
    CHECK_THROWS_AS(validate_connectivity(Circuit(3)), MissingShapeError);
    CHECK_THROWS_AS(depth(c, DepthModel::nn_lattice), ConnectivityError);
}

TEST_CASE("depth models") {
    LatticeShape line({1, 6});
    Circuit lad(6, line);
    int id = lad.new_ladder_id();
    for (int q = 0; q < 5; ++q) lad.add(Gate::cnot(q, q + 1, id));
    CHECK(depth(lad, DepthModel::nn_lattice) == 5);
    CHECK(depth(lad, DepthModel::lattice_surgery) == 7);
    CHECK(depth(lad, DepthModel::all_to_all) == 3);
    Circuit two(4, LatticeShape({1, 4}));
    two.add(Gate::cnot(0, 1));
    two.add(Gate::cnot(2, 3));
    CHECK(depth(two, DepthModel::nn_lattice) == 1);
    // monotone under appending
    std::mt19937 rng(3);
    Circuit grow(5, LatticeShape({1, 5}));
    int prev = 0;
    for (int i = 0; i < 60; ++i) {
        int a = static_cast<int>(rng() % 4);
        grow.add(i % 3 ? Gate::cnot(a, a + 1) : Gate::one(GateKind::H, a));
        int now = depth(grow, DepthModel::nn_lattice);
        CHECK(now >= prev);
        CHECK(now >= depth(grow, DepthModel::all_to_all));
        prev = now;
    }
}

TEST_CASE("text format round trip") {
    std::mt19937 rng(9);
    Circuit c = random_circuit(5, 80, rng);
    c.bind_shape(LatticeShape({1, 5}));
    int id = c.new_ladder_id();
    c.add(Gate::cnot(0, 1, id));
    c.add(Gate::cnot(1, 2, id));
    Circuit back = Circuit::from_text(c.to_text());
    CHECK(back == c);
    CHECK(back.to_text() == c.to_text());
    CHECK_THROWS_AS(Circuit::from_text("QUBITS 2\nBOGUS 0 1\n"), ParseError);
}
