// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "djw/errors.hpp"
#include "djw/oracles.hpp"
#include "djw/pauli.hpp"

using namespace djw;

namespace {

PauliString P(const std::string &s) { return PauliString::parse(s); }

BitVec bits(int n, std::initializer_list<int> on) {
    BitVec b(n);
    for (int i : on) b.flip(i);
    return b;
}

Circuit random_clifford(int n, int gates, std::mt19937 &rng) {
    Circuit c(n);
    std::uniform_int_distribution<int> kind(0, 9), q(0, n - 1);
    for (int k = 0; k < gates; ++k) {
        int a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        switch (kind(rng)) {
            case 0: c.add(Gate::cnot(a, b)); break;
            case 1: c.add(Gate::cz(a, b)); break;
            case 2: c.add(Gate::swap(a, b)); break;
            case 3: c.add(Gate::fswap(a, b)); break;
            case 4: c.add(Gate::one(GateKind::H, a)); break;
            case 5: c.add(Gate::one(GateKind::S, a)); break;
            case 6: c.add(Gate::one(GateKind::Sdg, a)); break;
            case 7: c.add(Gate::one(GateKind::X, a)); break;
            case 8: c.add(Gate::one(GateKind::Y, a)); break;
            default: c.add(Gate::one(GateKind::Z, a)); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("pauli products") {
    CHECK(P("X") * P("Y") == P("iZ"));
    CHECK(P("Y") * P("X") == P("-iZ"));
    CHECK(P("Z") * P("Z") == P("I"));
    CHECK(P("XZ") * P("ZX") == P("YY"));
    CHECK(P("X").is_hermitian());
    CHECK(!P("iX").is_hermitian());
    CHECK(P("XI").commutes(P("IX")));
    CHECK(!P("XI").commutes(P("ZI")));
    CHECK(P("XX").commutes(P("ZZ")));
    CHECK(P("-iXYZ").str() == "-iXYZ");
    CHECK_THROWS_AS(P("XQ"), ParseError);
    // products agree with matrices and the group is associative
    std::mt19937 rng(3);
    const char L[] = "IXYZ";
    for (int k = 0; k < 50; ++k) {
        auto rnd = [&] {
            std::string s;
            for (int q = 0; q < 3; ++q) s += L[rng() % 4];
            PauliString p = P(s);
            p.set_phase(static_cast<int>(rng() % 4));
            return p;
        };
        PauliString a = rnd(), b = rnd(), c = rnd();
        CHECK((pauli_matrix(a * b) - pauli_matrix(a) * pauli_matrix(b)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("pauli conjugation") {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    CHECK(conjugate(P("ZI"), c) == P("ZI"));
    CHECK(conjugate(P("XI"), c) == P("XX"));
    CHECK(conjugate(P("IZ"), c) == P("ZZ"));
    CHECK(conjugate(P("XY"), Circuit(2)) == P("XY"));
    // against dense matrices, with the c^dagger p c convention
    std::mt19937 rng(11);
    const char L[] = "IXYZ";
    for (int k = 0; k < 100; ++k) {
        Circuit rc = random_clifford(3, 12, rng);
        std::string s;
        for (int q = 0; q < 3; ++q) s += L[rng() % 4];
        PauliString p = P(s);
        CMatrix u = dense_unitary(rc);
        CMatrix want = u.adjoint() * pauli_matrix(p) * u;
        CHECK((pauli_matrix(conjugate(p, rc)) - want).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("parity flow") {
    CHECK(track_cnots(Circuit(3)).is_identity());
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    ParityFlowState f = track_cnots(c);
    CHECK(f.z_label(1) == bits(2, {0, 1}));
    CHECK(f.z_label(0) == bits(2, {0}));
    // ladder up a 3x1 column: label of row r is every row at or below it
    Circuit lad(3);
    lad.add(Gate::cnot(2, 1));
    lad.add(Gate::cnot(1, 0));
    ParityFlowState fl = track_cnots(lad);
    CHECK(fl.z_label(0) == bits(3, {0, 1, 2}));
    CHECK(fl.z_label(1) == bits(3, {1, 2}));
    CHECK(fl.z_label(2) == bits(3, {2}));
    std::mt19937 rng(2);
    for (int k = 0; k < 30; ++k) {
        Circuit r(5);
        for (int g = 0; g < 20; ++g) {
            int a = rng() % 5, b = (a + 1 + rng() % 4) % 5;
            r.add(Gate::cnot(a, b));
        }
        CHECK(track_cnots(r).inverse_transpose_consistent());
    }
}

TEST_CASE("conjugated cz expansion") {
    ParityFlowState id(2);
    PhasePolynomial p = conjugated_cz_expansion(id, 0, 1);
    CHECK(p.quadratic(0, 1));
    CHECK(p.linear().popcount() == 0);

    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    PhasePolynomial q = conjugated_cz_expansion(track_cnots(c), 0, 1);
    CHECK(q.quadratic(0, 1));
    CHECK(q.linear() == bits(2, {0}));

    PhasePolynomial r(2);
    r.add_product(bits(2, {0, 1}), bits(2, {0, 1}));
    CHECK(!r.quadratic(0, 1));
    CHECK(r.linear() == bits(2, {0, 1}));
    CHECK_THROWS_AS(conjugated_cz_expansion(id, 1, 1), ParameterError);
}

TEST_CASE("phase polynomial") {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cz(0, 1));
    c.add(Gate::cnot(0, 1));
    PhasePolynomial p = phase_polynomial(c);
    PhasePolynomial want(2);
    want.add_quadratic(0, 1);
    want.add_linear(0);
    CHECK(p == want);

    Circuit z(3);
    z.add(Gate::one(GateKind::Z, 2));
    PhasePolynomial pz = phase_polynomial(z);
    CHECK(pz.linear() == bits(3, {2}));
    CHECK(pz.quadratic_support_count() == 0);

    // diagonal of the dense unitary is (-1)^f(x)
    std::mt19937 rng(8);
    for (int k = 0; k < 30; ++k) {
        const int n = 4;
        Circuit v(n), d(n);
        for (int g = 0; g < 6; ++g) {
            int a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
            v.add(Gate::cnot(a, b));
        }
        for (int g = 0; g < 4; ++g) {
            int a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
            d.add(Gate::cz(a, b));
            if (rng() % 2) d.add(Gate::one(GateKind::Z, a));
        }
        Circuit full = v;
        full.append(d);
        full.append(v.inverse());
        PhasePolynomial f = phase_polynomial(full);
        CMatrix u = dense_unitary(full);
        for (uint64_t x = 0; x < (1u << n); ++x) {
            double sign = f.evaluate_bits(x) ? -1.0 : 1.0;
            CHECK(std::abs(u(x, x) - sign) < 1e-12);
        }
    }
}

TEST_CASE("majorana pairs") {
    CanonicalOrdering line = d_dim_s_pattern(LatticeShape({3}), DimHierarchy::standard(1));
    MajoranaPair m0 = majorana_pair({0}, line);
    CHECK(m0.even_string == P("XII"));
    CHECK(m0.odd_string == P("YII"));
    MajoranaPair m2 = majorana_pair({2}, line);
    CHECK(m2.even_string == P("ZZX"));
    CHECK(m2.odd_string == P("ZZY"));

    LatticeShape s({2, 2});
    auto sp = s_pattern(s);
    MajoranaPair m = majorana_pair({1, 0}, sp);
    PauliString want(4);
    want.set_letter(s.index({1, 0}), 'X');
    for (Site t : {Site{1, 1}, Site{0, 1}, Site{0, 0}}) want.set_letter(s.index(t), 'Z');
    CHECK(m.even_string == want);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto ma = majorana_pair_index(a, sp), mb = majorana_pair_index(b, sp);
            bool same = a == b;
            CHECK(ma.even_string.commutes(mb.odd_string) == false);
            CHECK(ma.even_string.commutes(mb.even_string) == same);
        }
}

TEST_CASE("hopping strings") {
    CanonicalOrdering line = d_dim_s_pattern(LatticeShape({3}), DimHierarchy::standard(1));
    auto [xx, yy] = hopping_string({0}, {1}, line);
    CHECK(xx == P("XXI"));
    CHECK(yy == P("YYI"));
    auto [x2, y2] = hopping_string({0}, {2}, line);
    CHECK(x2 == P("XZX"));
    CHECK(y2 == P("YZY"));
    CHECK_THROWS_AS(hopping_string({1}, {1}, line), ParameterError);
}
