// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "djw/errors.hpp"
#include "djw/oracles.hpp"

using namespace djw;

namespace {

using cplx = std::complex<double>;

double err(const CMatrix &a, const CMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

CMatrix id(int n) { return CMatrix::Identity(int64_t{1} << n, int64_t{1} << n); }

CanonicalOrdering line(int n) { return d_dim_s_pattern(LatticeShape({n}), DimHierarchy::standard(1)); }

}  // namespace

TEST_CASE("dense unitaries") {
    CHECK(err(dense_unitary(Circuit(3)), id(3)) == 0.0);
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    CMatrix u = dense_unitary(c);
    CMatrix want = CMatrix::Zero(4, 4);
    want(0, 0) = want(2, 2) = 1;
    want(3, 1) = want(1, 3) = 1;
    CHECK(err(u, want) == 0.0);

    // time order: X first, then H
    Circuit xh(1);
    xh.add(Gate::one(GateKind::X, 0));
    xh.add(Gate::one(GateKind::H, 0));
    Circuit h(1), x(1);
    h.add(Gate::one(GateKind::H, 0));
    x.add(Gate::one(GateKind::X, 0));
    CHECK(err(dense_unitary(xh), dense_unitary(h) * dense_unitary(x)) < 1e-14);

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ang(-3, 3);
    for (int k = 0; k < 10; ++k) {
        Circuit r(4);
        for (int g = 0; g < 20; ++g) {
            int a = rng() % 4, b = (a + 1 + rng() % 3) % 4;
            switch (rng() % 6) {
                case 0: r.add(Gate::cnot(a, b)); break;
                case 1: r.add(Gate::fswap(a, b)); break;
                case 2: r.add(Gate::rot(RotAxis::XXpYY, a, b, ang(rng))); break;
                case 3: r.add(Gate::cphase(a, b, ang(rng))); break;
                case 4: r.add(Gate::fswap_hop(a, b, ang(rng))); break;
                default: r.add(Gate::one(GateKind::RZ, a, ang(rng))); break;
            }
        }
        CMatrix a = dense_unitary(r);
        CHECK(err(a, dense_unitary_serial(r)) < 1e-12);
        CHECK(err(a, dense_unitary_kron(r)) < 1e-12);
        CHECK(err(a.adjoint() * a, id(4)) < 1e-12);
        CHECK(phase_insensitive_distance(a, std::polar(1.0, 0.7) * a) < 1e-12);
    }
}

TEST_CASE("fermionic operators") {
    auto m = s_pattern(LatticeShape({2, 2}));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CMatrix ai = annihilation(i, m), aj = annihilation(j, m);
            CHECK((ai * aj + aj * ai).norm() < 1e-12);
            CMatrix acomm = ai * aj.adjoint() + aj.adjoint() * ai;
            CHECK(err(acomm, i == j ? id(4) : CMatrix::Zero(16, 16)) < 1e-12);
        }
    CMatrix n1 = exact_fermionic_term({TermKind::Number, 1, 1, 1.0}, m);
    CHECK(err(n1 * n1, n1) < 1e-12);
    CHECK(std::abs(n1.trace() - cplx(8, 0)) < 1e-12);

    auto l = line(2);
    CMatrix hop = exact_fermionic_term({TermKind::Hopping, 0, 1, 1.0}, l);
    PauliString xx = PauliString::parse("XX"), yy = PauliString::parse("YY");
    CHECK(err(hop, 0.5 * (pauli_matrix(xx) + pauli_matrix(yy))) < 1e-12);
    CMatrix dd = exact_fermionic_term({TermKind::DensityDensity, 0, 1, 2.0}, l);
    CMatrix n0 = exact_fermionic_term({TermKind::Number, 0, 0, 1.0}, l);
    CMatrix n1l = exact_fermionic_term({TermKind::Number, 1, 1, 1.0}, l);
    CHECK(err(dd, 2.0 * n0 * n1l) < 1e-12);
}

TEST_CASE("trotter products") {
    auto m = line(3);
    std::vector<FermionTerm> zero = {{TermKind::Hopping, 0, 1, 0.0}, {TermKind::Number, 2, 2, 0.0}};
    CHECK(err(exact_trotter_product(zero, m), id(3)) < 1e-14);
    std::vector<FermionTerm> terms = {{TermKind::Hopping, 0, 2, 0.3},
                                      {TermKind::Number, 1, 1, -0.8},
                                      {TermKind::DensityDensity, 0, 1, 1.1}};
    CMatrix want = id(3);
    for (auto t : terms) {
        double th = t.coeff;
        t.coeff = 1.0;
        want = exp_hermitian(exact_fermionic_term(t, m), th) * want;
    }
    CHECK(err(exact_trotter_product(terms, m), want) < 1e-12);
    CHECK(err(exp_hermitian(pauli_matrix(PauliString::parse("ZI")), 0.0), id(2)) < 1e-14);
    CHECK_THROWS_AS(exact_fermionic_term({TermKind::Number, 0, 0, 1.0}, line(13)), SizeError);
}

TEST_CASE("orbital rotations") {
    auto m = line(3);
    CHECK(err(exact_orbital_rotation(CMatrix::Identity(3, 3), m), id(3)) < 1e-12);
    // random unitary from a QR factorisation
    std::mt19937 rng(6);
    std::normal_distribution<double> g;
    CMatrix z(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z(i, j) = cplx(g(rng), g(rng));
    CMatrix u = Eigen::HouseholderQR<CMatrix>(z).householderQ();
    CMatrix w = exact_orbital_rotation(u, m);
    CHECK(err(w.adjoint() * w, id(3)) < 1e-12);
    for (int p = 0; p < 3; ++p) {
        CMatrix lhs = w * annihilation(p, m).adjoint() * w.adjoint();
        CMatrix rhs = CMatrix::Zero(8, 8);
        for (int q = 0; q < 3; ++q) rhs += u(q, p) * annihilation(q, m).adjoint();
        CHECK(err(lhs, rhs) < 1e-12);
    }
    CHECK_THROWS_AS(exact_orbital_rotation(CMatrix::Identity(2, 2), m), ShapeError);
}

TEST_CASE("mode tracking") {
    Circuit c(3);
    c.add(Gate::fswap(0, 1));
    c.add(Gate::swap(1, 2));
    c.add(Gate::cnot(0, 2, 0));
    auto perm = track_modes(c);
    CHECK(perm == std::vector<int>{2, 0, 1});
    Circuit bad(2);
    bad.add(Gate::cnot(0, 1));
    CHECK_THROWS_AS(track_modes(bad), AnnotationError);
}
