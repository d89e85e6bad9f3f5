// SPDX-License-Identifier: MIT
#include "djw/gate_matrix.hpp"

#include <cmath>

#include "djw/errors.hpp"

namespace djw {

namespace {

const cplx I1{0.0, 1.0};

Mat4 mul4(const Mat4 &a, const Mat4 &b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0;
            for (int k = 0; k < 4; ++k) s += a[i * 4 + k] * b[k * 4 + j];
            c[i * 4 + j] = s;
        }
    return c;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) c[(2 * i + k) * 4 + (2 * j + l)] = a[i * 2 + j] * b[k * 2 + l];
    return c;
}

Mat2 pauli(char p) {
    switch (p) {
        case 'X': return {0, 1, 1, 0};
        case 'Y': return {0, -I1, I1, 0};
        case 'Z': return {1, 0, 0, -1};
        default: return {1, 0, 0, 1};
    }
}

// exp(-i theta/2 G) for G with G^2 = I
Mat4 rot_involution(const Mat4 &G, double theta) {
    Mat4 r{};
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (int i = 0; i < 16; ++i) r[i] = -I1 * s * G[i];
    for (int i = 0; i < 4; ++i) r[i * 5] += c;
    return r;
}

}  // namespace

Mat2 matrix_1q(const Gate &g) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::S: return {1, 0, 0, I1};
        case GateKind::Sdg: return {1, 0, 0, -I1};
        case GateKind::X: return pauli('X');
        case GateKind::Y: return pauli('Y');
        case GateKind::Z: return pauli('Z');
        case GateKind::RZ: return {std::exp(-I1 * (g.angle / 2)), 0, 0, std::exp(I1 * (g.angle / 2))};
        case GateKind::RY: {
            double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            return {c, -s, s, c};
        }
        default: throw UnsupportedGateError("not a single-qubit gate: " + kind_name(g.kind));
    }
}

Mat4 matrix_2q(const Gate &g) {
    Mat4 m{};
    switch (g.kind) {
        case GateKind::CNOT:
            m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
            return m;
        case GateKind::CZ:
            m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
            return m;
        case GateKind::SWAP:
            m = {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
            return m;
        case GateKind::FSWAP:
            m = {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1};
            return m;
        case GateKind::CPhase:
            m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, std::exp(I1 * g.angle)};
            return m;
        case GateKind::PauliRot:
        case GateKind::FswapHop: {
            RotAxis ax = g.kind == GateKind::FswapHop ? RotAxis::XXpYY : g.axis;
            Mat4 G{};
            if (ax == RotAxis::XXpYY || ax == RotAxis::XYmYX) {
                // both generators have eigenvalues {0, 0, +2, -2}; restricted to the one-particle block they
                // act as 2 * (Pauli on that block)
                Mat4 A = ax == RotAxis::XXpYY ? kron(pauli('X'), pauli('X')) : kron(pauli('X'), pauli('Y'));
                Mat4 B = ax == RotAxis::XXpYY ? kron(pauli('Y'), pauli('Y')) : kron(pauli('Y'), pauli('X'));
                double sign = ax == RotAxis::XXpYY ? 1.0 : -1.0;
                for (int i = 0; i < 16; ++i) G[i] = 0.5 * (A[i] + sign * B[i]);
                // exp(-i theta (A +- B)/2) = exp(-i (2 theta) Gh / 2) with Gh = (A +- B)/2 involutive on the block
                Mat4 r{};
                double c = std::cos(g.angle), s = std::sin(g.angle);
                for (int i = 0; i < 16; ++i) r[i] = -I1 * s * G[i];
                // identity on the even-parity block, cos on the odd block
                r[0] += 1.0;
                r[15] += 1.0;
                r[5] += c;
                r[10] += c;
                m = r;
            } else {
                std::string n = axis_name(ax);
                m = rot_involution(kron(pauli(n[0]), pauli(n[1])), g.angle);
            }
            if (g.kind == GateKind::FswapHop) {
                Gate f = Gate::fswap(g.q0, g.q1);
                m = mul4(matrix_2q(f), m);
            }
            return m;
        }
        default: throw UnsupportedGateError("not a two-qubit gate: " + kind_name(g.kind));
    }
}

}  // namespace djw
