// SPDX-License-Identifier: MIT
#include "djw/ffft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "djw/errors.hpp"
#include "djw/gate_matrix.hpp"
#include "djw/pauli.hpp"
#include "djw/switch.hpp"

namespace djw {

void OrbitalRotation::validate(double tol) const {
    const auto n = static_cast<Eigen::Index>(modes.size());
    if (unitary.rows() != n || unitary.cols() != n) throw ShapeError("orbital matrix does not match the mode list");
    if ((unitary.adjoint() * unitary - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
        throw ParameterError("orbital matrix is not unitary");
}

CMatrix dft_matrix(int n) {
    CMatrix f(n, n);
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p)
            f(q, p) = std::polar(1.0 / std::sqrt(double(n)), -2.0 * std::numbers::pi * q * p / n);
    return f;
}

Circuit givens_network(const OrbitalRotation &rot, const CanonicalOrdering &ord, const GivensOptions &opt) {
    rot.validate(1e-10);
    const int n = static_cast<int>(rot.modes.size());
    for (int k = 0; k + 1 < n; ++k)
        if (ord.rank(rot.modes[k + 1]) != ord.rank(rot.modes[k]) + 1)
            throw OrderingError("Givens network modes are not rank-contiguous");
    Circuit c(ord.size());
    if (n == 0) return c;
    struct Op {
        int i, j, time;
    };
    std::vector<Op> ops;
    for (int i = n - 1; i >= 1; --i)
        for (int j = 0; j < i; ++j) ops.push_back({i, j, j + 2 * (n - 1 - i)});
    std::stable_sort(ops.begin(), ops.end(), [](const Op &a, const Op &b) { return a.time < b.time; });

    CMatrix u = rot.unitary;
    const double eps = 1e-14;
    for (const Op &op : ops) {
        cplx a = u(op.i, op.j), b = u(op.i, op.j + 1);
        double theta = 0.0;
        cplx ph = 1.0;
        if (std::abs(a) > eps) {
            if (std::abs(b) > eps) {
                theta = std::atan2(std::abs(a), std::abs(b));
                ph = -(b / std::abs(b)) * std::conj(a / std::abs(a));
            } else {
                theta = std::numbers::pi / 2;
            }
        }
        const double cs = std::cos(theta), sn = std::sin(theta);
        // G = diag(ph, 1) R(theta) applied to columns j, j+1
        const cplx g00 = ph * cs, g01 = -ph * sn, g10 = sn, g11 = cs;
        CVector cj = u.col(op.j), ck = u.col(op.j + 1);
        u.col(op.j) = cj * g00 + ck * g10;
        u.col(op.j + 1) = cj * g01 + ck * g11;
        // the circuit applies G^dagger = R(-theta) diag(conj(ph), 1)
        const double gamma = std::arg(ph);
        if (opt.keep_identities || std::abs(gamma) > eps) c.add(Gate::one(GateKind::RZ, rot.modes[op.j], -gamma));
        if (opt.keep_identities || std::abs(theta) > eps)
            c.add(Gate::rot(RotAxis::XYmYX, rot.modes[op.j], rot.modes[op.j + 1], -theta));
    }
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
            if (r != k && std::abs(u(r, k)) > 1e-9) throw SynthesisError("Givens elimination left off-diagonal weight");
    for (int k = 0; k < n; ++k) {
        double phi = std::arg(u(k, k));
        if (opt.keep_identities || std::abs(phi) > eps) c.add(Gate::one(GateKind::RZ, rot.modes[k], phi));
    }
    return c;
}

int FfftCircuit::givens_count() const {
    int k = 0;
    for (auto &g : circuit.gates()) k += g.kind == GateKind::PauliRot && g.axis == RotAxis::XYmYX;
    return k;
}

CMatrix fermionic_dft_2d(int Lx, int Ly, bool spinful) {
    const int S = spinful ? 2 : 1, C = S * Lx, n = Ly * C;
    CMatrix fx = dft_matrix(Lx), fy = dft_matrix(Ly);
    CMatrix u = CMatrix::Zero(n, n);
    for (int y = 0; y < Ly; ++y)
        for (int x = 0; x < Lx; ++x)
            for (int s = 0; s < S; ++s)
                for (int y2 = 0; y2 < Ly; ++y2)
                    for (int x2 = 0; x2 < Lx; ++x2)
                        u(y2 * C + ffft_column(x2, s, spinful), y * C + ffft_column(x, s, spinful)) = fx(x2, x) * fy(y2, y);
    return u;
}

namespace {

void check_dims(int Lx, int Ly) {
    if (Lx < 1 || Ly < 1) throw ShapeError("FFFT needs a non-empty lattice");
}

SwitchPlan audited(SwitchPlan p) {
    sign_audit(p);
    return p;
}

std::vector<int> line_by_rank(std::vector<int> qs, const CanonicalOrdering &ord) {
    std::sort(qs.begin(), qs.end(), [&](int a, int b) { return ord.rank(a) < ord.rank(b); });
    return qs;
}

// orbital matrix of the target restricted to a line of qubits
OrbitalRotation restrict(const CMatrix &u, const std::vector<int> &line) {
    OrbitalRotation r;
    r.modes = line;
    const int n = static_cast<int>(line.size());
    r.unitary = CMatrix(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r.unitary(a, b) = u(line[a], line[b]);
    return r;
}

void add_segment(FfftCircuit &f, FfftSegment seg) {
    f.circuit.append(seg.circuit);
    f.segments.push_back(std::move(seg));
}

}  // namespace

FfftCircuit ffft_2d(int Lx, int Ly, bool spinful) {
    check_dims(Lx, Ly);
    const int S = spinful ? 2 : 1, C = S * Lx;
    FfftCircuit f;
    f.qubits = LatticeShape({Ly, C});
    f.spinful = spinful;
    f.expected = fermionic_dft_2d(Lx, Ly, spinful);
    const int n = f.qubits.size();
    BoustrophedonSpec s_spec = BoustrophedonSpec::from_widths({C});
    BoustrophedonSpec z_spec = BoustrophedonSpec::from_widths(std::vector<int>(C, 1));
    CanonicalOrdering s_ord = boustrophedon_ordering(s_spec, f.qubits), z_ord = boustrophedon_ordering(z_spec, f.qubits);
    f.ordering = s_ord;
    f.circuit = Circuit(n, f.qubits);

    CMatrix ux = fermionic_dft_2d(Lx, 1, spinful), uy = dft_matrix(Ly);
    // x transforms: every row holds both species, the matrix is block diagonal per spin
    FfftSegment rows{FfftSegment::givens, Circuit(n, f.qubits), s_ord, s_ord};
    for (int y = 0; y < Ly; ++y) {
        std::vector<int> qs;
        for (int c = 0; c < C; ++c) qs.push_back(y * C + c);
        auto line = line_by_rank(qs, s_ord);
        OrbitalRotation r;
        r.modes = line;
        r.unitary = CMatrix(C, C);
        for (int a = 0; a < C; ++a)
            for (int b = 0; b < C; ++b) r.unitary(a, b) = ux(line[a] % C, line[b] % C);
        rows.circuit.append(givens_network(r, s_ord));
    }
    add_segment(f, rows);
    if (Ly > 1) {
        Circuit sw = audited(boustrophedon_switch(s_spec, z_spec, f.qubits)).compensated_circuit();
        add_segment(f, {FfftSegment::encoding_switch, sw, s_ord, z_ord});
        FfftSegment cols{FfftSegment::givens, Circuit(n, f.qubits), z_ord, z_ord};
        for (int c = 0; c < C; ++c) {
            std::vector<int> qs;
            for (int y = 0; y < Ly; ++y) qs.push_back(y * C + c);
            auto line = line_by_rank(qs, z_ord);
            OrbitalRotation r;
            r.modes = line;
            r.unitary = CMatrix(Ly, Ly);
            for (int a = 0; a < Ly; ++a)
                for (int b = 0; b < Ly; ++b) r.unitary(a, b) = uy(line[a] / C, line[b] / C);
            cols.circuit.append(givens_network(r, z_ord));
        }
        add_segment(f, cols);
        Circuit back = audited(boustrophedon_switch(z_spec, s_spec, f.qubits)).compensated_circuit();
        add_segment(f, {FfftSegment::encoding_switch, back, z_ord, s_ord});
    }
    return f;
}

FfftCircuit givens_full_baseline(int Lx, int Ly, bool spinful) {
    check_dims(Lx, Ly);
    const int C = (spinful ? 2 : 1) * Lx;
    FfftCircuit f;
    f.qubits = LatticeShape({Ly, C});
    f.spinful = spinful;
    f.expected = fermionic_dft_2d(Lx, Ly, spinful);
    f.ordering = s_pattern(f.qubits);
    const int n = f.qubits.size();
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;
    auto line = line_by_rank(all, f.ordering);
    FfftSegment seg{FfftSegment::givens, givens_network(restrict(f.expected, line), f.ordering), f.ordering,
                    f.ordering};
    seg.circuit.bind_shape(f.qubits);
    f.circuit = Circuit(n, f.qubits);
    add_segment(f, seg);
    return f;
}

CMatrix single_particle_matrix(const FfftCircuit &f) {
    const int n = f.qubits.size();
    CMatrix m = CMatrix::Identity(n, n);
    for (const auto &seg : f.segments) {
        if (seg.kind == FfftSegment::encoding_switch) {
            for (int q = 0; q < n; ++q) {
                MajoranaPair src = majorana_pair_index(q, seg.before), dst = majorana_pair_index(q, seg.after);
                if (!(conjugate(dst.even_string, seg.circuit) == src.even_string) ||
                    !(conjugate(dst.odd_string, seg.circuit) == src.odd_string))
                    throw SynthesisError("encoding switch does not carry Majoranas exactly");
            }
            continue;
        }
        for (const Gate &g : seg.circuit.gates()) {
            if (g.q1 < 0) {
                Mat2 a = matrix_1q(g);
                if (std::abs(a[1]) > 1e-14 || std::abs(a[2]) > 1e-14)
                    throw NotDiagonalError("single-qubit gate inside a Givens network is not diagonal");
                m.row(g.q0) *= a[3] / a[0];
                continue;
            }
            if (std::abs(seg.before.rank(g.q0) - seg.before.rank(g.q1)) != 1)
                throw ConnectivityError("two-mode gate on non rank-adjacent modes");
            Mat4 b = matrix_2q(g);
            auto at = [&](int r, int c) { return b[4 * r + c]; };
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    bool block = (r == 1 || r == 2) && (c == 1 || c == 2);
                    if (!block && r != c && std::abs(at(r, c)) > 1e-14)
                        throw SynthesisError("two-mode gate does not conserve particle number");
                }
            const cplx v = at(0, 0);
            // local index 2 is q0 occupied, 1 is q1 occupied
            CMatrix blk(2, 2);
            blk << at(2, 2) / v, at(2, 1) / v, at(1, 2) / v, at(1, 1) / v;
            CMatrix rows(2, m.cols());
            rows.row(0) = m.row(g.q0);
            rows.row(1) = m.row(g.q1);
            rows = blk * rows;
            m.row(g.q0) = rows.row(0);
            m.row(g.q1) = rows.row(1);
        }
    }
    return m;
}

}  // namespace djw
