// SPDX-License-Identifier: MIT
#include "djw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "djw/errors.hpp"
#include "djw/gate_matrix.hpp"

namespace djw {

void apply_gate(CVector &s, const Gate &g) {
    const int64_t dim = s.size();
    if (!g.two_qubit()) {
        Mat2 m = matrix_1q(g);
        const int64_t bit = int64_t{1} << g.q0;
        for (int64_t x = 0; x < dim; ++x) {
            if (x & bit) continue;
            cplx a = s[x], b = s[x | bit];
            s[x] = m[0] * a + m[1] * b;
            s[x | bit] = m[2] * a + m[3] * b;
        }
        return;
    }
    Mat4 m = matrix_2q(g);
    const int64_t b0 = int64_t{1} << g.q0, b1 = int64_t{1} << g.q1;
    for (int64_t x = 0; x < dim; ++x) {
        if ((x & b0) || (x & b1)) continue;
        int64_t idx[4] = {x, x | b1, x | b0, x | b0 | b1};
        cplx v[4] = {s[idx[0]], s[idx[1]], s[idx[2]], s[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            cplx acc = 0;
            for (int k = 0; k < 4; ++k) acc += m[r * 4 + k] * v[k];
            s[idx[r]] = acc;
        }
    }
}

static void check_cap(const Circuit &c) {
    if (c.num_qubits() > kDenseQubitCap) throw SizeError("dense oracle is capped at 12 qubits");
}

CMatrix dense_unitary(const Circuit &c) {
    check_cap(c);
    const int64_t dim = int64_t{1} << c.num_qubits();
    CMatrix U(dim, dim);
#pragma omp parallel for schedule(static)
    for (int64_t col = 0; col < dim; ++col) {
        CVector v = CVector::Zero(dim);
        v[col] = 1.0;
        for (const auto &g : c.gates()) apply_gate(v, g);
        U.col(col) = v;
    }
    return U;
}

CMatrix dense_unitary_serial(const Circuit &c) {
    check_cap(c);
    const int64_t dim = int64_t{1} << c.num_qubits();
    CMatrix U(dim, dim);
    for (int64_t col = 0; col < dim; ++col) {
        CVector v = CVector::Zero(dim);
        v[col] = 1.0;
        for (const auto &g : c.gates()) apply_gate(v, g);
        U.col(col) = v;
    }
    return U;
}

CMatrix dense_unitary_kron(const Circuit &c) {
    check_cap(c);
    const int n = c.num_qubits();
    const int64_t dim = int64_t{1} << n;
    CMatrix U = CMatrix::Identity(dim, dim);
    for (const auto &g : c.gates()) {
        CMatrix G = CMatrix::Zero(dim, dim);
        if (!g.two_qubit()) {
            Mat2 m = matrix_1q(g);
            for (int64_t x = 0; x < dim; ++x)
                for (int64_t y = 0; y < dim; ++y) {
                    if ((x ^ y) & ~(int64_t{1} << g.q0)) continue;
                    int bx = (x >> g.q0) & 1, by = (y >> g.q0) & 1;
                    G(x, y) = m[bx * 2 + by];
                }
        } else {
            Mat4 m = matrix_2q(g);
            int64_t mask = (int64_t{1} << g.q0) | (int64_t{1} << g.q1);
            for (int64_t x = 0; x < dim; ++x)
                for (int64_t y = 0; y < dim; ++y) {
                    if ((x ^ y) & ~mask) continue;
                    int lx = 2 * ((x >> g.q0) & 1) + ((x >> g.q1) & 1);
                    int ly = 2 * ((y >> g.q0) & 1) + ((y >> g.q1) & 1);
                    G(x, y) = m[lx * 4 + ly];
                }
        }
        U = G * U;
    }
    return U;
}

CMatrix pauli_matrix(const PauliString &p) {
    const int n = p.size();
    if (n > kDenseQubitCap) throw SizeError("dense oracle is capped at 12 qubits");
    const int64_t dim = int64_t{1} << n;
    CMatrix M = CMatrix::Zero(dim, dim);
    int64_t xmask = 0;
    for (int q = 0; q < n; ++q)
        if (p.x().get(q)) xmask |= int64_t{1} << q;
    static const cplx ph[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int64_t x = 0; x < dim; ++x) {
        int k = p.phase();
        for (int q = 0; q < n; ++q) {
            char l = p.letter(q);
            int bit = (x >> q) & 1;
            if (l == 'Z' && bit) k += 2;
            if (l == 'Y') k += bit ? 3 : 1;
        }
        M(x ^ xmask, x) = ph[k % 4];
    }
    return M;
}

double operator_norm(const CMatrix &a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double phase_insensitive_distance(const CMatrix &a, const CMatrix &b) {
    cplx tr = (b.adjoint() * a).trace();
    cplx phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : cplx(1, 0);
    return operator_norm(a - phase * b);
}

CMatrix annihilation(int site_index, const CanonicalOrdering &m) {
    MajoranaPair mp = majorana_pair_index(site_index, m);
    return 0.5 * (pauli_matrix(mp.even_string) + cplx(0, 1) * pauli_matrix(mp.odd_string));
}

CMatrix exact_fermionic_term(const FermionTerm &t, const CanonicalOrdering &m) {
    if (m.size() > kDenseQubitCap) throw SizeError("dense oracle is capped at 12 qubits");
    CMatrix ai = annihilation(t.i, m);
    switch (t.kind) {
        case TermKind::Number: return t.coeff * (ai.adjoint() * ai);
        case TermKind::DensityDensity: {
            CMatrix aj = annihilation(t.j, m);
            return t.coeff * (ai.adjoint() * ai) * (aj.adjoint() * aj);
        }
        case TermKind::Hopping: {
            CMatrix aj = annihilation(t.j, m);
            CMatrix h = ai.adjoint() * aj;
            return t.coeff * (h + h.adjoint());
        }
    }
    return {};
}

CMatrix exp_hermitian(const CMatrix &h, double theta) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector ph = (es.eigenvalues().cast<cplx>() * cplx(0, -theta)).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix exact_trotter_product(const std::vector<FermionTerm> &terms, const CanonicalOrdering &m) {
    if (m.size() > kDenseQubitCap) throw SizeError("dense oracle is capped at 12 qubits");
    const int64_t dim = int64_t{1} << m.size();
    CMatrix U = CMatrix::Identity(dim, dim);
    for (auto t : terms) {
        double theta = t.coeff;
        t.coeff = 1.0;
        CMatrix h = exact_fermionic_term(t, m);
        CMatrix e;
        if (t.kind == TermKind::Hopping) {
            // spectrum in {0, +1, -1}
            CMatrix h2 = h * h;
            e = CMatrix::Identity(dim, dim) + (std::cos(theta) - 1.0) * h2 - cplx(0, std::sin(theta)) * h;
        } else {
            // projector
            e = CMatrix::Identity(dim, dim) + (std::exp(cplx(0, -theta)) - 1.0) * h;
        }
        U = e * U;
    }
    return U;
}

CMatrix exact_orbital_rotation(const CMatrix &u, const CanonicalOrdering &m) {
    const int n = m.size();
    if (n > kDenseQubitCap) throw SizeError("dense oracle is capped at 12 qubits");
    if (u.rows() != n || u.cols() != n) throw ShapeError("orbital matrix does not match the ordering");
    const int64_t dim = int64_t{1} << n;
    std::vector<CMatrix> create(n);
    for (int q = 0; q < n; ++q) create[q] = annihilation(q, m).adjoint();
    std::vector<CMatrix> b(n);
    for (int p = 0; p < n; ++p) {
        b[p] = CMatrix::Zero(dim, dim);
        for (int q = 0; q < n; ++q)
            if (u(q, p) != cplx(0, 0)) b[p] += u(q, p) * create[q];
    }
    CMatrix w(dim, dim);
    for (int64_t x = 0; x < dim; ++x) {
        std::vector<int> occ;
        for (int q = 0; q < n; ++q)
            if ((x >> q) & 1) occ.push_back(q);
        // |x> = a_{p1}^dagger ... a_{pk}^dagger |vac> with ranks increasing left to right
        std::sort(occ.begin(), occ.end(), [&](int a, int c) { return m.rank(a) > m.rank(c); });
        CVector v = CVector::Zero(dim);
        v(0) = 1.0;
        for (int p : occ) v = b[p] * v;
        w.col(x) = v;
    }
    return w;
}

std::vector<int> track_modes(const Circuit &c) {
    // where[q] = mode currently on qubit q
    std::vector<int> where(c.num_qubits());
    std::iota(where.begin(), where.end(), 0);
    for (const auto &g : c.gates()) {
        switch (g.kind) {
            case GateKind::FSWAP:
            case GateKind::FswapHop:
            case GateKind::SWAP: std::swap(where[g.q0], where[g.q1]); break;
            case GateKind::CNOT:
                if (g.ladder < 0) throw AnnotationError("untagged CNOT: cannot tell whether it moves modes");
                break;
            default: break;
        }
    }
    std::vector<int> perm(c.num_qubits());
    for (int q = 0; q < c.num_qubits(); ++q) perm[where[q]] = q;
    return perm;
}

}  // namespace djw
