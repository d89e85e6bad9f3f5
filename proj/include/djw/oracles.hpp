// SPDX-License-Identifier: MIT
// Dense matrices use little-endian basis: bit q of the basis index is qubit q.
// dense_unitary(c) is the time-ordered product U_m ... U_1 of the gates of c.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "djw/circuit.hpp"
#include "djw/lattice.hpp"
#include "djw/pauli.hpp"

namespace djw {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr int kDenseQubitCap = 12;

void apply_gate(CVector &state, const Gate &g);
CMatrix dense_unitary(const Circuit &c);         // OpenMP over columns
CMatrix dense_unitary_serial(const Circuit &c);  // same kernel, one thread
CMatrix dense_unitary_kron(const Circuit &c);    // embeds every gate as a full matrix; slow reference
CMatrix pauli_matrix(const PauliString &p);

// min over global phase of the operator-norm distance
double phase_insensitive_distance(const CMatrix &a, const CMatrix &b);
double operator_norm(const CMatrix &a);

enum class TermKind { Hopping, Number, DensityDensity };

struct FermionTerm {
    TermKind kind = TermKind::Hopping;
    int i = 0;  // site (qubit) index
    int j = 0;
    double coeff = 1.0;
};

CMatrix annihilation(int site_index, const CanonicalOrdering &m);
CMatrix exact_fermionic_term(const FermionTerm &t, const CanonicalOrdering &m);
// prod_k exp(-i theta_k H_k) applied in list order
CMatrix exact_trotter_product(const std::vector<FermionTerm> &terms, const CanonicalOrdering &m);
CMatrix exp_hermitian(const CMatrix &h, double theta);

// Many-body unitary W with W a_p^dagger W^dagger = sum_q u(q, p) a_q^dagger and W|vac> = |vac>.
// u is indexed by site (qubit) index.
CMatrix exact_orbital_rotation(const CMatrix &u, const CanonicalOrdering &m);

// perm[q] = final qubit of the mode that started on qubit q
std::vector<int> track_modes(const Circuit &c);

}  // namespace djw
