// SPDX-License-Identifier: MIT
// Fermionic Fourier transforms from Givens-rotation networks.
// A network for u maps a_p^dagger to sum_q u(q, p) a_q^dagger under W a^dagger W^dagger.
#pragma once

#include <string>
#include <vector>

#include "djw/circuit.hpp"
#include "djw/lattice.hpp"
#include "djw/oracles.hpp"

namespace djw {

struct OrbitalRotation {
    CMatrix unitary;         // n x n, indexed by position in modes
    std::vector<int> modes;  // qubits

    void validate(double tol = 1e-12) const;
};

struct GivensOptions {
    bool keep_identities = true;  // emit zero-angle rotations so the count is always n(n-1)/2
};

// Two-mode Givens gates act on rank-adjacent qubits; modes must be rank-contiguous in increasing rank order.
Circuit givens_network(const OrbitalRotation &rot, const CanonicalOrdering &ord, const GivensOptions &opt = {});

// u(q, p) = exp(-2 pi i q p / n) / sqrt(n)
CMatrix dft_matrix(int n);

struct FfftSegment {
    enum Kind { givens, encoding_switch } kind = givens;
    Circuit circuit;
    CanonicalOrdering before, after;
};

struct FfftCircuit {
    LatticeShape qubits;  // rows = Ly, cols = species * Lx
    bool spinful = false;
    Circuit circuit;
    std::vector<FfftSegment> segments;
    CanonicalOrdering ordering;  // at start and end
    CMatrix expected;            // single-particle matrix, indexed by qubit

    int givens_count() const;
};

// qubit column of per-species column x and spin s
inline int ffft_column(int x, int s, bool spinful) { return spinful ? 2 * x + s : x; }

CMatrix fermionic_dft_2d(int Lx, int Ly, bool spinful);

FfftCircuit ffft_2d(int Lx, int Ly, bool spinful);
FfftCircuit givens_full_baseline(int Lx, int Ly, bool spinful);

// Single-particle action of the circuit, propagated gate by gate. Switch segments must carry every
// source Majorana onto the target Majorana exactly; otherwise SynthesisError is thrown.
CMatrix single_particle_matrix(const FfftCircuit &f);

}  // namespace djw
