// SPDX-License-Identifier: MIT
// Encoding switches between canonical orderings.
// Every stage is V^dagger D V with V a set of tagged CNOT ladders and D a CZ layer.
#pragma once

#include <map>
#include <vector>

#include <json.hpp>

#include "djw/circuit.hpp"
#include "djw/lattice.hpp"
#include "djw/pauli.hpp"

namespace djw {

struct SwitchPlan {
    CanonicalOrdering source;
    CanonicalOrdering target;
    Circuit circuit;                  // without z_correction
    std::vector<int> z_correction;    // qubits receiving a trailing Z
    std::map<int, int> sign_audit;    // Majorana 2*site (+1 for the Y-headed one) -> +1 / -1
    Circuit compensation;             // Pauli layer applied before the circuit

    Circuit full_circuit() const;     // circuit followed by z_correction
    Circuit compensated_circuit() const;
    nlohmann::json manifest() const;
};

// Axis-aligned sub-box carrying m_S^sigma in local coordinates, with optional per-axis reflection.
struct HBox {
    std::vector<int> origin;
    std::vector<int> len;
    std::vector<int> flip;   // 0/1 per axis
    std::vector<int> sigma;  // hierarchy over axes, lowest first

    int size() const;
    int rank(const std::vector<int> &local) const;  // rank within the box
    std::vector<int> qubits(const LatticeShape &shape) const;  // ordered by local row-major index
};

// Finds sigma and reflections such that the restriction of m to the box equals m_S^sigma.
bool detect_hbox(const CanonicalOrdering &m, HBox &box);

Circuit build_intersection_basis(const LatticeShape &shape);
SwitchPlan build_c2d(const LatticeShape &shape);
Circuit build_c1d(const LatticeShape &shape);
SwitchPlan build_c2d_prime(const LatticeShape &shape);
SwitchPlan boustrophedon_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst, const LatticeShape &shape);

// Ladders along hierarchy levels 0..j-1, accumulating parity at the far face.
Circuit compressed_basis_ladders(const LatticeShape &shape, int j, const DimHierarchy &h);
Circuit compressed_basis_ladders(const LatticeShape &shape, int j);

// Swaps hierarchy levels k and k+1 (zero-based, 0 <= k <= d-2).
SwitchPlan hierarchy_transposition(const LatticeShape &shape, const DimHierarchy &h, int k);
SwitchPlan d_dim_boustrophedon_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst,
                                      const LatticeShape &shape);

// Boustrophedon switch that also exchanges the qubit columns (c, c+1) for every c in swap_left.
// The swaps sit at the Z-pattern midpoint. No sign compensation is included.
Circuit column_swap_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst, const LatticeShape &shape,
                           const std::vector<int> &swap_left);

// Pauli layer E such that conjugating from[k] through E followed by c gives to[k] exactly.
// to must be a complete Majorana set; throws SynthesisError if some image is not +-to[k].
Circuit majorana_compensation(const Circuit &c, const std::vector<PauliString> &from, const std::vector<PauliString> &to,
                              std::vector<int> *flipped = nullptr);

// Fills plan.sign_audit and plan.compensation; throws SynthesisError if a Majorana is not mapped to +-target.
std::map<int, int> sign_audit(SwitchPlan &plan);

PhasePolynomial plan_phase_polynomial(const SwitchPlan &plan);
bool verify_f2(const SwitchPlan &plan);
bool verify_pauli(const SwitchPlan &plan);
bool verify_dense(const SwitchPlan &plan, double tol = 1e-10);

// Removes adjacent self-inverse pairs, commuting diagonal gates past each other.
int cancel_adjacent_inverses(Circuit &c);

}  // namespace djw
