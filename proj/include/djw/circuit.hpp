// SPDX-License-Identifier: MIT
// Qubit q of a circuit bound to a LatticeShape is the site with row-major index q.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "djw/lattice.hpp"

namespace djw {

enum class GateKind {
    CNOT,
    CZ,
    SWAP,
    FSWAP,
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    RZ,
    RY,
    PauliRot,
    FswapHop,
    CPhase,
};

// Generator G of PauliRot: exp(-i theta G / 2).
enum class RotAxis { XX, YY, ZZ, XY, YX, XXpYY, XYmYX };

struct Gate {
    GateKind kind = GateKind::CNOT;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;
    RotAxis axis = RotAxis::XX;
    int ladder = -1;  // id of the tagged CNOT ladder this gate belongs to

    bool two_qubit() const;
    bool operator==(const Gate &o) const;

    static Gate cnot(int c, int t, int ladder = -1) { return {GateKind::CNOT, c, t, 0.0, RotAxis::XX, ladder}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, a, b}; }
    static Gate fswap(int a, int b) { return {GateKind::FSWAP, a, b}; }
    static Gate one(GateKind k, int q, double angle = 0.0) {
        return {k, q, -1, (k == GateKind::RZ || k == GateKind::RY) ? angle : 0.0};
    }
    static Gate rot(RotAxis ax, int a, int b, double theta) { return {GateKind::PauliRot, a, b, theta, ax}; }
    static Gate fswap_hop(int a, int b, double theta) { return {GateKind::FswapHop, a, b, theta}; }
    static Gate cphase(int a, int b, double theta) { return {GateKind::CPhase, a, b, theta}; }
};

bool is_two_qubit(GateKind k);
bool is_clifford(const Gate &g);
std::string kind_name(GateKind k);
std::string axis_name(RotAxis a);
Gate inverse_gate(const Gate &g);

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n) : n_(n) {}
    Circuit(int n, LatticeShape shape) : n_(n), shape_(std::move(shape)) {}

    int num_qubits() const { return n_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::vector<Gate> &gates() { return gates_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const std::optional<LatticeShape> &shape() const { return shape_; }
    void bind_shape(const LatticeShape &s) { shape_ = s; }

    void add(const Gate &g);
    void append(const Circuit &other);
    int new_ladder_id() { return next_ladder_++; }
    Circuit inverse() const;

    bool operator==(const Circuit &o) const { return n_ == o.n_ && gates_ == o.gates_; }

    std::string to_text() const;
    static Circuit from_text(const std::string &text);

  private:
    int n_ = 0;
    std::optional<LatticeShape> shape_;
    std::vector<Gate> gates_;
    int next_ladder_ = 0;
};

enum class DepthModel { nn_lattice, all_to_all, lattice_surgery };
std::string model_name(DepthModel m);
DepthModel parse_depth_model(const std::string &s);

struct DepthOptions {
    bool two_qubit_only = false;
    bool skip_connectivity_check = false;
};

struct Violation {
    size_t gate_index;
    int q0, q1;
};

std::vector<Violation> validate_connectivity(const Circuit &c);

struct DecomposeOptions {
    bool cz_to_cnot = false;
};
Circuit decompose_to_cnot_basis(const Circuit &c, const DecomposeOptions &opt = {});

int depth(const Circuit &c, DepthModel model, const DepthOptions &opt = {});

struct ResourceReport {
    int64_t cnot_count = 0;
    int64_t two_qubit_count = 0;
    int64_t gate_count = 0;
    std::map<std::string, int64_t> counts;
    std::map<std::string, int> depth;
    int two_qubit_depth = 0;
    nlohmann::json to_json() const;
};

ResourceReport resource_report(const Circuit &c);

}  // namespace djw
