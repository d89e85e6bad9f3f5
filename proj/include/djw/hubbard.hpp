// SPDX-License-Identifier: MIT
// Second-order Trotter steps for spinful Hubbard models on a qubit grid.
// Spin species are interleaved along the qubit columns; two boustrophedon encodings alternate.
#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "djw/circuit.hpp"
#include "djw/lattice.hpp"
#include "djw/oracles.hpp"

namespace djw {

enum class Geometry { square_nn, square_nnn, lieb, kagome };

std::string geometry_name(Geometry g);
Geometry parse_geometry(const std::string &name);

struct HubbardSpec {
    Geometry geometry = Geometry::square_nn;
    int cells = 2;    // unit cells along x
    int cells_y = 0;  // unit cells along y, 0 means same as cells
    double t = 1.0;
    double tp = 0.5;  // square_nnn only
    double U = 4.0;
    double dt = 0.1;
    bool spinful = true;

    int nx() const { return cells; }
    int ny() const { return cells_y > 0 ? cells_y : cells; }
    void validate() const;
};

struct HubbardTerm {
    enum Kind { Hop, OnSite };
    Kind kind = Hop;
    int a = 0, b = 0;     // modes
    double coeff = 0.0;   // -t (or -t') for hops, U for on-site
    bool nnn = false;

    bool operator==(const HubbardTerm &o) const = default;
};

// Sites, modes and the edge list of a geometry, independent of any circuit.
struct LatticeModel {
    HubbardSpec spec;
    int subs = 1;                         // sites per unit cell
    int grid_rows = 0, grid_cols = 0;     // per-species site grid
    std::vector<std::array<int, 2>> pos;  // site -> (row, col) in the per-species grid
    std::vector<HubbardTerm> terms;
    int species = 2;

    int num_sites() const { return static_cast<int>(pos.size()); }
    int num_modes() const { return species * num_sites(); }
    int mode(int site, int spin) const { return species * site + spin; }
    LatticeShape qubit_shape() const { return LatticeShape({grid_rows, species * grid_cols}); }
};

LatticeModel lattice_model(const HubbardSpec &spec);

struct LedgerEntry {
    int term = 0;
    double angle = 0.0;  // exp(-i angle H_term)
    std::vector<int> gates;
    int half = 0;        // 0 first half, 1 second half, 2 merged boundary
};

struct TrotterCircuit {
    Circuit circuit;
    std::vector<HubbardTerm> terms;
    std::vector<LedgerEntry> ledger;
    std::array<BoustrophedonSpec, 2> encodings;
    CanonicalOrdering reference;  // JW ordering at the start and end of the step
    std::vector<int> layout;      // mode -> qubit at the start and end of the step
    std::vector<std::pair<std::string, std::pair<int, int>>> sections;  // name -> gate range

    // ledger terms as dense-oracle terms on the reference ordering, in ledger order
    std::vector<FermionTerm> product_formula() const;
    Circuit section(const std::string &name) const;
    nlohmann::json summary() const;
};

TrotterCircuit build_trotter_step(const HubbardSpec &spec);

// switch, on-site, hopping (all hops once), per square_nn defaults
std::map<std::string, ResourceReport> component_costs(const HubbardSpec &spec);

enum class FsnVariant { line, ladder };
TrotterCircuit fsn_baseline(const HubbardSpec &spec, FsnVariant variant);

// two-qubit depth per model; the lattice_surgery value is the switch depth only
std::map<std::string, int> depth_audit(const HubbardSpec &spec);

// Structural checks; each returns an empty string on success.
std::string check_ledger_complete(const TrotterCircuit &tc, const LatticeModel &model);
std::string check_mirror_symmetry(const TrotterCircuit &tc);

}  // namespace djw
