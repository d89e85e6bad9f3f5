// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "djw/errors.hpp"
#include "djw/hubbard.hpp"

using namespace djw;

namespace {

HubbardSpec make(Geometry g, int cx, int cy, bool spinful) {
    HubbardSpec s;
    s.geometry = g;
    s.cells = cx;
    s.cells_y = cy;
    s.spinful = spinful;
    s.t = 1.0;
    s.tp = 0.37;
    s.U = 2.3;
    s.dt = 0.41;
    return s;
}

void check_dense(const HubbardSpec &spec, const TrotterCircuit &tc) {
    CMatrix u = dense_unitary(tc.circuit);
    CMatrix ref = exact_trotter_product(tc.product_formula(), tc.reference);
    CHECK(phase_insensitive_distance(u, ref) < 1e-9);
    CHECK(check_ledger_complete(tc, lattice_model(spec)) == "");
    CHECK(check_mirror_symmetry(tc) == "");
    CHECK(validate_connectivity(tc.circuit).empty());
}

}  // namespace

TEST_CASE("trotter step equals its product formula") {
    struct Case {
        Geometry g;
        int cx, cy;
        bool spinful;
    };
    for (Case c : {Case{Geometry::square_nn, 2, 2, true}, Case{Geometry::square_nn, 3, 2, false},
                   Case{Geometry::square_nn, 3, 3, false},
                   Case{Geometry::square_nn, 3, 1, true}, Case{Geometry::square_nnn, 2, 2, true},
                   Case{Geometry::square_nnn, 3, 3, false},
                   Case{Geometry::lieb, 1, 1, true}, Case{Geometry::lieb, 2, 1, false},
                   Case{Geometry::lieb, 1, 3, false},
                   Case{Geometry::kagome, 1, 1, true}, Case{Geometry::kagome, 2, 1, false},
                   Case{Geometry::kagome, 1, 3, false}}) {
        CAPTURE(geometry_name(c.g));
        CAPTURE(c.cx);
        CAPTURE(c.cy);
        CAPTURE(c.spinful);
        HubbardSpec spec = make(c.g, c.cx, c.cy, c.spinful);
        check_dense(spec, build_trotter_step(spec));
    }
}

TEST_CASE("fsn baselines equal their product formula") {
    for (auto v : {FsnVariant::line, FsnVariant::ladder}) {
        HubbardSpec spec = make(Geometry::square_nn, 2, 2, true);
        check_dense(spec, fsn_baseline(spec, v));
        HubbardSpec s2 = make(Geometry::square_nn, 3, 2, true);
        TrotterCircuit tc = fsn_baseline(s2, v);
        CHECK(check_ledger_complete(tc, lattice_model(s2)) == "");
    }
}

TEST_CASE("large steps keep the ledger and symmetry") {
    for (Geometry g : {Geometry::square_nn, Geometry::square_nnn, Geometry::lieb, Geometry::kagome})
        for (int L : {4, 5}) {
            CAPTURE(geometry_name(g));
            CAPTURE(L);
            HubbardSpec spec = make(g, L, 0, true);
            TrotterCircuit tc = build_trotter_step(spec);
            CHECK(check_ledger_complete(tc, lattice_model(spec)) == "");
            CHECK(check_mirror_symmetry(tc) == "");
            CHECK(validate_connectivity(tc.circuit).empty());
        }
}

TEST_CASE("leading CNOT densities") {
    // cnot_count / N at the largest swept sizes
    struct Row {
        Geometry g;
        int L;
        double lo, hi;
    };
    for (Row r : {Row{Geometry::square_nn, 10, 18.9, 23.1}, Row{Geometry::square_nnn, 10, 27.0, 33.0},
                  Row{Geometry::lieb, 5, 17.7, 21.64}, Row{Geometry::kagome, 5, 21.6, 26.4}}) {
        CAPTURE(geometry_name(r.g));
        HubbardSpec spec = make(r.g, r.L, 0, true);
        TrotterCircuit tc = build_trotter_step(spec);
        double per = double(resource_report(tc.circuit).cnot_count) / tc.circuit.num_qubits();
        CHECK(per > r.lo);
        CHECK(per < r.hi);
    }
}
