// SPDX-License-Identifier: MIT
// Fermionic permutation routing with FSWAP sorts between encoding switches.
#pragma once

#include <string>
#include <vector>

#include "djw/circuit.hpp"
#include "djw/lattice.hpp"

namespace djw {

struct RoutingProblem {
    LatticeShape shape;
    std::vector<int> perm;  // perm[site] = destination site of the mode starting there

    void validate() const;
};

enum class StageKind { row_perm, col_perm, axis_perm, sweep, switch_encoding };
std::string stage_name(StageKind k);

struct RoutingStage {
    StageKind kind = StageKind::row_perm;
    int axis = -1;                // axis moved by a sort stage
    CanonicalOrdering ordering;   // active ordering (target ordering for switches)
    Circuit circuit;
    int rounds = 0;               // FSWAP layers, sort stages only
};

struct RoutingSchedule {
    std::vector<RoutingStage> stages;
    Circuit total;

    int fswap_rounds() const;
    int fswap_count() const;
};

// Odd-even transposition sort of the modes on line[0..n) by key.
// Starts with the pair parity that needs fewer rounds; rounds receives the layer count.
Circuit odd_even_fswap_sort(const std::vector<int> &keys, const std::vector<int> &line, int num_qubits,
                            int *rounds = nullptr);

// Generic form: rows are groups, cols the intermediate labels. dst_row[i] is the destination group of item i,
// src_row[i] its group and src_col[i] its current label. Returns a label per item.
std::vector<int> group_assignment(const std::vector<int> &src_row, const std::vector<int> &src_col,
                                  const std::vector<int> &dst_row, int groups, int labels);

// site -> intermediate column
std::vector<int> intermediate_assignment(const RoutingProblem &p);

RoutingSchedule route_2d(const RoutingProblem &p);
RoutingSchedule route_dd(const RoutingProblem &p);
RoutingSchedule fsn_baseline_route(const RoutingProblem &p);

// Checks the schedule against the permutation by mode tracking and the 2-locality of every sort stage.
std::string check_schedule(const RoutingSchedule &s, const RoutingProblem &p);

struct AllToAllStrategy {
    enum Kind { fixed_L, recursive } kind = fixed_L;
    int L = 2;     // fixed_L
    double a = 1;  // recursive: sub-lattice side N^(1/(a+1))
};

double all_to_all_depth_estimate(double N, const AllToAllStrategy &s);
// same recursion, argument log2(N)
double all_to_all_depth_from_log(double log2_n, const AllToAllStrategy &s);

}  // namespace djw
