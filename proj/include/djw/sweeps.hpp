// SPDX-License-Identifier: MIT
// Sweep rows shared by the command-line tool and the acceptance checks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "djw/circuit.hpp"
#include "djw/hubbard.hpp"

namespace djw {

constexpr const char *kCsvSchema = "djw-csv v1";

struct CsvTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string str() const;  // "# djw-csv v1 <name>" line, header, rows
};

std::string fmt(double v, int precision = 4);

// two-qubit NN depth after CNOT-basis decomposition
int cnot_depth(const Circuit &c);

struct HubbardRow {
    std::string geometry, method;
    int cells = 0, qubits = 0;
    int64_t cnots = 0;
    int depth = 0;         // cnot_depth
    int native_depth = 0;  // two-qubit NN depth of the gates as emitted
};

HubbardRow hubbard_row(Geometry g, int cells, const std::string &method);
CsvTable hubbard_table(const std::vector<HubbardRow> &rows);

struct RouteRow {
    int L = 0;
    std::string method;
    int samples = 0;
    double mean_cnots = 0, std_cnots = 0, mean_depth = 0, std_depth = 0;
    int failures = 0;  // schedules failing mode tracking
};

// samples uniformly random permutations on L x L from a seeded mt19937_64; methods "ours" and "fsn"
std::vector<RouteRow> route_rows(int L, int samples, uint64_t seed);
CsvTable route_table(const std::vector<RouteRow> &rows);

struct FfftRow {
    int L = 0;
    bool spinful = false;
    std::string method;
    int qubits = 0;
    int64_t cnots = 0, givens = 0;
    int depth = 0;
};

FfftRow ffft_row(int L, bool spinful, const std::string &method);
CsvTable ffft_table(const std::vector<FfftRow> &rows);

struct SwitchRow {
    int L = 0, N = 0;
    int64_t cnots = 0;
    int depth = 0;
};

// sign-compensated S to Z boustrophedon switch on L x L
SwitchRow switch_row(int L);
CsvTable switch_table(const std::vector<SwitchRow> &rows);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

// "4..10", "4,8,16" or "5"
std::vector<int> parse_int_list(const std::string &text);

}  // namespace djw
