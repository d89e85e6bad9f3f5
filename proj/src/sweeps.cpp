// SPDX-License-Identifier: MIT
#include "djw/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "djw/errors.hpp"
#include "djw/ffft.hpp"
#include "djw/routing.hpp"
#include "djw/switch.hpp"

namespace djw {

std::string CsvTable::str() const {
    std::ostringstream os;
    os << "# " << kCsvSchema << " " << name << "\n";
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (auto &r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

int cnot_depth(const Circuit &c) {
    return depth(decompose_to_cnot_basis(c), DepthModel::nn_lattice, {true, false});
}

HubbardRow hubbard_row(Geometry g, int cells, const std::string &method) {
    HubbardSpec s;
    s.geometry = g;
    s.cells = cells;
    TrotterCircuit tc;
    if (method == "ours") tc = build_trotter_step(s);
    else if (method == "fsn_line") tc = fsn_baseline(s, FsnVariant::line);
    else if (method == "fsn_ladder") tc = fsn_baseline(s, FsnVariant::ladder);
    else throw ParameterError("unknown Hubbard method '" + method + "'");
    HubbardRow r;
    r.geometry = geometry_name(g);
    r.method = method;
    r.cells = cells;
    r.qubits = tc.circuit.num_qubits();
    r.cnots = resource_report(tc.circuit).cnot_count;
    r.depth = cnot_depth(tc.circuit);
    r.native_depth = depth(tc.circuit, DepthModel::nn_lattice, {true, false});
    return r;
}

CsvTable hubbard_table(const std::vector<HubbardRow> &rows) {
    CsvTable t{"hubbard", {"geometry", "L", "method", "qubits", "cnots", "depth", "native_depth"}, {}};
    for (auto &r : rows)
        t.rows.push_back({r.geometry, std::to_string(r.cells), r.method, std::to_string(r.qubits), std::to_string(r.cnots),
                          std::to_string(r.depth), std::to_string(r.native_depth)});
    return t;
}

namespace {

void mean_std(const std::vector<double> &v, double &mean, double &sd) {
    mean = v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double acc = 0;
    for (double x : v) acc += (x - mean) * (x - mean);
    sd = v.size() > 1 ? std::sqrt(acc / (v.size() - 1)) : 0.0;
}

}  // namespace

std::vector<RouteRow> route_rows(int L, int samples, uint64_t seed) {
    if (L < 1 || samples < 1) throw ParameterError("route sweep needs L >= 1 and samples >= 1");
    LatticeShape shape({L, L});
    const int n = L * L;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> perms(samples);
    for (auto &p : perms) {
        p.resize(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
    }
    // warm the switch cache before going parallel
    route_2d({shape, perms[0]});
    std::vector<double> oc(samples), od(samples), fc(samples), fd(samples);
    std::vector<int> bad(samples, 0);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < samples; ++k) {
        RoutingProblem p{shape, perms[k]};
        RoutingSchedule a = route_2d(p), b = fsn_baseline_route(p);
        bad[k] = !check_schedule(a, p).empty() + !check_schedule(b, p).empty() * 2;
        oc[k] = resource_report(a.total).cnot_count;
        od[k] = cnot_depth(a.total);
        fc[k] = resource_report(b.total).cnot_count;
        fd[k] = cnot_depth(b.total);
    }
    RouteRow ours{L, "ours", samples}, fsn{L, "fsn", samples};
    mean_std(oc, ours.mean_cnots, ours.std_cnots);
    mean_std(od, ours.mean_depth, ours.std_depth);
    mean_std(fc, fsn.mean_cnots, fsn.std_cnots);
    mean_std(fd, fsn.mean_depth, fsn.std_depth);
    for (int b : bad) {
        ours.failures += b & 1;
        fsn.failures += (b >> 1) & 1;
    }
    return {ours, fsn};
}

CsvTable route_table(const std::vector<RouteRow> &rows) {
    CsvTable t{"route", {"L", "method", "samples", "mean_cnots", "std_cnots", "mean_depth", "std_depth", "failures"}, {}};
    for (auto &r : rows)
        t.rows.push_back({std::to_string(r.L), r.method, std::to_string(r.samples), fmt(r.mean_cnots, 2),
                          fmt(r.std_cnots, 2), fmt(r.mean_depth, 2), fmt(r.std_depth, 2), std::to_string(r.failures)});
    return t;
}

FfftRow ffft_row(int L, bool spinful, const std::string &method) {
    FfftCircuit f;
    if (method == "ours") f = ffft_2d(L, L, spinful);
    else if (method == "givens_full") f = givens_full_baseline(L, L, spinful);
    else throw ParameterError("unknown FFFT method '" + method + "'");
    FfftRow r;
    r.L = L;
    r.spinful = spinful;
    r.method = method;
    r.qubits = f.qubits.size();
    r.cnots = resource_report(f.circuit).cnot_count;
    r.givens = f.givens_count();
    r.depth = depth(f.circuit, DepthModel::nn_lattice, {true, false});
    return r;
}

CsvTable ffft_table(const std::vector<FfftRow> &rows) {
    CsvTable t{"ffft", {"L", "spinful", "method", "qubits", "cnots", "givens", "depth"}, {}};
    for (auto &r : rows)
        t.rows.push_back({std::to_string(r.L), r.spinful ? "1" : "0", r.method, std::to_string(r.qubits),
                          std::to_string(r.cnots), std::to_string(r.givens), std::to_string(r.depth)});
    return t;
}

SwitchRow switch_row(int L) {
    LatticeShape s({L, L});
    SwitchPlan p = boustrophedon_switch(BoustrophedonSpec::from_widths({L}),
                                        BoustrophedonSpec::from_widths(std::vector<int>(L, 1)), s);
    sign_audit(p);
    Circuit c = p.compensated_circuit();
    return {L, L * L, resource_report(c).cnot_count, depth(c, DepthModel::nn_lattice, {true, false})};
}

CsvTable switch_table(const std::vector<SwitchRow> &rows) {
    CsvTable t{"switch", {"L", "N", "cnots", "depth"}, {}};
    for (auto &r : rows)
        t.rows.push_back({std::to_string(r.L), std::to_string(r.N), std::to_string(r.cnots), std::to_string(r.depth)});
    return t;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope needs two or more points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]) - mx;
        sxy += a * (std::log(y[i]) - my);
        sxx += a * a;
    }
    return sxy / sxx;
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    auto num = [&](const std::string &t) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) throw ParseError("bad integer list '" + text + "'");
        return std::stoi(t);
    };
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int a = num(text.substr(0, dots)), b = num(text.substr(dots + 2));
        if (b < a) throw ParseError("empty range '" + text + "'");
        for (int v = a; v <= b; ++v) out.push_back(v);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(num(tok));
    if (out.empty()) throw ParseError("empty integer list");
    return out;
}

}  // namespace djw
