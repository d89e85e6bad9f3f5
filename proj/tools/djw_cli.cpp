// SPDX-License-Identifier: MIT
// djw: command-line front end.
// Exit codes: 0 ok, 1 verification failed, 2 usage or parse error, 3 internal error.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "djw/errors.hpp"
#include "djw/ffft.hpp"
#include "djw/hubbard.hpp"
#include "djw/oracles.hpp"
#include "djw/routing.hpp"
#include "djw/sweeps.hpp"
#include "djw/switch.hpp"

using namespace djw;

namespace {

constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_out(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

BoustrophedonSpec spec_alias(const std::string &s, const LatticeShape &shape) {
    if (s == "S") return BoustrophedonSpec::from_widths({shape.cols()});
    if (s == "Z") return BoustrophedonSpec::from_widths(std::vector<int>(shape.cols(), 1));
    return BoustrophedonSpec::parse(s);
}

std::pair<int, int> square_shape(const std::string &text) {
    LatticeShape s = LatticeShape::parse(text);
    if (s.dims() != 2) throw UsageError("expected a 2D shape like 4x4");
    return {s.rows(), s.cols()};
}

// ---- switch ----

struct SwitchArgs {
    std::string shape, src, dst, verify = "f2", emit, manifest, depth_model = "nn_lattice";
    int dim = 0;
};

int run_switch(const SwitchArgs &a) {
    LatticeShape shape = LatticeShape::parse(a.shape);
    if (a.dim && a.dim != shape.dims()) throw UsageError("--dim does not match --shape");
    SwitchPlan plan;
    if (shape.dims() == 2) {
        plan = boustrophedon_switch(spec_alias(a.src.empty() ? "S" : a.src, shape),
                                    spec_alias(a.dst.empty() ? "Z" : a.dst, shape), shape);
    } else if (a.src.empty() && a.dst.empty()) {
        plan = hierarchy_transposition(shape, DimHierarchy::standard(shape.dims()), 0);
    } else {
        if (a.src.empty() || a.dst.empty()) throw UsageError("give both --src and --dst");
        plan = d_dim_boustrophedon_switch(BoustrophedonSpec::parse(a.src), BoustrophedonSpec::parse(a.dst), shape);
    }
    sign_audit(plan);
    nlohmann::json report = plan.manifest();
    Circuit c = plan.compensated_circuit();
    report["resources"] = resource_report(c).to_json();
    report["depth"] = depth(c, parse_depth_model(a.depth_model), {true, false});
    bool ok = true;
    auto want = [&](const char *k) { return a.verify == k || a.verify == "all"; };
    if (a.verify != "none" && a.verify != "all" && a.verify != "f2" && a.verify != "pauli" && a.verify != "dense")
        throw UsageError("--verify must be one of f2, pauli, dense, all, none");
    if (want("f2")) ok &= (report["verify"]["f2"] = verify_f2(plan)).get<bool>();
    if (want("pauli")) ok &= (report["verify"]["pauli"] = verify_pauli(plan)).get<bool>();
    if (want("dense") && (a.verify == "dense" || shape.size() <= 8)) {
        if (shape.size() > 8) throw UsageError("dense verification is limited to 8 qubits");
        ok &= (report["verify"]["dense"] = verify_dense(plan)).get<bool>();
    }
    if (!a.emit.empty()) write_out(a.emit, c.to_text());
    write_out(a.manifest, report.dump(2) + "\n");
    return ok ? kOk : kVerifyFail;
}

// ---- route ----

struct RouteArgs {
    std::string shape, csv;
    std::optional<uint64_t> seed;
    int samples = 1000;
    bool baseline = false;
};

int run_route(const RouteArgs &a) {
    auto [r, c] = square_shape(a.shape);
    if (r != c) throw UsageError("route sweeps use square L x L shapes");
    auto rows = route_rows(r, a.samples, *a.seed);
    if (!a.baseline) rows.resize(1);
    write_out(a.csv, route_table(rows).str());
    for (auto &row : rows)
        if (row.failures) return kVerifyFail;
    return kOk;
}

// ---- hubbard ----

struct HubbardArgs {
    std::string geometry = "square_nn", method = "ours", emit, report, verify = "none", sweep, csv;
    int cells = 2, cells_y = 0;
    double t = 1.0, tp = 0.5, u = 4.0, dt = 0.1;
    bool spinless = false;
};

std::vector<std::string> split(const std::string &s);
int sweep_hubbard(const std::string &geometry, const std::string &cells, const std::string &methods,
                  const std::string &csv);

int run_hubbard(const HubbardArgs &a) {
    if (!a.sweep.empty()) return sweep_hubbard(a.geometry, a.sweep, a.method, a.csv);
    HubbardSpec s;
    s.geometry = parse_geometry(a.geometry);
    s.cells = a.cells;
    s.cells_y = a.cells_y;
    s.t = a.t;
    s.tp = a.tp;
    s.U = a.u;
    s.dt = a.dt;
    s.spinful = !a.spinless;
    TrotterCircuit tc;
    if (a.method == "ours") tc = build_trotter_step(s);
    else if (a.method == "fsn_line") tc = fsn_baseline(s, FsnVariant::line);
    else if (a.method == "fsn_ladder") tc = fsn_baseline(s, FsnVariant::ladder);
    else throw UsageError("--method must be ours, fsn_line or fsn_ladder");
    LatticeModel model = lattice_model(s);
    nlohmann::json j = tc.summary();
    j["geometry"] = a.geometry;
    j["method"] = a.method;
    j["cnot_depth"] = cnot_depth(tc.circuit);
    std::string ledger = check_ledger_complete(tc, model), mirror = check_mirror_symmetry(tc);
    j["ledger_complete"] = ledger.empty() ? "ok" : ledger;
    j["mirror_symmetry"] = mirror.empty() ? "ok" : mirror;
    bool ok = ledger.empty() && mirror.empty() && validate_connectivity(tc.circuit).empty();
    if (a.method == "ours" && s.geometry == Geometry::square_nn) {
        nlohmann::json cc;
        for (auto &[k, v] : component_costs(s)) cc[k] = v.cnot_count;
        j["component_cnots"] = cc;
        j["depth_audit"] = depth_audit(s);
    }
    if (a.verify == "dense") {
        if (tc.circuit.num_qubits() > kDenseQubitCap) throw UsageError("dense verification is capped at 12 qubits");
        double d = phase_insensitive_distance(dense_unitary(tc.circuit),
                                              exact_trotter_product(tc.product_formula(), tc.reference));
        j["dense_distance"] = d;
        ok &= d < 1e-10;
    } else if (a.verify != "none") {
        throw UsageError("--verify must be dense or none");
    }
    if (!a.emit.empty()) write_out(a.emit, tc.circuit.to_text());
    write_out(a.report, j.dump(2) + "\n");
    return ok ? kOk : kVerifyFail;
}

// ---- ffft ----

struct FfftArgs {
    std::string shape = "2x2", emit, verify = "none", sweep, csv;
    bool spinful = false, baseline = false;
};

int run_ffft(const FfftArgs &a) {
    if (!a.sweep.empty()) {
        std::vector<FfftRow> rows;
        for (int L : parse_int_list(a.sweep)) {
            rows.push_back(ffft_row(L, a.spinful, "ours"));
            if (a.baseline) rows.push_back(ffft_row(L, a.spinful, "givens_full"));
        }
        write_out(a.csv, ffft_table(rows).str());
        return kOk;
    }
    auto [ly, lx] = square_shape(a.shape);
    FfftCircuit f = a.baseline ? givens_full_baseline(lx, ly, a.spinful) : ffft_2d(lx, ly, a.spinful);
    nlohmann::json j;
    j["qubits"] = f.qubits.size();
    j["givens"] = f.givens_count();
    j["resources"] = resource_report(f.circuit).to_json();
    bool ok = true;
    if (a.verify == "dense") {
        if (f.qubits.size() > kDenseQubitCap) throw UsageError("dense verification is capped at 12 qubits");
        double d = phase_insensitive_distance(dense_unitary(f.circuit), exact_orbital_rotation(f.expected, f.ordering));
        j["dense_distance"] = d;
        ok = d < 1e-10;
    } else if (a.verify == "single") {
        double d = (single_particle_matrix(f) - f.expected).cwiseAbs().maxCoeff();
        j["single_particle_error"] = d;
        ok = d < 1e-10;
    } else if (a.verify != "none") {
        throw UsageError("--verify must be dense, single or none");
    }
    if (!a.emit.empty()) write_out(a.emit, f.circuit.to_text());
    std::cout << j.dump(2) << "\n";
    return ok ? kOk : kVerifyFail;
}

// ---- bench ----

struct BenchArgs {
    std::string geometry = "square_nn", cells = "4..10", methods, sizes, csv;
    std::optional<uint64_t> seed;
    int samples = 1000;
    bool spinful = false;
};

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) out.push_back(tok);
    return out;
}

int sweep_hubbard(const std::string &geometry, const std::string &cell_list, const std::string &method_list,
                  const std::string &csv) {
    Geometry g = parse_geometry(geometry);
    auto cells = parse_int_list(cell_list);
    auto methods = split(method_list);
    std::vector<std::pair<int, std::string>> points;
    for (int L : cells)
        for (auto &m : methods) points.push_back({L, m});
    std::vector<HubbardRow> rows(points.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(points.size()); ++i) rows[i] = hubbard_row(g, points[i].first, points[i].second);
    write_out(csv, hubbard_table(rows).str());
    return kOk;
}

int bench_hubbard(const BenchArgs &a) {
    return sweep_hubbard(a.geometry, a.cells, a.methods.empty() ? "ours,fsn_line,fsn_ladder" : a.methods, a.csv);
}

int bench_route(const BenchArgs &a) {
    if (!a.seed) throw UsageError("bench route requires --seed");
    std::vector<RouteRow> rows;
    bool ok = true;
    for (int L : parse_int_list(a.sizes.empty() ? "4..12" : a.sizes))
        for (auto &r : route_rows(L, a.samples, *a.seed + L)) {
            ok &= r.failures == 0;
            rows.push_back(r);
        }
    write_out(a.csv, route_table(rows).str());
    return ok ? kOk : kVerifyFail;
}

int bench_ffft(const BenchArgs &a) {
    auto methods = split(a.methods.empty() ? "ours,givens_full" : a.methods);
    std::vector<FfftRow> rows;
    for (int L : parse_int_list(a.sizes.empty() ? "4..16" : a.sizes))
        for (auto &m : methods) rows.push_back(ffft_row(L, a.spinful, m));
    write_out(a.csv, ffft_table(rows).str());
    return kOk;
}

int bench_switch(const BenchArgs &a) {
    std::vector<SwitchRow> rows;
    for (int L : parse_int_list(a.sizes.empty() ? "4,8,16,32" : a.sizes)) rows.push_back(switch_row(L));
    write_out(a.csv, switch_table(rows).str());
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dynamic Jordan-Wigner encodings: switches, routing, Hubbard steps and FFFTs"};
    app.require_subcommand(1);
    int status = kOk;

    SwitchArgs sw;
    auto *csw = app.add_subcommand("switch", "synthesize and verify an encoding switch");
    csw->add_option("--shape", sw.shape, "lattice, e.g. 4x4 or 3x3x3")->required();
    csw->add_option("--src,--src-spec", sw.src, "S, Z or block widths like 1,2,2");
    csw->add_option("--dst,--dst-spec", sw.dst, "S, Z or block widths");
    csw->add_option("--dim", sw.dim, "expected number of axes");
    csw->add_option("--verify", sw.verify, "f2, pauli, dense, all or none");
    csw->add_option("--emit", sw.emit, "circuit text output");
    csw->add_option("--manifest", sw.manifest, "JSON manifest output (default stdout)");
    csw->add_option("--depth-model", sw.depth_model, "nn_lattice, all_to_all or lattice_surgery");
    csw->callback([&] { status = run_switch(sw); });

    RouteArgs ra;
    auto *crt = app.add_subcommand("route", "random-permutation routing statistics");
    crt->add_option("--shape", ra.shape, "LxL")->required();
    crt->add_option("--seed", ra.seed, "RNG seed")->required();
    crt->add_option("--samples", ra.samples, "number of permutations");
    crt->add_flag("--baseline", ra.baseline, "include the FSN baseline");
    crt->add_option("--csv", ra.csv, "CSV output (default stdout)");
    crt->callback([&] { status = run_route(ra); });

    HubbardArgs ha;
    auto *chb = app.add_subcommand("hubbard", "second-order Trotter step for a Hubbard model");
    chb->add_option("--geometry", ha.geometry, "square_nn, square_nnn, lieb or kagome");
    chb->add_option("--cells", ha.cells, "unit cells along x");
    chb->add_option("--cells-y", ha.cells_y, "unit cells along y (default: same)");
    chb->add_option("--t", ha.t, "hopping");
    chb->add_option("--tp", ha.tp, "next-nearest hopping");
    chb->add_option("--u", ha.u, "on-site repulsion");
    chb->add_option("--dt", ha.dt, "time step");
    chb->add_flag("--spinless", ha.spinless, "single species");
    chb->add_option("--method,--methods", ha.method, "ours, fsn_line or fsn_ladder (comma list with --sweep)");
    chb->add_option("--sweep", ha.sweep, "cell counts, e.g. 4..10; writes CSV");
    chb->add_option("--csv", ha.csv, "CSV output for --sweep (default stdout)");
    chb->add_option("--emit", ha.emit, "circuit text output");
    chb->add_option("--report", ha.report, "JSON report output (default stdout)");
    chb->add_option("--verify", ha.verify, "dense or none");
    chb->callback([&] { status = run_hubbard(ha); });

    FfftArgs fa;
    auto *cff = app.add_subcommand("ffft", "two-dimensional fermionic Fourier transform");
    cff->add_option("--shape", fa.shape, "rows x columns of sites");
    cff->add_flag("--spinful", fa.spinful, "interleave two spin species along the columns");
    cff->add_flag("--baseline", fa.baseline, "single Givens network over the whole register");
    cff->add_option("--emit", fa.emit, "circuit text output");
    cff->add_option("--verify", fa.verify, "dense, single or none");
    cff->add_option("--sweep", fa.sweep, "side lengths, e.g. 4..32");
    cff->add_option("--csv", fa.csv, "CSV output for --sweep (default stdout)");
    cff->callback([&] { status = run_ffft(fa); });

    BenchArgs ba;
    auto *cbn = app.add_subcommand("bench", "resource sweeps as CSV");
    cbn->require_subcommand(1);
    auto common = [&](CLI::App *s) { s->add_option("--csv", ba.csv, "CSV output (default stdout)"); };
    auto *bh = cbn->add_subcommand("hubbard", "Trotter step costs per method");
    bh->add_option("--geometry", ba.geometry, "geometry");
    bh->add_option("--cells", ba.cells, "range like 4..10");
    bh->add_option("--methods", ba.methods, "comma list of ours, fsn_line, fsn_ladder");
    common(bh);
    bh->callback([&] { status = bench_hubbard(ba); });
    auto *br = cbn->add_subcommand("route", "routing statistics per size");
    br->add_option("--sizes", ba.sizes, "range like 4..12");
    br->add_option("--samples", ba.samples, "permutations per size");
    br->add_option("--seed", ba.seed, "RNG seed (required)");
    common(br);
    br->callback([&] { status = bench_route(ba); });
    auto *bf = cbn->add_subcommand("ffft", "FFFT costs per size");
    bf->add_option("--sizes", ba.sizes, "range like 4..32");
    bf->add_option("--methods", ba.methods, "comma list of ours, givens_full");
    bf->add_flag("--spinful", ba.spinful, "two species");
    common(bf);
    bf->callback([&] { status = bench_ffft(ba); });
    auto *bs = cbn->add_subcommand("switch", "S to Z switch costs per size");
    bs->add_option("--sizes", ba.sizes, "list like 4,8,16,32");
    common(bs);
    bs->callback([&] { status = bench_switch(ba); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SpecError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ShapeError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParameterError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return status;
}
