// SPDX-License-Identifier: MIT
// Acceptance checks. One PASS/FAIL line per criterion; exit status is the number of failures.
// Usage: acceptance [criterion ...]   (default: all of 1..10)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "djw/ffft.hpp"
#include "djw/hubbard.hpp"
#include "djw/oracles.hpp"
#include "djw/pauli.hpp"
#include "djw/routing.hpp"
#include "djw/sweeps.hpp"
#include "djw/switch.hpp"

using namespace djw;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double budget_s;
    std::function<Outcome()> run;
};

std::string f4(double v) { return fmt(v, 4); }

// block-width families: full width, all ones, uniform widths 2 and 3 at every offset
std::vector<BoustrophedonSpec> spec_family(int C) {
    std::vector<BoustrophedonSpec> out;
    std::set<std::string> seen;
    auto push = [&](BoustrophedonSpec b) {
        if (seen.insert(b.str()).second) out.push_back(b);
    };
    push(BoustrophedonSpec::from_widths({C}));
    push(BoustrophedonSpec::from_widths(std::vector<int>(C, 1)));
    for (int w : {2, 3})
        for (int off = 0; off < w && w <= C; ++off) push(BoustrophedonSpec::uniform(C, w, off));
    return out;
}

BoustrophedonSpec with_rows(BoustrophedonSpec b, const std::vector<int> &rows) {
    b.row_partition = BoustrophedonSpec::from_widths(rows).column_partition;
    return b;
}

std::vector<BoustrophedonSpec> spec_family_3d(int L) {
    std::vector<BoustrophedonSpec> out;
    for (auto &b : spec_family(L)) {
        out.push_back(b);
        out.push_back(with_rows(b, std::vector<int>(L, 1)));
    }
    return out;
}

// brute-force inversion pairs, independent of the library helper
std::set<std::pair<int, int>> inversions(const CanonicalOrdering &m, const CanonicalOrdering &mp) {
    std::set<std::pair<int, int>> out;
    const int n = m.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if ((m.rank(a) < m.rank(b)) != (mp.rank(a) < mp.rank(b))) out.insert({a, b});
    return out;
}

bool phase_is_inversion_form(const SwitchPlan &plan) {
    PhasePolynomial p = phase_polynomial(plan.full_circuit());
    if (p.linear().popcount() != 0) return false;
    auto terms = p.quadratic_terms();
    std::set<std::pair<int, int>> got;
    for (auto [i, j] : terms) got.insert({std::min(i, j), std::max(i, j)});
    return got == inversions(plan.source, plan.target);
}

// JW Majoranas built from ranks: Z on every lower rank, then X or Y
PauliString jw_majorana(int site, const CanonicalOrdering &m, char head) {
    PauliString p(m.size());
    for (int r = 0; r < m.rank(site); ++r) p.set_letter(m.index_at(r), 'Z');
    p.set_letter(site, head);
    return p;
}

Outcome criterion1() {
    int pairs = 0, bad = 0;
    std::string first_bad;
    auto check = [&](SwitchPlan plan, const std::string &label) {
        ++pairs;
        if (!phase_is_inversion_form(plan)) {
            if (!bad++) first_bad = label;
        }
    };
    for (int R = 1; R <= 8; ++R)
        for (int C = 1; C <= 8; ++C) {
            LatticeShape shape({R, C});
            auto fam = spec_family(C);
            for (auto &a : fam)
                for (auto &b : fam)
                    check(boustrophedon_switch(a, b, shape), shape.str() + " " + a.str() + "->" + b.str());
        }
    int pairs2d = pairs;
    for (int L : {3, 4}) {
        LatticeShape shape({L, L, L});
        auto fam = spec_family_3d(L);
        for (size_t i = 0; i < fam.size(); ++i)
            for (size_t j = 0; j < fam.size(); ++j)
                if (i != j)
                    check(d_dim_boustrophedon_switch(fam[i], fam[j], shape),
                          shape.str() + " " + fam[i].str() + "->" + fam[j].str());
        DimHierarchy h = DimHierarchy::standard(3);
        for (int k = 0; k < 2; ++k) check(hierarchy_transposition(shape, h, k), shape.str() + " transposition");
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = std::to_string(pairs2d) + " 2D and " + std::to_string(pairs - pairs2d) + " 3D switches, " +
               std::to_string(bad) + " mismatches" + (bad ? " (first: " + first_bad + ")" : "");
    return o;
}

Outcome criterion2() {
    int plans = 0, bad = 0;
    for (int R = 1; R <= 4; ++R)
        for (int C = 1; C <= 4; ++C) {
            LatticeShape shape({R, C});
            auto fam = spec_family(C);
            for (auto &a : fam)
                for (auto &b : fam) {
                    SwitchPlan plan = boustrophedon_switch(a, b, shape);
                    sign_audit(plan);
                    Circuit c = plan.compensated_circuit();
                    ++plans;
                    for (int q = 0; q < shape.size(); ++q)
                        for (char head : {'X', 'Y'}) {
                            PauliString src = jw_majorana(q, plan.source, head);
                            PauliString dst = jw_majorana(q, plan.target, head);
                            if (!(conjugate(dst, c) == src)) {
                                ++bad;
                                goto next;
                            }
                        }
                next:;
                }
        }
    return {bad == 0, std::to_string(plans) + " compensated switches, " + std::to_string(bad) + " with a Majorana off"};
}

Outcome criterion3() {
    Outcome o;
    std::ostringstream os;
    for (int L : {4, 8, 16, 32}) {
        SwitchRow r = switch_row(L);
        double N = r.N, sq = std::sqrt(N);
        bool ok = r.cnots <= 6 * N + 16 * sq && r.depth <= 6 * sq + 16;
        o.pass &= ok;
        os << "L=" << L << " cnots " << r.cnots << "/" << f4(6 * N + 16 * sq) << " depth " << r.depth << "/"
           << f4(6 * sq + 16) << (ok ? "" : " over") << "; ";
    }
    o.detail = os.str();
    return o;
}

Outcome criterion4() {
    struct Case {
        Geometry g;
        int cx, cy;
        bool spinful;
    };
    std::vector<Case> cases = {{Geometry::square_nn, 2, 2, true},  {Geometry::square_nn, 4, 2, false},
                               {Geometry::square_nnn, 2, 2, true}, {Geometry::square_nnn, 4, 2, false},
                               {Geometry::lieb, 1, 1, true},       {Geometry::lieb, 2, 1, false},
                               {Geometry::kagome, 1, 1, true},     {Geometry::kagome, 2, 1, false}};
    Outcome o;
    std::ostringstream os;
    double worst = 0;
    int checked = 0;
    for (auto &cs : cases) {
        HubbardSpec s;
        s.geometry = cs.g;
        s.cells = cs.cx;
        s.cells_y = cs.cy;
        s.spinful = cs.spinful;
        s.t = 1.0;
        s.tp = 0.37;
        s.U = 2.3;
        s.dt = 0.41;
        TrotterCircuit tc = build_trotter_step(s);
        if (tc.circuit.num_qubits() > 8) continue;
        ++checked;
        double d = phase_insensitive_distance(dense_unitary(tc.circuit),
                                              exact_trotter_product(tc.product_formula(), tc.reference));
        worst = std::max(worst, d);
        if (d >= 1e-10) {
            o.pass = false;
            os << geometry_name(cs.g) << " " << cs.cx << "x" << cs.cy << " distance " << d << "; ";
        }
    }
    os << checked << " reductions, worst distance " << worst;
    o.detail = os.str();
    return o;
}

// least-squares fit of y = a N + b sqrt(N) + c
double leading_coefficient(const std::vector<double> &N, const std::vector<double> &y) {
    Eigen::MatrixXd A(N.size(), 3);
    Eigen::VectorXd b(N.size());
    for (size_t i = 0; i < N.size(); ++i) {
        A(i, 0) = N[i];
        A(i, 1) = std::sqrt(N[i]);
        A(i, 2) = 1.0;
        b(i) = y[i];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

Outcome criterion5() {
    struct Row {
        Geometry g;
        int L;
        double cnot_target, depth_target, form_div;
    };
    std::vector<Row> rows = {{Geometry::square_nn, 10, 21.0, 4.0, 2.0},
                             {Geometry::square_nnn, 10, 30.0, 4.0, 2.0},
                             {Geometry::lieb, 5, 59.0 / 3.0, 12.0, 6.0},
                             {Geometry::kagome, 5, 24.0, 12.0, 6.0}};
    Outcome o;
    std::ostringstream os;
    for (auto &r : rows) {
        HubbardRow h = hubbard_row(r.g, r.L, "ours");
        double N = h.qubits;
        double per = h.cnots / N;
        double form = std::sqrt(N / r.form_div);
        double dratio = h.native_depth / form;
        bool cok = std::abs(per - r.cnot_target) <= 0.1 * r.cnot_target;
        bool dok = std::abs(dratio - r.depth_target) <= 0.1 * r.depth_target;
        // slope of depth against sqrt(N/k), from the two largest sizes
        HubbardRow prev = hubbard_row(r.g, r.L - 1, "ours");
        double slope = (h.native_depth - prev.native_depth) / (form - std::sqrt(prev.qubits / r.form_div));
        o.pass &= cok && dok;
        os << geometry_name(r.g) << " L=" << r.L << " cnot/N " << f4(per) << " vs " << f4(r.cnot_target)
           << (cok ? "" : " out") << ", depth/form " << f4(dratio) << " vs " << f4(r.depth_target) << (dok ? "" : " out")
           << " (depth slope " << f4(slope) << "); ";
    }
    std::vector<double> Ns;
    std::map<std::string, std::vector<double>> ys;
    for (int L = 6; L <= 10; ++L) {
        HubbardSpec s;
        s.cells = L;
        auto cc = component_costs(s);
        Ns.push_back(2.0 * L * L);
        for (auto &[k, v] : cc) ys[k].push_back(double(v.cnot_count));
    }
    for (auto [key, target] : std::vector<std::pair<std::string, double>>{{"switch", 6.5}, {"onsite", 1.0}, {"hopping", 4.0}}) {
        double a = leading_coefficient(Ns, ys[key]);
        double raw = ys[key].back() / Ns.back();
        bool ok = std::abs(raw - target) <= 0.1 * target + 1e-12;
        o.pass &= ok;
        os << key << " per-N at L=10 " << f4(raw) << " vs " << f4(target) << (ok ? "" : " out") << " (fit aN+b sqrt(N)+c: a="
           << f4(a) << "); ";
    }
    o.detail = os.str();
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::ostringstream os;
    auto row = [](int L, const char *m) { return hubbard_row(Geometry::square_nn, L, m); };
    HubbardRow a = row(5, "ours"), b = row(5, "fsn_line"), c = row(5, "fsn_ladder");
    bool cnot_ok = a.cnots < b.cnots && a.cnots < c.cnots;
    o.pass &= cnot_ok;
    os << "L=5 cnots ours " << a.cnots << " line " << b.cnots << " ladder " << c.cnots << (cnot_ok ? "" : " not lower")
       << "; depth";
    for (int L = 8; L <= 12; ++L) {
        HubbardRow x = row(L, "ours"), y = row(L, "fsn_line"), z = row(L, "fsn_ladder");
        bool ok = x.depth < y.depth && x.depth < z.depth;
        o.pass &= ok;
        os << " L=" << L << " " << x.depth << "/" << y.depth << "/" << z.depth << (ok ? "" : " not lower");
    }
    os << " (ours/line/ladder, CNOT-basis depth)";
    o.detail = os.str();
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::ostringstream os;
    int failures = 0;
    for (int L = 4; L <= 12; ++L) {
        auto rows = route_rows(L, 1000, 7 + L);
        const RouteRow &ours = rows[0], &fsn = rows[1];
        failures += ours.failures + fsn.failures;
        bool cok = L < 6 || ours.mean_cnots < fsn.mean_cnots;
        bool dok = L < 8 || ours.mean_depth < fsn.mean_depth;
        o.pass &= cok && dok;
        os << "L=" << L << " cnots " << fmt(ours.mean_cnots, 1) << "/" << fmt(fsn.mean_cnots, 1) << " depth "
           << fmt(ours.mean_depth, 1) << "/" << fmt(fsn.mean_depth, 1) << (cok && dok ? "" : " not lower") << "; ";
    }
    o.pass &= failures == 0;
    os << failures << " tracking failures";
    o.detail = os.str();
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::ostringstream os;
    for (int L : {2, 3, 4}) {
        LatticeShape shape({L, L, L});
        const int n = shape.size();
        std::mt19937_64 rng(1000 + L);
        int worst = 0, over = 0, bad = 0;
        const int samples = 200;
        std::vector<int> perm(n);
        for (int k = 0; k < samples; ++k) {
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            RoutingProblem p{shape, perm};
            RoutingSchedule s = route_dd(p);
            bad += !check_schedule(s, p).empty();
            int r = s.fswap_rounds();
            worst = std::max(worst, r);
            over += r > 5 * (L - 1);
        }
        bool ok = over == 0 && bad == 0;
        o.pass &= ok;
        os << "L=" << L << " worst " << worst << " rounds vs bound " << 5 * (L - 1) << ", " << over << "/" << samples
           << " over, " << bad << " tracking failures; ";
    }
    o.detail = os.str();
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::ostringstream os;
    for (auto [lx, ly] : std::vector<std::pair<int, int>>{{2, 2}, {4, 2}}) {
        FfftCircuit f = ffft_2d(lx, ly, false);
        double d = phase_insensitive_distance(dense_unitary(f.circuit), exact_orbital_rotation(f.expected, f.ordering));
        o.pass &= d < 1e-10;
        os << lx << "x" << ly << " dense " << d << "; ";
    }
    std::vector<double> N, ours, base;
    for (int L = 4; L <= 32; L += 4) {
        N.push_back(double(L) * L);
        ours.push_back(double(ffft_row(L, false, "ours").cnots));
        base.push_back(double(ffft_row(L, false, "givens_full").cnots));
    }
    double so = loglog_slope(N, ours), sb = loglog_slope(N, base);
    bool slopes = std::abs(so - 1.5) <= 0.1 && std::abs(sb - 2.0) <= 0.1;
    o.pass &= slopes;
    os << "cnot slope ours " << f4(so) << " baseline " << f4(sb) << (slopes ? "" : " out") << "; single-particle";
    for (int L : {2, 4, 8, 16}) {
        FfftCircuit f = ffft_2d(L, L, false);
        CMatrix m = single_particle_matrix(f);
        double infid = 1.0 - std::abs((f.expected.adjoint() * m).trace()) / m.rows();
        double err = (m - f.expected).cwiseAbs().maxCoeff();
        bool ok = err < 1e-10 && infid < 1e-10;
        o.pass &= ok;
        os << " L=" << L << " " << err;
    }
    o.detail = os.str();
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::ostringstream os;
    for (int a : {1, 2, 3}) {
        AllToAllStrategy s{AllToAllStrategy::recursive, 2, double(a)};
        std::vector<double> x, y;
        for (double l = 64; l <= 1024; l *= 1.25) {
            x.push_back(l);
            y.push_back(all_to_all_depth_from_log(l, s));
        }
        double slope = loglog_slope(x, y), want = 1.0 + 1.0 / a;
        bool ok = std::abs(slope - want) <= 0.05;
        o.pass &= ok;
        os << "a=" << a << " exponent " << f4(slope) << " vs " << f4(want) << (ok ? "" : " out") << "; ";
    }
    os << "full-scale Hubbard dynamics and fault-tolerant costs are out of desk scale and are not reproduced; "
          "covered by criteria 3, 8 and these estimator fits";
    o.detail = os.str();
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<Criterion> all = {
        {1, "switch phase polynomial equals inversion-pair form", 60, criterion1},
        {2, "Majorana exactness after sign compensation", 30, criterion2},
        {3, "switch CNOT and depth bounds", 10, criterion3},
        {4, "Trotter step dense equivalence", 120, criterion4},
        {5, "leading CNOT and depth coefficients, component costs", 60, criterion5},
        {6, "Hubbard crossovers against FSN baselines", 60, criterion6},
        {7, "routing correctness and crossovers", 300, criterion7},
        {8, "3D routing round bound", 60, criterion8},
        {9, "FFFT equality, scaling and single-particle fidelity", 300, criterion9},
        {10, "desk-scale coverage and all-to-all exponents", 60, criterion10},
    };
    std::set<int> want;
    for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
    int failed = 0;
    for (auto &c : all) {
        if (!want.empty() && !want.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.budget_s;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d: %s | %s | %.1f s of %.0f s%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    return failed;
}
