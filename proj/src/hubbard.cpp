// SPDX-License-Identifier: MIT
#include "djw/hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "djw/errors.hpp"
#include "djw/pauli.hpp"
#include "djw/switch.hpp"

namespace djw {

std::string geometry_name(Geometry g) {
    switch (g) {
        case Geometry::square_nn: return "square_nn";
        case Geometry::square_nnn: return "square_nnn";
        case Geometry::lieb: return "lieb";
        case Geometry::kagome: return "kagome";
    }
    return "?";
}

Geometry parse_geometry(const std::string &name) {
    for (Geometry g : {Geometry::square_nn, Geometry::square_nnn, Geometry::lieb, Geometry::kagome})
        if (geometry_name(g) == name) return g;
    throw SpecError("unknown geometry '" + name + "'");
}

void HubbardSpec::validate() const {
    if (nx() < 1 || ny() < 1) throw SpecError("need at least one unit cell");
    if (!(dt >= 0.0) || !std::isfinite(t) || !std::isfinite(tp) || !std::isfinite(U))
        throw SpecError("non-finite Hamiltonian parameters");
}

namespace {

struct CellInfo {
    int subs;
    int rows_per_cell;
    // row offset of each sub-site inside the cell, per column parity
    std::array<std::array<int, 3>, 2> offset;
};

// sub-sites: 0 = corner, 1 = along x, 2 = along y
CellInfo cell_info(Geometry g) {
    if (g == Geometry::lieb || g == Geometry::kagome) return {3, 3, {{{1, 0, 2}, {1, 0, 2}}}};
    return {1, 1, {{{0, 0, 0}, {0, 0, 0}}}};
}

bool is_square(Geometry g) { return g == Geometry::square_nn || g == Geometry::square_nnn; }

}  // namespace

LatticeModel lattice_model(const HubbardSpec &spec) {
    spec.validate();
    LatticeModel m;
    m.spec = spec;
    const CellInfo ci = cell_info(spec.geometry);
    const int nx = spec.nx(), ny = spec.ny();
    m.subs = ci.subs;
    m.species = spec.spinful ? 2 : 1;
    m.grid_rows = ny * ci.rows_per_cell;
    m.grid_cols = nx;
    auto site = [&](int x, int y, int s) { return (y * nx + x) * ci.subs + s; };
    m.pos.resize(nx * ny * ci.subs);
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x)
            for (int s = 0; s < ci.subs; ++s)
                m.pos[site(x, y, s)] = {y * ci.rows_per_cell + ci.offset[x & 1][s], x};

    struct Edge {
        int s0, dx0, dy0, s1, dx1, dy1;
        bool nnn;
    };
    std::vector<Edge> edges;
    switch (spec.geometry) {
        case Geometry::square_nnn:
            edges.push_back({0, 0, 0, 0, 1, 1, true});
            edges.push_back({0, 1, 0, 0, 0, 1, true});
            [[fallthrough]];
        case Geometry::square_nn:
            edges.push_back({0, 0, 0, 0, 1, 0, false});
            edges.push_back({0, 0, 0, 0, 0, 1, false});
            break;
        case Geometry::kagome:
            edges.push_back({1, 0, 0, 2, 0, 0, false});
            edges.push_back({1, 0, 0, 2, 1, -1, false});
            [[fallthrough]];
        case Geometry::lieb:
            edges.push_back({0, 0, 0, 1, 0, 0, false});
            edges.push_back({0, 0, 0, 2, 0, 0, false});
            edges.push_back({1, 0, 0, 0, 1, 0, false});
            edges.push_back({2, 0, 0, 0, 0, 1, false});
            break;
    }
    std::vector<std::pair<int, int>> hops;
    std::vector<char> hop_nnn;
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x)
            for (auto &e : edges) {
                int x0 = x + e.dx0, y0 = y + e.dy0, x1 = x + e.dx1, y1 = y + e.dy1;
                if (x0 < 0 || x0 >= nx || y0 < 0 || y0 >= ny || x1 < 0 || x1 >= nx || y1 < 0 || y1 >= ny) continue;
                hops.emplace_back(site(x0, y0, e.s0), site(x1, y1, e.s1));
                hop_nnn.push_back(e.nnn);
            }
    for (int sp = 0; sp < m.species; ++sp)
        for (size_t k = 0; k < hops.size(); ++k) {
            HubbardTerm t;
            t.kind = HubbardTerm::Hop;
            t.a = m.mode(hops[k].first, sp);
            t.b = m.mode(hops[k].second, sp);
            t.nnn = hop_nnn[k];
            t.coeff = t.nnn ? -spec.tp : -spec.t;
            m.terms.push_back(t);
        }
    if (spec.spinful)
        for (int s = 0; s < m.num_sites(); ++s) {
            HubbardTerm t;
            t.kind = HubbardTerm::OnSite;
            t.a = m.mode(s, 0);
            t.b = m.mode(s, 1);
            t.coeff = spec.U;
            m.terms.push_back(t);
        }
    return m;
}

// ---- TrotterCircuit ----

std::vector<FermionTerm> TrotterCircuit::product_formula() const {
    std::vector<FermionTerm> out;
    for (auto &e : ledger) {
        const HubbardTerm &t = terms[e.term];
        FermionTerm f;
        f.kind = t.kind == HubbardTerm::Hop ? TermKind::Hopping : TermKind::DensityDensity;
        f.i = layout[t.a];
        f.j = layout[t.b];
        f.coeff = e.angle;
        out.push_back(f);
    }
    return out;
}

Circuit TrotterCircuit::section(const std::string &name) const {
    Circuit c(circuit.num_qubits());
    if (circuit.shape()) c.bind_shape(*circuit.shape());
    for (auto &[n, r] : sections)
        if (n == name)
            for (int i = r.first; i < r.second; ++i) c.add(circuit.gates()[i]);
    return c;
}

nlohmann::json TrotterCircuit::summary() const {
    nlohmann::json j;
    j["qubits"] = circuit.num_qubits();
    j["encodings"] = {encodings[0].str(), encodings[1].str()};
    j["ledger_entries"] = ledger.size();
    j["resources"] = resource_report(circuit).to_json();
    nlohmann::json s = nlohmann::json::object();
    for (auto &[n, r] : sections) {
        ResourceReport rep = resource_report(section(n));
        s[n] = {{"gates", r.second - r.first}, {"cnots", rep.cnot_count}};
    }
    j["sections"] = s;
    return j;
}

namespace {

// one entry of a periodic block script: chain position residue and operation
// 'h' hop in place, 'f' hop fused with a fermionic swap, 's' fermionic swap only
struct ScriptOp {
    int residue;
    char op;
};

struct Script {
    int period = 2;
    std::vector<std::vector<ScriptOp>> layers;
};

Script block_script(Geometry g, int width) {
    if (width == 1 || g == Geometry::square_nn) return {2, {{{0, 'h'}}, {{1, 'h'}}}};
    switch (g) {
        case Geometry::square_nnn:
            return {4, {{{0, 'h'}, {2, 'h'}}, {{1, 'f'}}, {{0, 'h'}, {2, 'h'}}, {{1, 's'}, {3, 'f'}}, {{0, 'h'}, {2, 'h'}}}};
        default: return {2, {{{0, 'h'}}, {{1, 'h'}}}};
    }
}

struct PGate {
    Gate g;
    int term = -1;  // -1 for movement only
};

// Executes hopping scripts inside the blocks of one boustrophedon encoding.
class PhaseRunner {
  public:
    PhaseRunner(const LatticeShape &shape, const BoustrophedonSpec &spec, const std::vector<int> &qubit_of)
        : shape_(shape), ord_(boustrophedon_ordering(spec, shape)), spec_(spec), qubit_of_(qubit_of) {
        mode_at_.assign(shape.size(), -1);
        for (size_t m = 0; m < qubit_of.size(); ++m) mode_at_[qubit_of[m]] = static_cast<int>(m);
        for (auto &iv : spec.column_partition) {
            std::vector<int> chain;
            for (int r = 0; r < shape.rows(); ++r)
                for (int c = iv.begin; c < iv.end; ++c) chain.push_back(shape.index({r, c}));
            std::sort(chain.begin(), chain.end(), [&](int a, int b) { return ord_.rank(a) < ord_.rank(b); });
            chains_.push_back(chain);
        }
    }

    const CanonicalOrdering &ordering() const { return ord_; }

    // chain index and position of a qubit
    std::pair<int, int> locate(int q) const {
        for (size_t b = 0; b < chains_.size(); ++b)
            for (size_t p = 0; p < chains_[b].size(); ++p)
                if (chains_[b][p] == q) return {static_cast<int>(b), static_cast<int>(p)};
        return {-1, -1};
    }

    void assign(int term, int a, int b) {
        auto key = std::minmax(a, b);
        pending_[key] = term;
    }

    void run(Geometry g) {
        for (size_t b = 0; b < chains_.size(); ++b) {
            const auto &ch = chains_[b];
            BlockSim base = block_sim(ch);
            BlockSim best = base;
            run_script(best, block_script(g, spec_.column_partition[b].width()));
            if (g == Geometry::lieb || g == Geometry::kagome) {
                std::mt19937 rng(977 + static_cast<unsigned>(b));
                for (int k = 0; k < kGreedyAttempts; ++k) {
                    BlockSim t = base;
                    run_greedy(t, rng, k);
                    if (t.ok && t.cost() < best.cost()) best = std::move(t);
                }
            }
            for (auto &op : best.ops) {
                const int q1 = ch[op.p], q2 = ch[op.p + 1];
                emit(q1, q2, pending_term(q1, q2), op.move);
            }
            cleanup(ch);
        }
        if (!pending_.empty()) throw SynthesisError("hopping terms left unscheduled in a phase");
    }

    std::vector<PGate> &gates() { return out_; }
    const std::vector<int> &qubit_of() const { return qubit_of_; }

  private:
    static constexpr int kGreedyAttempts = 96;

    // local replay of one block chain: mode at each position and the pending partners
    struct BlockOp {
        int p;
        bool move;
        bool hop;
    };
    struct BlockSim {
        std::vector<int> at;                        // position -> local mode
        std::vector<int> pos;                       // local mode -> position
        std::vector<std::vector<int>> partners;     // local mode -> pending partners
        std::vector<BlockOp> ops;
        int left = 0;
        bool ok = true;

        bool pending(int u, int v) const {
            return std::find(partners[u].begin(), partners[u].end(), v) != partners[u].end();
        }
        void apply(int p, bool move) {
            int u = at[p], v = at[p + 1];
            bool hop = pending(u, v);
            if (hop) {
                std::erase(partners[u], v);
                std::erase(partners[v], u);
                --left;
            }
            ops.push_back({p, move, hop});
            if (move) {
                std::swap(at[p], at[p + 1]);
                pos[u] = p + 1;
                pos[v] = p;
            }
        }
        // change of the summed pending distances if positions p and p+1 trade modes
        int delta(int p) const {
            int u = at[p], v = at[p + 1], d = 0;
            for (int w : partners[u])
                if (w != v) d += pos[w] > p + 1 ? -1 : 1;
            for (int w : partners[v])
                if (w != u) d += pos[w] < p ? -1 : 1;
            return d;
        }
        // two CNOTs per gate; the last layer is merged with its mirror image
        int cost() const {
            const int n = static_cast<int>(at.size());
            std::vector<char> seen(n, 0);
            int c = 0;
            for (int i = static_cast<int>(ops.size()) - 1; i >= 0; --i) {
                const BlockOp &o = ops[i];
                bool last = !seen[o.p] && !seen[o.p + 1];
                seen[o.p] = seen[o.p + 1] = 1;
                c += last ? (o.hop ? 2 : 0) : 4;
            }
            return c + (ok ? 0 : 1 << 20);
        }
    };

    BlockSim block_sim(const std::vector<int> &ch) const {
        BlockSim s;
        const int n = static_cast<int>(ch.size());
        s.at.resize(n);
        s.pos.resize(n);
        s.partners.assign(n, {});
        std::map<int, int> local;
        for (int p = 0; p < n; ++p) {
            s.at[p] = s.pos[p] = p;
            local[mode_at_[ch[p]]] = p;
        }
        for (auto &[key, term] : pending_) {
            auto a = local.find(key.first), b = local.find(key.second);
            if (a == local.end() || b == local.end()) continue;
            s.partners[a->second].push_back(b->second);
            s.partners[b->second].push_back(a->second);
            ++s.left;
        }
        return s;
    }

    static void run_script(BlockSim &s, const Script &sc) {
        const int n = static_cast<int>(s.at.size());
        for (auto &layer : sc.layers)
            for (auto &op : layer)
                for (int p = op.residue; p + 1 < n; p += sc.period) {
                    bool term = s.pending(s.at[p], s.at[p + 1]);
                    if (op.op == 'h' && term) s.apply(p, false);
                    if (op.op == 'f' || op.op == 's') s.apply(p, true);
                }
        // closest pending pair first, walked together
        while (s.left > 0) {
            int bp = -1, bq = 0;
            for (int p = 0; p < n; ++p)
                for (int w : s.partners[s.at[p]]) {
                    int q = s.pos[w];
                    if (q > p && (bp < 0 || q - p < bq - bp)) bp = p, bq = q;
                }
            for (int p = bp; p + 1 < bq; ++p) s.apply(p, true);
            s.apply(bq - 1, false);
        }
    }

    // odd-even rounds; a pending pair always hops, swapping when that shortens the other pending pairs
    static void run_greedy(BlockSim &s, std::mt19937 &rng, int attempt) {
        const int n = static_cast<int>(s.at.size());
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double p_tie = (attempt % 4) / 3.0, p_one = ((attempt / 4) % 4) / 4.0;
        const int first = (attempt / 16) % 2;
        int idle = 0;
        for (int round = 0; s.left > 0; ++round) {
            if (round > 8 * n + 16) {
                s.ok = false;
                return;
            }
            bool progress = false;
            for (int p = (round + first) % 2; p + 1 < n; p += 2) {
                int d = s.delta(p);
                if (s.pending(s.at[p], s.at[p + 1])) {
                    s.apply(p, d < 0 || (d == 0 && unit(rng) < p_tie));
                    progress = true;
                } else if (d <= -2 || (d == -1 && unit(rng) < p_one) || (idle >= 2 && d < 0)) {
                    s.apply(p, true);
                    progress = true;
                }
            }
            idle = progress ? 0 : idle + 1;
            if (idle >= 4) {
                // stuck: step the closest pending pair together
                int bp = -1, bq = 0;
                for (int p = 0; p < n; ++p)
                    for (int w : s.partners[s.at[p]]) {
                        int q = s.pos[w];
                        if (q > p && (bp < 0 || q - p < bq - bp)) bp = p, bq = q;
                    }
                s.apply(bp, true);
                idle = 0;
            }
        }
    }

    int pending_term(int q1, int q2) const {
        int a = mode_at_[q1], b = mode_at_[q2];
        auto it = pending_.find(std::minmax(a, b));
        return it == pending_.end() ? -1 : it->second;
    }

    void emit(int q1, int q2, int term, bool move) {
        if (std::abs(ord_.rank(q1) - ord_.rank(q2)) != 1) throw ConnectivityError("hop on non rank-adjacent qubits");
        PGate pg;
        pg.term = term;
        if (term >= 0) {
            pending_.erase(std::minmax(mode_at_[q1], mode_at_[q2]));
            pg.g = move ? Gate::fswap_hop(q1, q2, 0.0) : Gate::rot(RotAxis::XXpYY, q1, q2, 0.0);
        } else {
            pg.g = Gate::fswap(q1, q2);
        }
        if (move) {
            std::swap(mode_at_[q1], mode_at_[q2]);
            qubit_of_[mode_at_[q1]] = q1;
            qubit_of_[mode_at_[q2]] = q2;
        }
        out_.push_back(pg);
    }

    // terms left behind at the block boundary: walk one mode next to the other
    void cleanup(const std::vector<int> &ch) {
        const int n = static_cast<int>(ch.size());
        while (true) {
            int best = -1, bp = 0, bq = 0;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q)
                    if (pending_term(ch[p], ch[q]) >= 0 && (best < 0 || q - p < bq - bp)) {
                        best = 1;
                        bp = p;
                        bq = q;
                    }
            if (best < 0) return;
            for (int p = bp; p + 1 < bq; ++p) {
                int term = pending_term(ch[p], ch[p + 1]);
                emit(ch[p], ch[p + 1], term, true);
            }
            emit(ch[bq - 1], ch[bq], pending_term(ch[bq - 1], ch[bq]), false);
        }
    }

    LatticeShape shape_;
    CanonicalOrdering ord_;
    BoustrophedonSpec spec_;
    std::vector<int> qubit_of_;
    std::vector<int> mode_at_;
    std::vector<std::vector<int>> chains_;
    std::map<std::pair<int, int>, int> pending_;
    std::vector<PGate> out_;
};

// gates that are last on both of their qubits
std::vector<char> trailing_layer(const std::vector<PGate> &gs, int n) {
    std::vector<char> touched(n, 0), in(gs.size(), 0);
    for (int i = static_cast<int>(gs.size()) - 1; i >= 0; --i) {
        const Gate &g = gs[i].g;
        if (!touched[g.q0] && !touched[g.q1]) in[i] = 1;
        touched[g.q0] = touched[g.q1] = 1;
    }
    return in;
}

struct Layouts {
    LatticeShape shape;
    BoustrophedonSpec e1, e2;
    std::vector<int> home1, home2;  // mode -> qubit
    std::vector<int> swap_left;
};

std::vector<int> widths_from(int first, int total) {
    std::vector<int> w;
    int used = 0;
    if (first == 1 && total > 0) {
        w.push_back(1);
        used = 1;
    }
    while (used < total) {
        int k = std::min(2, total - used);
        w.push_back(k);
        used += k;
    }
    return w;
}

Layouts make_layouts(const LatticeModel &m) {
    Layouts L;
    L.shape = m.qubit_shape();
    const int cq = L.shape.cols();
    const int n = m.num_modes();
    L.home1.resize(n);
    L.home2.resize(n);
    for (int s = 0; s < m.num_sites(); ++s)
        for (int sp = 0; sp < m.species; ++sp) {
            int r = m.pos[s][0], x = m.pos[s][1];
            int c = m.species == 1 ? x : ((x & 1) ? 2 * x + 1 - sp : 2 * x + sp);
            int c2 = m.species == 1 ? c : (c ^ 1);
            L.home1[m.mode(s, sp)] = L.shape.index({r, c});
            L.home2[m.mode(s, sp)] = L.shape.index({r, c2});
        }
    if (m.species == 2) {
        L.e1 = BoustrophedonSpec::from_widths(widths_from(1, cq));
        L.e2 = L.e1;
        for (int c = 0; c + 1 < cq; c += 2) L.swap_left.push_back(c);
    } else {
        L.e1 = BoustrophedonSpec::from_widths(widths_from(2, cq));
        L.e2 = BoustrophedonSpec::from_widths(widths_from(1, cq));
    }
    return L;
}

int block_of(const BoustrophedonSpec &spec, const LatticeShape &shape, int q) {
    int c = shape.site(q)[1];
    for (size_t b = 0; b < spec.column_partition.size(); ++b)
        if (c >= spec.column_partition[b].begin && c < spec.column_partition[b].end) return static_cast<int>(b);
    return -1;
}

// Schrodinger-picture switch between the two encodings, sign compensated.
Circuit spin_switch(const Layouts &L, int n_modes) {
    Circuit c = column_swap_switch(L.e1, L.e2, L.shape, L.swap_left);
    CanonicalOrdering o1 = boustrophedon_ordering(L.e1, L.shape), o2 = boustrophedon_ordering(L.e2, L.shape);
    std::vector<PauliString> from, to;
    for (int m = 0; m < n_modes; ++m) {
        auto d = majorana_pair_index(L.home2[m], o2);
        auto s = majorana_pair_index(L.home1[m], o1);
        from.push_back(d.even_string);
        from.push_back(d.odd_string);
        to.push_back(s.even_string);
        to.push_back(s.odd_string);
    }
    Circuit w = majorana_compensation(c, from, to);
    w.bind_shape(L.shape);
    w.append(c);
    return w;
}

class Assembler {
  public:
    Assembler(TrotterCircuit &tc, double tau) : tc_(tc), tau_(tau) {}

    void begin(const std::string &name) { start_ = static_cast<int>(tc_.circuit.gates().size()), name_ = name; }
    void end() { tc_.sections.push_back({name_, {start_, static_cast<int>(tc_.circuit.gates().size())}}); }

    void hop_gate(const PGate &pg, double scale, int half) {
        if (pg.term < 0) {
            tc_.circuit.add(pg.g);
            return;
        }
        Gate g = pg.g;
        double angle = tc_.terms[pg.term].coeff * tau_ * scale;
        g.angle = angle;
        record(pg.term, angle, half);
        tc_.circuit.add(g);
    }

    // a gate applied twice in a row: the swap cancels and the rotation doubles
    void merged_gate(const PGate &pg) {
        if (pg.term < 0) return;
        double angle = tc_.terms[pg.term].coeff * tau_ * 2.0;
        record(pg.term, angle, 2);
        tc_.circuit.add(Gate::rot(RotAxis::XXpYY, pg.g.q0, pg.g.q1, angle));
    }

    void onsite(int term, int qa, int qb, int half) {
        double angle = tc_.terms[term].coeff * tau_;
        record(term, angle, half);
        tc_.circuit.add(Gate::cphase(qa, qb, -angle));
    }

    void raw(const Circuit &c) { tc_.circuit.append(c); }

  private:
    void record(int term, double angle, int half) {
        LedgerEntry e;
        e.term = term;
        e.angle = angle;
        e.half = half;
        e.gates.push_back(static_cast<int>(tc_.circuit.gates().size()));
        tc_.ledger.push_back(e);
    }

    TrotterCircuit &tc_;
    double tau_;
    int start_ = 0;
    std::string name_;
};

struct Phases {
    std::vector<PGate> g1, g2;
    std::vector<int> end1;  // layout after the first phase script
};

Phases run_phases(const LatticeModel &m, const Layouts &L) {
    PhaseRunner p1(L.shape, L.e1, L.home1), p2(L.shape, L.e2, L.home2);
    for (size_t k = 0; k < m.terms.size(); ++k) {
        const HubbardTerm &t = m.terms[k];
        if (t.kind != HubbardTerm::Hop) continue;
        int best = -1, bestd = 0;
        PhaseRunner *pr[2] = {&p1, &p2};
        const std::vector<int> *home[2] = {&L.home1, &L.home2};
        const BoustrophedonSpec *spec[2] = {&L.e1, &L.e2};
        for (int e = 0; e < 2; ++e) {
            int qa = (*home[e])[t.a], qb = (*home[e])[t.b];
            if (block_of(*spec[e], L.shape, qa) != block_of(*spec[e], L.shape, qb)) continue;
            int d = std::abs(pr[e]->ordering().rank(qa) - pr[e]->ordering().rank(qb));
            if (best < 0 || d < bestd) {
                best = e;
                bestd = d;
            }
        }
        if (best < 0) throw SynthesisError("hopping term is local in neither encoding");
        pr[best]->assign(static_cast<int>(k), t.a, t.b);
    }
    p1.run(m.spec.geometry);
    p2.run(m.spec.geometry);
    return {p1.gates(), p2.gates(), p1.qubit_of()};
}

}  // namespace

TrotterCircuit build_trotter_step(const HubbardSpec &spec) {
    LatticeModel m = lattice_model(spec);
    Layouts L = make_layouts(m);
    const int n = m.num_modes();
    Phases ph = run_phases(m, L);
    auto in1 = trailing_layer(ph.g1, n), in2 = trailing_layer(ph.g2, n);
    std::vector<PGate> rest1, last1, rest2, last2;
    for (size_t i = 0; i < ph.g1.size(); ++i) (in1[i] ? last1 : rest1).push_back(ph.g1[i]);
    for (size_t i = 0; i < ph.g2.size(); ++i) (in2[i] ? last2 : rest2).push_back(ph.g2[i]);

    // layout where the step starts: home, then every first-phase gate except the merged layer
    std::vector<int> start = L.home1;
    {
        std::vector<int> at(n);
        for (int md = 0; md < n; ++md) at[start[md]] = md;
        for (auto &pg : rest1)
            if (pg.g.kind == GateKind::FSWAP || pg.g.kind == GateKind::FswapHop) {
                std::swap(at[pg.g.q0], at[pg.g.q1]);
                start[at[pg.g.q0]] = pg.g.q0;
                start[at[pg.g.q1]] = pg.g.q1;
            }
    }

    TrotterCircuit tc;
    tc.terms = m.terms;
    tc.encodings = {L.e1, L.e2};
    tc.reference = boustrophedon_ordering(L.e1, L.shape);
    tc.layout = start;
    tc.circuit = Circuit(n, L.shape);
    Assembler as(tc, spec.dt / 2.0);

    std::vector<int> onsite_terms;
    for (size_t k = 0; k < m.terms.size(); ++k)
        if (m.terms[k].kind == HubbardTerm::OnSite) onsite_terms.push_back(static_cast<int>(k));
    Circuit w = spin_switch(L, n);

    as.begin("hop_merged_1");
    for (auto &pg : last1) as.merged_gate(pg);
    as.end();
    as.begin("hop_1a");
    for (auto it = rest1.rbegin(); it != rest1.rend(); ++it) as.hop_gate(*it, 1.0, 0);
    as.end();
    as.begin("onsite_1");
    for (int k : onsite_terms) as.onsite(k, L.home1[m.terms[k].a], L.home1[m.terms[k].b], 0);
    as.end();
    as.begin("switch_1");
    as.raw(w);
    as.end();
    as.begin("hop_2a");
    for (auto &pg : rest2) as.hop_gate(pg, 1.0, 0);
    as.end();
    as.begin("hop_merged_2");
    for (auto &pg : last2) as.merged_gate(pg);
    as.end();
    as.begin("hop_2b");
    for (auto it = rest2.rbegin(); it != rest2.rend(); ++it) as.hop_gate(*it, 1.0, 1);
    as.end();
    as.begin("switch_2");
    as.raw(w.inverse());
    as.end();
    as.begin("onsite_2");
    for (auto it = onsite_terms.rbegin(); it != onsite_terms.rend(); ++it)
        as.onsite(*it, L.home1[m.terms[*it].a], L.home1[m.terms[*it].b], 1);
    as.end();
    as.begin("hop_1b");
    for (auto &pg : rest1) as.hop_gate(pg, 1.0, 1);
    as.end();
    return tc;
}

std::map<std::string, ResourceReport> component_costs(const HubbardSpec &spec) {
    TrotterCircuit tc = build_trotter_step(spec);
    std::map<std::string, ResourceReport> out;
    out["switch"] = resource_report(tc.section("switch_1"));
    out["onsite"] = resource_report(tc.section("onsite_1"));
    // every hopping term once: both phases forward with their last layers
    Circuit hop(tc.circuit.num_qubits(), *tc.circuit.shape());
    for (const char *s : {"hop_1a", "hop_merged_1", "hop_2a", "hop_merged_2"}) hop.append(tc.section(s));
    out["hopping"] = resource_report(hop);
    out["step"] = resource_report(tc.circuit);
    return out;
}

std::map<std::string, int> depth_audit(const HubbardSpec &spec) {
    TrotterCircuit tc = build_trotter_step(spec);
    DepthOptions two{true, false};
    std::map<std::string, int> out;
    out["nn_lattice"] = depth(tc.circuit, DepthModel::nn_lattice, two);
    out["all_to_all"] = depth(tc.circuit, DepthModel::all_to_all, two);
    out["lattice_surgery"] = depth(tc.circuit, DepthModel::lattice_surgery, two);
    out["switch_nn_lattice"] = depth(tc.section("switch_1"), DepthModel::nn_lattice, two);
    out["switch_lattice_surgery"] = depth(tc.section("switch_1"), DepthModel::lattice_surgery, two);
    return out;
}

std::string check_ledger_complete(const TrotterCircuit &tc, const LatticeModel &model) {
    if (tc.terms.size() != model.terms.size()) return "term list differs from the geometry";
    for (size_t k = 0; k < model.terms.size(); ++k)
        if (!(tc.terms[k] == model.terms[k])) return "term " + std::to_string(k) + " differs from the geometry";
    std::vector<int> halves(model.terms.size(), 0), merged(model.terms.size(), 0);
    for (auto &e : tc.ledger) {
        if (e.term < 0 || e.term >= static_cast<int>(model.terms.size())) return "ledger term out of range";
        if (e.gates.empty()) return "ledger entry without gates";
        (e.half == 2 ? merged : halves)[e.term]++;
    }
    for (size_t k = 0; k < model.terms.size(); ++k) {
        bool ok = (halves[k] == 2 && merged[k] == 0) || (halves[k] == 0 && merged[k] == 1);
        if (!ok) return "term " + std::to_string(k) + " appears " + std::to_string(halves[k]) + "+" +
                        std::to_string(merged[k]) + " times";
    }
    return "";
}

std::string check_mirror_symmetry(const TrotterCircuit &tc) {
    std::vector<int> first, second;
    for (auto &e : tc.ledger) {
        if (e.half == 0) first.push_back(e.term);
        if (e.half == 1) second.push_back(e.term);
    }
    std::reverse(second.begin(), second.end());
    if (first != second) return "second half is not the reverse of the first";
    return "";
}

// ---- FSN baselines ----

TrotterCircuit fsn_baseline(const HubbardSpec &spec, FsnVariant variant) {
    if (spec.geometry != Geometry::square_nn) throw SpecError("FSN baselines are defined for square_nn only");
    LatticeModel m = lattice_model(spec);
    const int L = spec.nx(), Ly = spec.ny();
    const int n = m.num_modes();
    // a virtual grid whose S pattern is the physical line; columns move via odd-even FSWAP layers
    const bool ladder = variant == FsnVariant::ladder && m.species == 2;
    const int vrows = Ly, vcols = ladder ? L : m.species * L;
    const int rails = ladder ? 2 : 1;
    const int rail_len = vrows * vcols;
    LatticeShape shape = ladder ? LatticeShape({2, rail_len}) : LatticeShape({1, n});
    // physical qubit of virtual cell (rail, r, c)
    auto phys = [&](int rail, int r, int c) { return shape.index({rail, r * vcols + rho(r, c, vcols)}); };
    std::vector<int> qubit_of(n);
    for (int s = 0; s < m.num_sites(); ++s)
        for (int sp = 0; sp < m.species; ++sp) {
            int r = m.pos[s][0], x = m.pos[s][1];
            int md = m.mode(s, sp);
            qubit_of[md] = ladder ? phys(sp, r, x) : phys(0, r, m.species * x + sp);
        }
    CanonicalOrdering ord = s_pattern(shape);
    std::vector<int> mode_at(n);
    for (int md = 0; md < n; ++md) mode_at[qubit_of[md]] = md;
    std::map<std::pair<int, int>, int> pending;
    for (size_t k = 0; k < m.terms.size(); ++k)
        if (m.terms[k].kind == HubbardTerm::Hop) pending[std::minmax(m.terms[k].a, m.terms[k].b)] = static_cast<int>(k);
    std::vector<PGate> sweep;
    auto term_at = [&](int q1, int q2) {
        auto it = pending.find(std::minmax(mode_at[q1], mode_at[q2]));
        return it == pending.end() ? -1 : it->second;
    };
    auto emit = [&](int q1, int q2, bool move) {
        if (std::abs(ord.rank(q1) - ord.rank(q2)) != 1) throw ConnectivityError("FSN gate on non rank-adjacent qubits");
        int term = term_at(q1, q2);
        PGate pg;
        pg.term = term;
        if (term >= 0) pending.erase(std::minmax(mode_at[q1], mode_at[q2]));
        if (move) {
            pg.g = term >= 0 ? Gate::fswap_hop(q1, q2, 0.0) : Gate::fswap(q1, q2);
            std::swap(mode_at[q1], mode_at[q2]);
        } else {
            if (term < 0) return;
            pg.g = Gate::rot(RotAxis::XXpYY, q1, q2, 0.0);
        }
        sweep.push_back(pg);
    };
    // vertical hops at the turning columns of the snake
    auto edge_hops = [&]() {
        for (int rail = 0; rail < rails; ++rail)
            for (int r = 0; r + 1 < vrows; ++r) {
                int c = (r & 1) ? 0 : vcols - 1;
                emit(phys(rail, r, c), phys(rail, r + 1, c), false);
            }
        // in-row neighbours that are already adjacent
        for (int rail = 0; rail < rails; ++rail)
            for (int r = 0; r < vrows; ++r)
                for (int c = 0; c + 1 < vcols; ++c) emit(phys(rail, r, c), phys(rail, r, c + 1), false);
    };
    edge_hops();
    int layer = 0, guard = 0;
    while (!pending.empty()) {
        if (++guard > 4 * vcols + 8) throw SynthesisError("FSN sweep did not cover all hopping terms");
        for (int rail = 0; rail < rails; ++rail)
            for (int c = layer & 1; c + 1 < vcols; c += 2)
                for (int r = 0; r < vrows; ++r) emit(phys(rail, r, c), phys(rail, r, c + 1), true);
        ++layer;
        edge_hops();
    }
    auto in = trailing_layer(sweep, n);
    std::vector<PGate> rest, last;
    for (size_t i = 0; i < sweep.size(); ++i) (in[i] ? last : rest).push_back(sweep[i]);

    TrotterCircuit tc;
    tc.terms = m.terms;
    BoustrophedonSpec full = BoustrophedonSpec::from_widths({shape.cols()});
    tc.encodings = {full, full};
    tc.reference = ord;
    tc.layout = qubit_of;
    tc.circuit = Circuit(n, shape);
    Assembler as(tc, spec.dt / 2.0);
    as.begin("onsite_merged");
    for (size_t k = 0; k < m.terms.size(); ++k)
        if (m.terms[k].kind == HubbardTerm::OnSite) {
            // both half-step on-site layers of neighbouring steps fused
            LedgerEntry e;
            double angle = m.terms[k].coeff * spec.dt;
            e.term = static_cast<int>(k);
            e.angle = angle;
            e.half = 2;
            e.gates.push_back(static_cast<int>(tc.circuit.gates().size()));
            tc.ledger.push_back(e);
            tc.circuit.add(Gate::cphase(qubit_of[m.terms[k].a], qubit_of[m.terms[k].b], -angle));
        }
    as.end();
    as.begin("sweep_a");
    for (auto &pg : rest) as.hop_gate(pg, 1.0, 0);
    as.end();
    as.begin("sweep_merged");
    for (auto &pg : last) as.merged_gate(pg);
    as.end();
    as.begin("sweep_b");
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) as.hop_gate(*it, 1.0, 1);
    as.end();
    return tc;
}

}  // namespace djw
