// SPDX-License-Identifier: MIT
#include "djw/switch.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

#include "djw/errors.hpp"
#include "djw/gate_matrix.hpp"
#include "djw/oracles.hpp"

namespace djw {

namespace {

using Chain = std::vector<std::pair<int, int>>;  // CNOT (control, target) in time order
using Frame = std::vector<Chain>;

struct Piece {
    Frame frame;
    std::vector<std::vector<int>> units;
    std::vector<std::pair<int, int>> products;  // unit index pairs
};

using Stage = std::vector<Piece>;

void inversion_products(const std::vector<int> &o1, const std::vector<int> &o2, std::vector<std::pair<int, int>> &out) {
    const int n = static_cast<int>(o1.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((o1[u] < o1[v]) != (o2[u] < o2[v])) out.emplace_back(u, v);
}

// CZ layer of a piece in its frame: quadratic part of Q(V^{-1} y).
std::vector<std::pair<int, int>> frame_cz_layer(const LatticeShape &shape, const Piece &pc) {
    const int n = shape.size();
    ParityFlowState inv(n);
    for (auto it = pc.frame.rbegin(); it != pc.frame.rend(); ++it)
        for (auto g = it->rbegin(); g != it->rend(); ++g) inv.apply_cnot(g->first, g->second);
    std::vector<BitVec> t(pc.units.size(), BitVec(n));
    for (size_t u = 0; u < pc.units.size(); ++u)
        for (int q : pc.units[u]) t[u] ^= inv.z_label(q);
    PhasePolynomial p(n);
    for (auto &[u, v] : pc.products) p.add_product(t[u], t[v]);
    auto d = p.quadratic_terms();
    for (auto &[a, b] : d)
        if (shape.distance_l1(a, b) != 1)
            throw SynthesisError("frame CZ layer is not nearest-neighbour (" + std::to_string(a) + "," +
                                 std::to_string(b) + ")");
    return d;
}

// edge colour: axis of the edge and parity of its lower coordinate
void sort_by_colour(const LatticeShape &shape, std::vector<std::pair<int, int>> &edges) {
    auto colour = [&](const std::pair<int, int> &e) {
        Site a = shape.site(e.first), b = shape.site(e.second);
        for (int ax = 0; ax < shape.dims(); ++ax)
            if (a[ax] != b[ax]) return 2 * ax + (std::min(a[ax], b[ax]) & 1);
        return 0;
    };
    std::stable_sort(edges.begin(), edges.end(), [&](auto &x, auto &y) { return colour(x) < colour(y); });
}

class Builder {
  public:
    explicit Builder(const LatticeShape &shape) : shape_(shape), c_(shape.size(), shape) {}

    void emit(const Stage &st) {
        if (st.empty()) return;
        std::vector<std::pair<int, int>> cz;
        for (auto &pc : st) {
            auto d = frame_cz_layer(shape_, pc);
            cz.insert(cz.end(), d.begin(), d.end());
        }
        for (auto &pc : st)
            for (auto &ch : pc.frame) add_chain(ch, false);
        sort_by_colour(shape_, cz);
        for (auto &[a, b] : cz) c_.add(Gate::cz(a, b));
        for (auto it = st.rbegin(); it != st.rend(); ++it)
            for (auto ch = it->frame.rbegin(); ch != it->frame.rend(); ++ch) add_chain(*ch, true);
    }

    void add_frame(const Frame &f, bool inverse) {
        if (!inverse)
            for (auto &ch : f) add_chain(ch, false);
        else
            for (auto it = f.rbegin(); it != f.rend(); ++it) add_chain(*it, true);
    }

    Circuit &circuit() { return c_; }

  private:
    void add_chain(const Chain &ch, bool inverse) {
        if (ch.empty()) return;
        int id = c_.new_ladder_id();
        if (!inverse)
            for (auto &[a, b] : ch) c_.add(Gate::cnot(a, b, id));
        else
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) c_.add(Gate::cnot(it->first, it->second, id));
    }

    LatticeShape shape_;
    Circuit c_;
};

// Grid of units; oriented so that the source order is the standard S pattern.
struct Plane {
    int A = 0, B = 0;  // rows, cols
    std::vector<std::vector<int>> units;  // a * B + b
    std::vector<int> face;
    Frame compress;

    int at(int a, int b) const { return face[a * B + b]; }
};

std::vector<int> order_s(int A, int B) {
    std::vector<int> o(A * B);
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) o[a * B + b] = B * a + rho(a, b, B);
    return o;
}
std::vector<int> order_z(int A, int B) {
    std::vector<int> o(A * B);
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) o[a * B + b] = A * b + (A - 1 - a);
    return o;
}
std::vector<int> order_st(int A, int B) {
    std::vector<int> o(A * B);
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) o[a * B + b] = A * b + rho(b, a, A);
    return o;
}

Frame column_ladders(const Plane &p) {
    Frame f;
    for (int b = 0; b < p.B; ++b) {
        Chain ch;
        for (int a = p.A - 2; a >= 0; --a) ch.emplace_back(p.at(a + 1, b), p.at(a, b));
        f.push_back(ch);
    }
    return f;
}

Frame even_row_ladders(const Plane &p) {
    Frame f;
    for (int a = 0; a < p.A; a += 2) {
        Chain ch;
        for (int b = p.B - 2; b >= 0; --b) ch.emplace_back(p.at(a, b + 1), p.at(a, b));
        f.push_back(ch);
    }
    return f;
}

Piece make_piece(const Plane &p, const Frame &f, const std::vector<int> &o1, const std::vector<int> &o2) {
    Piece pc;
    pc.frame = p.compress;
    pc.frame.insert(pc.frame.end(), f.begin(), f.end());
    pc.units = p.units;
    inversion_products(o1, o2, pc.products);
    return pc;
}

Piece piece_s_to_z(const Plane &p) {
    Frame f = column_ladders(p);
    Frame r = even_row_ladders(p);
    f.insert(f.end(), r.begin(), r.end());
    return make_piece(p, f, order_s(p.A, p.B), order_z(p.A, p.B));
}

Piece piece_z_to_st(const Plane &p) {
    return make_piece(p, column_ladders(p), order_z(p.A, p.B), order_st(p.A, p.B));
}

Plane single_qubit_plane(const LatticeShape &shape, int r0, int c0, int A, int B) {
    Plane p;
    p.A = A;
    p.B = B;
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) {
            int q = shape.index({r0 + a, c0 + b});
            p.units.push_back({q});
            p.face.push_back(q);
        }
    return p;
}

// ---- hierarchical boxes ----

std::vector<int> box_weights(const HBox &h) {
    std::vector<int> w(h.sigma.size() + 1, 1);
    for (size_t i = 0; i < h.sigma.size(); ++i) w[i + 1] = w[i] * h.len[h.sigma[i]];
    return w;
}

void for_each_local(const std::vector<int> &len, const std::function<void(const std::vector<int> &)> &f) {
    int d = static_cast<int>(len.size());
    std::vector<int> x(d, 0);
    int total = 1;
    for (int l : len) total *= l;
    for (int k = 0; k < total; ++k) {
        int r = k;
        for (int a = d - 1; a >= 0; --a) {
            x[a] = r % len[a];
            r /= len[a];
        }
        f(x);
    }
}

int global_index(const LatticeShape &shape, const HBox &h, const std::vector<int> &local) {
    Site s(local.size());
    for (size_t a = 0; a < local.size(); ++a) s[a] = h.origin[a] + local[a];
    return shape.index(s);
}

// Units: sub-boxes spanned by levels below k, keyed by their coordinates on the remaining axes.
struct UnitGrid {
    std::vector<std::vector<int>> qubits;
    std::vector<int> face;
    Frame compress;
};

// unit of a box at level k containing the local point x (coords below k ignored)
UnitGrid make_unit(const LatticeShape &shape, const HBox &h, int k, std::vector<int> x) {
    UnitGrid u;
    std::vector<int> sub_len(h.len.size(), 1);
    for (int i = 0; i < k; ++i) sub_len[h.sigma[i]] = h.len[h.sigma[i]];
    std::vector<int> qs;
    for_each_local(sub_len, [&](const std::vector<int> &y) {
        std::vector<int> z = x;
        for (int i = 0; i < k; ++i) z[h.sigma[i]] = y[h.sigma[i]];
        qs.push_back(global_index(shape, h, z));
    });
    u.qubits.push_back(qs);
    // ladders along levels 0..k-1; level i runs at lower levels' far end
    for (int i = 0; i < k; ++i) {
        int ax = h.sigma[i];
        std::vector<int> rest_len(h.len.size(), 1);
        for (int j = i + 1; j < k; ++j) rest_len[h.sigma[j]] = h.len[h.sigma[j]];
        for_each_local(rest_len, [&](const std::vector<int> &y) {
            std::vector<int> z = x;
            for (int j = 0; j < i; ++j) z[h.sigma[j]] = h.len[h.sigma[j]] - 1;
            for (int j = i + 1; j < k; ++j) z[h.sigma[j]] = y[h.sigma[j]];
            Chain ch;
            for (int t = 0; t + 1 < h.len[ax]; ++t) {
                std::vector<int> z0 = z, z1 = z;
                z0[ax] = t;
                z1[ax] = t + 1;
                ch.emplace_back(global_index(shape, h, z0), global_index(shape, h, z1));
            }
            if (!ch.empty()) u.compress.push_back(ch);
        });
    }
    std::vector<int> f = x;
    for (int i = 0; i < k; ++i) f[h.sigma[i]] = h.len[h.sigma[i]] - 1;
    u.face.push_back(global_index(shape, h, f));
    return u;
}

std::vector<int> relative(const std::vector<int> &v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::vector<int> r(v.size());
    for (size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<int>(i);
    return r;
}

// Planes of a level-k transposition, oriented per plane.
std::vector<Plane> transposition_planes(const LatticeShape &shape, const HBox &h, const HBox &hp, int k) {
    const int d = static_cast<int>(h.len.size());
    const int ax_b = h.sigma[k], ax_a = h.sigma[k + 1];
    const int A = h.len[ax_a], B = h.len[ax_b];
    auto W = box_weights(h);
    std::vector<int> high_len(d, 1);
    for (int i = k + 2; i < d; ++i) high_len[h.sigma[i]] = h.len[h.sigma[i]];
    std::vector<Plane> planes;
    for_each_local(high_len, [&](const std::vector<int> &hx) {
        std::vector<UnitGrid> grid(A * B);
        std::vector<int> src(A * B), dst(A * B);
        for (int a = 0; a < A; ++a)
            for (int b = 0; b < B; ++b) {
                std::vector<int> x = hx;
                x[ax_a] = a;
                x[ax_b] = b;
                for (int i = 0; i < k; ++i) x[h.sigma[i]] = 0;
                grid[a * B + b] = make_unit(shape, h, k, x);
                src[a * B + b] = h.rank(x) / W[k];
                dst[a * B + b] = hp.rank(x) / W[k];
            }
        src = relative(src);
        dst = relative(dst);
        auto S = order_s(A, B), ST = order_st(A, B);
        bool found = false;
        for (int mode = 0; mode < 8 && !found; ++mode) {
            bool fa = mode & 1, fb = mode & 2, rev = mode & 4;
            bool ok = true;
            for (int a = 0; a < A && ok; ++a)
                for (int b = 0; b < B && ok; ++b) {
                    int ao = fa ? A - 1 - a : a, bo = fb ? B - 1 - b : b;
                    int s = S[ao * B + bo], t = ST[ao * B + bo];
                    if (rev) {
                        s = A * B - 1 - s;
                        t = A * B - 1 - t;
                    }
                    ok = src[a * B + b] == s && dst[a * B + b] == t;
                }
            if (!ok) continue;
            found = true;
            Plane p;
            p.A = A;
            p.B = B;
            p.units.resize(A * B);
            p.face.resize(A * B);
            for (int a = 0; a < A; ++a)
                for (int b = 0; b < B; ++b) {
                    int ao = fa ? A - 1 - a : a, bo = fb ? B - 1 - b : b;
                    auto &u = grid[a * B + b];
                    p.units[ao * B + bo] = u.qubits[0];
                    p.face[ao * B + bo] = u.face[0];
                    p.compress.insert(p.compress.end(), u.compress.begin(), u.compress.end());
                }
            planes.push_back(std::move(p));
        }
        if (!found) throw SynthesisError("transposition plane has no consistent orientation");
    });
    return planes;
}

HBox swapped(const HBox &h, int k) {
    HBox hp = h;
    std::swap(hp.sigma[k], hp.sigma[k + 1]);
    return hp;
}

// Two stages realising m_S^sigma -> m_S^sigma' (levels k, k+1 swapped) on each box.
std::pair<Stage, Stage> transposition_stages(const LatticeShape &shape, const std::vector<HBox> &boxes, int k) {
    Stage s1, s2;
    for (auto &h : boxes) {
        for (auto &p : transposition_planes(shape, h, swapped(h, k), k)) {
            if (p.A * p.B <= 1) continue;
            s1.push_back(piece_s_to_z(p));
            s2.push_back(piece_z_to_st(p));
        }
    }
    return {s1, s2};
}

// Reverses the order of level-i units along every level-i line of the box.
Piece reverse_level_piece(const LatticeShape &shape, const HBox &h, int i) {
    const int d = static_cast<int>(h.len.size());
    const int ax = h.sigma[i];
    std::vector<int> high_len(d, 1);
    for (int j = i + 1; j < d; ++j) high_len[h.sigma[j]] = h.len[h.sigma[j]];
    Piece pc;
    for_each_local(high_len, [&](const std::vector<int> &hx) {
        int n = h.len[ax];
        int base = static_cast<int>(pc.units.size());
        std::vector<int> face;
        for (int t = 0; t < n; ++t) {
            std::vector<int> x = hx;
            x[ax] = t;
            auto u = make_unit(shape, h, i, x);
            pc.units.push_back(u.qubits[0]);
            face.push_back(u.face[0]);
            pc.frame.insert(pc.frame.end(), u.compress.begin(), u.compress.end());
        }
        Chain ch;
        for (int t = n - 2; t >= 0; --t) ch.emplace_back(face[t + 1], face[t]);
        if (!ch.empty()) pc.frame.push_back(ch);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pc.products.emplace_back(base + u, base + v);
    });
    return pc;
}

// Stages toggling the reflection of the axis at level j.
std::vector<Stage> toggle_flip_stages(const LatticeShape &shape, HBox &h, int j) {
    std::vector<Stage> out;
    out.push_back({reverse_level_piece(shape, h, j)});
    if (h.len[h.sigma[j]] % 2 == 0)
        for (int i = j - 1; i >= 0; --i) out.push_back({reverse_level_piece(shape, h, i)});
    h.flip[h.sigma[j]] ^= 1;
    return out;
}

// Stages bringing box h to reflections g (same hierarchy).
std::vector<Stage> conform_stages(const LatticeShape &shape, HBox &h, const std::vector<int> &g) {
    std::vector<Stage> out;
    const int d = static_cast<int>(h.sigma.size());
    for (int j = d - 1; j >= 0; --j) {
        int ax = h.sigma[j];
        if (h.len[ax] <= 1) {
            h.flip[ax] = g[ax];
            continue;
        }
        if (h.flip[ax] != g[ax]) {
            auto st = toggle_flip_stages(shape, h, j);
            out.insert(out.end(), st.begin(), st.end());
        }
    }
    return out;
}

int conform_cost(const HBox &h, const std::vector<int> &g) {
    int cost = 0;
    HBox t = h;
    for (int j = static_cast<int>(t.sigma.size()) - 1; j >= 0; --j) {
        int ax = t.sigma[j];
        if (t.len[ax] > 1 && t.flip[ax] != g[ax]) {
            cost += (t.len[ax] % 2 == 0) ? j + 1 : 1;
            t.flip[ax] ^= 1;
        }
    }
    return cost;
}

void merge_into(std::vector<Stage> &dst, const std::vector<Stage> &src) {
    if (dst.size() < src.size()) dst.resize(src.size());
    for (size_t i = 0; i < src.size(); ++i) dst[i].insert(dst[i].end(), src[i].begin(), src[i].end());
}

void write_box(const LatticeShape &shape, const HBox &h, int base, std::vector<int> &ranks) {
    for_each_local(h.len, [&](const std::vector<int> &x) { ranks[global_index(shape, h, x)] = base + h.rank(x); });
}

int box_base(const LatticeShape &shape, const HBox &h, const std::vector<int> &ranks) {
    int base = INT32_MAX;
    for_each_local(h.len, [&](const std::vector<int> &x) { base = std::min(base, ranks[global_index(shape, h, x)]); });
    return base;
}

SwitchPlan finalize(const LatticeShape &shape, Circuit circ, const CanonicalOrdering &src, const CanonicalOrdering &dst) {
    cancel_adjacent_inverses(circ);
    SwitchPlan plan;
    plan.source = src;
    plan.target = dst;
    PhasePolynomial pp = phase_polynomial(circ);
    PhasePolynomial want = inversion_form(src, dst);
    PhasePolynomial q = pp;
    q.add_linear(pp.linear());
    if (!(q == want)) throw SynthesisError("switch circuit does not realise the inversion form");
    plan.z_correction = pp.linear().ones();
    plan.circuit = std::move(circ);
    plan.circuit.bind_shape(shape);
    plan.compensation = Circuit(shape.size(), shape);
    return plan;
}

}  // namespace

// ---- HBox ----

int HBox::size() const {
    int s = 1;
    for (int l : len) s *= l;
    return s;
}

int HBox::rank(const std::vector<int> &local) const {
    const int d = static_cast<int>(sigma.size());
    std::vector<int> x(d);
    for (int a = 0; a < d; ++a) x[a] = flip[a] ? len[a] - 1 - local[a] : local[a];
    int m = 0, w = 1, s = 0;
    std::vector<int> suffix(d + 1, 0);
    for (int i = d - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + x[sigma[i]];
    for (int i = 0; i < d; ++i) {
        int ax = sigma[i];
        m += w * rho(suffix[i + 1], x[ax], len[ax]);
        w *= len[ax];
    }
    (void)s;
    return m;
}

std::vector<int> HBox::qubits(const LatticeShape &shape) const {
    std::vector<int> out;
    for_each_local(len, [&](const std::vector<int> &x) { out.push_back(global_index(shape, *this, x)); });
    return out;
}

bool detect_hbox(const CanonicalOrdering &m, HBox &box) {
    const auto &shape = m.shape();
    const int d = shape.dims();
    std::vector<std::vector<int>> locals;
    std::vector<int> ranks;
    for_each_local(box.len, [&](const std::vector<int> &x) {
        locals.push_back(x);
        ranks.push_back(m.rank(global_index(shape, box, x)));
    });
    auto rel = relative(ranks);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<std::vector<int>> perms;
    std::sort(perm.begin(), perm.end());
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    // prefer the standard hierarchy (last axis lowest) and no reflections
    std::stable_sort(perms.begin(), perms.end(), [&](auto &a, auto &b) {
        auto std_h = DimHierarchy::standard(d).order;
        return (a == std_h) > (b == std_h);
    });
    for (auto &sg : perms)
        for (int mask = 0; mask < (1 << d); ++mask) {
            HBox h = box;
            h.sigma = sg;
            h.flip.assign(d, 0);
            for (int a = 0; a < d; ++a) h.flip[a] = (mask >> a) & 1;
            bool ok = true;
            for (size_t i = 0; i < locals.size() && ok; ++i) ok = h.rank(locals[i]) == rel[i];
            if (ok) {
                box = h;
                return true;
            }
        }
    return false;
}

// ---- plan helpers ----

Circuit SwitchPlan::full_circuit() const {
    Circuit c = circuit;
    for (int q : z_correction) c.add(Gate::one(GateKind::Z, q));
    return c;
}

Circuit SwitchPlan::compensated_circuit() const {
    Circuit c = compensation;
    c.bind_shape(*circuit.shape());
    c.append(full_circuit());
    return c;
}

nlohmann::json SwitchPlan::manifest() const {
    nlohmann::json j;
    j["source"] = source.to_json();
    j["target"] = target.to_json();
    j["z_correction"] = z_correction;
    nlohmann::json audit = nlohmann::json::object();
    for (auto &[k, v] : sign_audit) audit[std::to_string(k)] = v;
    j["sign_audit"] = audit;
    std::vector<std::string> comp;
    for (auto &g : compensation.gates()) comp.push_back(kind_name(g.kind) + " " + std::to_string(g.q0));
    j["compensation"] = comp;
    auto rep = resource_report(circuit);
    j["resources"] = rep.to_json();
    j["cnot_count_with_corrections"] = resource_report(full_circuit()).cnot_count;
    return j;
}

int cancel_adjacent_inverses(Circuit &c) {
    auto &gs = c.gates();
    const int n = c.num_qubits();
    std::vector<char> dead(gs.size(), 0);
    std::vector<std::vector<int>> hist(n);  // live gate indices per qubit
    auto diagonal = [](const Gate &g) {
        return g.kind == GateKind::CZ || g.kind == GateKind::Z || g.kind == GateKind::RZ || g.kind == GateKind::CPhase ||
               g.kind == GateKind::S || g.kind == GateKind::Sdg;
    };
    auto self_inverse = [](const Gate &g) {
        switch (g.kind) {
            case GateKind::CNOT:
            case GateKind::CZ:
            case GateKind::SWAP:
            case GateKind::H:
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z: return true;
            default: return false;
        }
    };
    auto same = [](const Gate &a, const Gate &b) {
        if (a.kind != b.kind) return false;
        if (a.kind == GateKind::CZ || a.kind == GateKind::SWAP)
            return (a.q0 == b.q0 && a.q1 == b.q1) || (a.q0 == b.q1 && a.q1 == b.q0);
        return a.q0 == b.q0 && a.q1 == b.q1;
    };
    auto live_back = [&](int q) {
        while (!hist[q].empty() && dead[hist[q].back()]) hist[q].pop_back();
    };
    int removed = 0;
    for (size_t i = 0; i < gs.size(); ++i) {
        const Gate &g = gs[i];
        int match = -1;
        if (self_inverse(g)) {
            if (!diagonal(g)) {
                live_back(g.q0);
                if (!hist[g.q0].empty()) {
                    int j = hist[g.q0].back();
                    if (same(gs[j], g)) {
                        bool ok = true;
                        if (g.two_qubit()) {
                            live_back(g.q1);
                            ok = !hist[g.q1].empty() && hist[g.q1].back() == j;
                        }
                        if (ok) match = j;
                    }
                }
            } else {
                // walk back over diagonal gates on q0
                auto &h0 = hist[g.q0];
                for (int t = static_cast<int>(h0.size()) - 1; t >= 0; --t) {
                    int j = h0[t];
                    if (dead[j]) continue;
                    if (!diagonal(gs[j])) break;
                    if (same(gs[j], g)) {
                        bool ok = true;
                        if (g.two_qubit()) {
                            int other = g.q0 == gs[j].q0 ? g.q1 : g.q1;
                            auto &h1 = hist[other];
                            for (int s = static_cast<int>(h1.size()) - 1; s >= 0; --s) {
                                int k = h1[s];
                                if (dead[k]) continue;
                                if (k == j) break;
                                if (k < j || !diagonal(gs[k])) {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if (ok) match = j;
                        break;
                    }
                }
            }
        }
        if (match >= 0) {
            dead[match] = 1;
            dead[i] = 1;
            removed += 2;
            continue;
        }
        hist[g.q0].push_back(static_cast<int>(i));
        if (g.two_qubit()) hist[g.q1].push_back(static_cast<int>(i));
    }
    std::vector<Gate> out;
    out.reserve(gs.size() - removed);
    for (size_t i = 0; i < gs.size(); ++i)
        if (!dead[i]) out.push_back(gs[i]);
    gs = std::move(out);
    return removed;
}

// ---- 2D constructions ----

static void require_2d(const LatticeShape &shape) {
    if (shape.dims() != 2) throw DimensionError("construction needs a 2D shape");
}

Circuit build_intersection_basis(const LatticeShape &shape) {
    require_2d(shape);
    Plane p = single_qubit_plane(shape, 0, 0, shape.rows(), shape.cols());
    Builder b(shape);
    b.add_frame(column_ladders(p), false);
    b.add_frame(even_row_ladders(p), false);
    return b.circuit();
}

SwitchPlan build_c2d(const LatticeShape &shape) {
    require_2d(shape);
    Plane p = single_qubit_plane(shape, 0, 0, shape.rows(), shape.cols());
    Builder b(shape);
    b.emit({piece_s_to_z(p)});
    return finalize(shape, b.circuit(), z_pattern(shape), s_pattern(shape));
}

Circuit build_c1d(const LatticeShape &shape) {
    require_2d(shape);
    Plane p = single_qubit_plane(shape, 0, 0, shape.rows(), shape.cols());
    Builder b(shape);
    b.emit({piece_z_to_st(p)});
    auto plan = finalize(shape, b.circuit(), d_dim_s_pattern(shape, DimHierarchy{{0, 1}}), z_pattern(shape));
    return plan.full_circuit();
}

SwitchPlan build_c2d_prime(const LatticeShape &shape) {
    require_2d(shape);
    return hierarchy_transposition(shape, DimHierarchy::standard(2), 0);
}

SwitchPlan boustrophedon_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst, const LatticeShape &shape) {
    require_2d(shape);
    validate_partition(src.column_partition, shape.cols());
    validate_partition(dst.column_partition, shape.cols());
    Builder b(shape);
    for (const auto *spec : {&src, &dst}) {
        Stage st;
        for (auto &iv : spec->column_partition) {
            Plane p = single_qubit_plane(shape, 0, iv.begin, shape.rows(), iv.width());
            st.push_back(piece_s_to_z(p));
        }
        b.emit(st);
    }
    return finalize(shape, b.circuit(), boustrophedon_ordering(src, shape), boustrophedon_ordering(dst, shape));
}

Circuit column_swap_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst, const LatticeShape &shape,
                           const std::vector<int> &swap_left) {
    require_2d(shape);
    validate_partition(src.column_partition, shape.cols());
    validate_partition(dst.column_partition, shape.cols());
    const int R = shape.rows(), C = shape.cols();
    Plane full = single_qubit_plane(shape, 0, 0, R, C);
    Frame up = column_ladders(full);
    Builder b(shape);
    auto inner = [&](const BoustrophedonSpec &spec) {
        Frame rows;
        std::vector<std::pair<int, int>> cz;
        for (auto &iv : spec.column_partition) {
            Plane p = single_qubit_plane(shape, 0, iv.begin, R, iv.width());
            auto d = frame_cz_layer(shape, piece_s_to_z(p));
            cz.insert(cz.end(), d.begin(), d.end());
            Frame r = even_row_ladders(p);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        b.add_frame(rows, false);
        sort_by_colour(shape, cz);
        for (auto &[x, y] : cz) b.circuit().add(Gate::cz(x, y));
        b.add_frame(rows, true);
    };
    b.add_frame(up, false);
    inner(src);
    Piece top;
    top.frame = up;
    for (int q = 0; q < shape.size(); ++q) top.units.push_back({q});
    for (int c : swap_left) {
        if (c < 0 || c + 1 >= C) throw ParameterError("swap column out of range");
        for (int r = 0; r < R; ++r) {
            b.circuit().add(Gate::swap(shape.index({r, c}), shape.index({r, c + 1})));
            for (int s = 0; s < R; ++s) top.products.emplace_back(shape.index({r, c}), shape.index({s, c + 1}));
        }
    }
    for (auto &[x, y] : frame_cz_layer(shape, top)) b.circuit().add(Gate::cz(x, y));
    inner(dst);
    b.add_frame(up, true);
    Circuit out = b.circuit();
    cancel_adjacent_inverses(out);
    return out;
}

// ---- d-dimensional ----

Circuit compressed_basis_ladders(const LatticeShape &shape, int j, const DimHierarchy &h) {
    const int d = shape.dims();
    h.validate(d);
    if (j < 0 || j >= d) throw ParameterError("compression level out of range");
    HBox box{std::vector<int>(d, 0), shape.lengths(), std::vector<int>(d, 0), h.order};
    Circuit c(shape.size(), shape);
    if (j == 0) return c;
    // one unit per point of the levels >= j
    std::vector<int> high_len(d, 1);
    for (int i = j; i < d; ++i) high_len[h.order[i]] = shape.length(h.order[i]);
    Frame all;
    for_each_local(high_len, [&](const std::vector<int> &x) {
        auto u = make_unit(shape, box, j, x);
        all.insert(all.end(), u.compress.begin(), u.compress.end());
    });
    // time order: level 0 ladders first
    std::stable_sort(all.begin(), all.end(), [&](const Chain &a, const Chain &b) {
        auto level = [&](const Chain &ch) {
            Site s0 = shape.site(ch[0].first), s1 = shape.site(ch[0].second);
            for (int i = 0; i < d; ++i)
                if (s0[h.order[i]] != s1[h.order[i]]) return i;
            return d;
        };
        return level(a) < level(b);
    });
    for (auto &ch : all) {
        int id = c.new_ladder_id();
        for (auto &[a, b] : ch) c.add(Gate::cnot(a, b, id));
    }
    return c;
}

Circuit compressed_basis_ladders(const LatticeShape &shape, int j) {
    return compressed_basis_ladders(shape, j, DimHierarchy::standard(shape.dims()));
}

SwitchPlan hierarchy_transposition(const LatticeShape &shape, const DimHierarchy &h, int k) {
    const int d = shape.dims();
    h.validate(d);
    if (d < 2 || k < 0 || k > d - 2) throw ParameterError("transposition level out of range");
    HBox box{std::vector<int>(d, 0), shape.lengths(), std::vector<int>(d, 0), h.order};
    Builder b(shape);
    auto [s1, s2] = transposition_stages(shape, {box}, k);
    b.emit(s1);
    b.emit(s2);
    DimHierarchy hp = h;
    std::swap(hp.order[k], hp.order[k + 1]);
    return finalize(shape, b.circuit(), d_dim_s_pattern(shape, h), d_dim_s_pattern(shape, hp));
}

namespace {

// reflections making box h (hierarchy fixed) reproduce ranks on its region
bool match_flips(const LatticeShape &shape, HBox &h, const std::vector<int> &ranks) {
    const int d = static_cast<int>(h.len.size());
    int base = box_base(shape, h, ranks);
    for (int mask = 0; mask < (1 << d); ++mask) {
        HBox t = h;
        t.flip.assign(d, 0);
        for (int a = 0; a < d; ++a) t.flip[a] = (mask >> a) & 1;
        bool eq = true;
        for_each_local(t.len, [&](const std::vector<int> &x) {
            if (eq && t.rank(x) + base != ranks[global_index(shape, t, x)]) eq = false;
        });
        if (eq) {
            h = t;
            return true;
        }
    }
    return false;
}

bool contains_box(const HBox &big, const HBox &part) {
    for (size_t a = 0; a < big.len.size(); ++a)
        if (part.origin[a] < big.origin[a] || part.origin[a] + part.len[a] > big.origin[a] + big.len[a]) return false;
    return true;
}

// Brings the parts inside each big box to the big box's S pattern (hierarchy of the big box fixed,
// reflections chosen to minimise the fix-up work unless pinned).
std::vector<Stage> conform_group(const LatticeShape &shape, std::vector<HBox> &big, const std::vector<HBox> &parts,
                                 std::vector<int> &cur, bool pinned) {
    std::vector<Stage> merged;
    const int d = shape.dims();
    for (auto &bg : big) {
        int best_cost = INT32_MAX;
        HBox best_box;
        std::vector<std::pair<HBox, HBox>> best_moves;
        int base = box_base(shape, bg, cur);
        for (int mask = 0; mask < (pinned ? 1 : (1 << d)); ++mask) {
            HBox t = bg;
            if (!pinned)
                for (int a = 0; a < d; ++a) t.flip[a] = (mask >> a) & 1;
            std::vector<int> tr = cur;
            write_box(shape, t, base, tr);
            int cost = 0;
            bool ok = true;
            std::vector<std::pair<HBox, HBox>> moves;
            for (auto &pt : parts) {
                if (!contains_box(bg, pt)) continue;
                HBox want = pt;
                if (box_base(shape, pt, cur) != box_base(shape, pt, tr) || !match_flips(shape, want, tr)) {
                    ok = false;
                    break;
                }
                cost += conform_cost(pt, want.flip);
                moves.emplace_back(pt, want);
            }
            if (ok && cost < best_cost) {
                best_cost = cost;
                best_box = t;
                best_moves = moves;
            }
        }
        if (best_cost == INT32_MAX) throw SynthesisError("cannot conform sub-boxes to an enclosing S pattern");
        for (auto &[from, to] : best_moves) {
            HBox h = from;
            merge_into(merged, conform_stages(shape, h, to.flip));
        }
        bg = best_box;
        write_box(shape, bg, base, cur);
    }
    return merged;
}

// Stages from a 3D boustrophedon ordering to m_S^{(p,c,r)} (p lowest, r highest).
std::vector<Stage> bous3d_to_pcr(const LatticeShape &shape, const BoustrophedonSpec &spec) {
    const int P = shape.length(0), R = shape.length(1), C = shape.length(2);
    IntervalPartition rows = spec.row_partition.empty() ? IntervalPartition{{0, R}} : spec.row_partition;
    std::vector<int> cur = boustrophedon_ordering(spec, shape).ranks();
    std::vector<Stage> out;

    auto apply_transposition = [&](std::vector<HBox> &boxes, int k) {
        auto [s1, s2] = transposition_stages(shape, boxes, k);
        out.push_back(s1);
        out.push_back(s2);
        for (auto &h : boxes) {
            int base = box_base(shape, h, cur);
            h = swapped(h, k);
            write_box(shape, h, base, cur);
        }
    };

    // subgrids carry (c,r,p); go to (r,c,p) then (r,p,c)
    std::vector<HBox> sub;
    for (auto &rb : rows)
        for (auto &cb : spec.column_partition) {
            HBox h{{0, rb.begin, cb.begin}, {P, rb.width(), cb.width()}, {0, 0, 0}, {2, 1, 0}};
            if (!match_flips(shape, h, cur)) throw SynthesisError("subgrid is not an S pattern");
            sub.push_back(h);
        }
    apply_transposition(sub, 0);
    apply_transposition(sub, 1);

    // row blocks with (r,p,c), then (p,r,c), then (p,c,r)
    std::vector<HBox> rowbox;
    for (auto &rb : rows) rowbox.push_back(HBox{{0, rb.begin, 0}, {P, rb.width(), C}, {0, 0, 0}, {1, 0, 2}});
    auto fix = conform_group(shape, rowbox, sub, cur, false);
    out.insert(out.end(), fix.begin(), fix.end());
    apply_transposition(rowbox, 0);
    apply_transposition(rowbox, 1);

    std::vector<HBox> whole{HBox{{0, 0, 0}, {P, R, C}, {0, 0, 0}, {0, 2, 1}}};
    fix = conform_group(shape, whole, rowbox, cur, true);
    out.insert(out.end(), fix.begin(), fix.end());
    std::vector<int> goal(shape.size());
    write_box(shape, whole[0], 0, goal);
    if (cur != goal) throw SynthesisError("3D switch did not reach the intermediate ordering");
    return out;
}

}  // namespace

SwitchPlan d_dim_boustrophedon_switch(const BoustrophedonSpec &src, const BoustrophedonSpec &dst,
                                      const LatticeShape &shape) {
    if (shape.dims() == 2) return boustrophedon_switch(src, dst, shape);
    if (shape.dims() != 3) throw DimensionError("boustrophedon switches support 2D and 3D shapes");
    auto a = bous3d_to_pcr(shape, src);
    auto b = bous3d_to_pcr(shape, dst);
    Builder bl(shape);
    for (auto &st : a) bl.emit(st);
    for (auto it = b.rbegin(); it != b.rend(); ++it) bl.emit(*it);
    return finalize(shape, bl.circuit(), boustrophedon_ordering(src, shape), boustrophedon_ordering(dst, shape));
}

// ---- verification ----

PhasePolynomial plan_phase_polynomial(const SwitchPlan &plan) { return phase_polynomial(plan.full_circuit()); }

bool verify_f2(const SwitchPlan &plan) {
    return phase_polynomial(plan.full_circuit()) == inversion_form(plan.source, plan.target);
}

Circuit majorana_compensation(const Circuit &c, const std::vector<PauliString> &from, const std::vector<PauliString> &to,
                              std::vector<int> *flipped) {
    const int n = c.num_qubits();
    if (from.size() != to.size() || static_cast<int>(to.size()) != 2 * n)
        throw ParameterError("compensation needs 2n Majoranas");
    std::vector<char> in(2 * n, 0);
    int nflip = 0;
    for (int k = 0; k < 2 * n; ++k) {
        PauliString img = conjugate(from[k], c);
        if (!img.same_up_to_sign(to[k]) || img.phase() % 2 != to[k].phase() % 2)
            throw SynthesisError("circuit maps a Majorana outside the target encoding");
        if (img.phase() != to[k].phase()) {
            in[k] = 1;
            ++nflip;
            if (flipped) flipped->push_back(k);
        }
    }
    // E anticommutes exactly with the flipped images
    bool odd = nflip % 2 == 1;
    PauliString e(n);
    for (int k = 0; k < 2 * n; ++k)
        if (in[k] != odd) e = e * to[k];
    Circuit comp(n);
    if (c.shape()) comp.bind_shape(*c.shape());
    for (int q = 0; q < n; ++q) {
        char l = e.letter(q);
        if (l == 'X') comp.add(Gate::one(GateKind::X, q));
        if (l == 'Y') comp.add(Gate::one(GateKind::Y, q));
        if (l == 'Z') comp.add(Gate::one(GateKind::Z, q));
    }
    return comp;
}

std::map<int, int> sign_audit(SwitchPlan &plan) {
    const int n = plan.source.size();
    std::vector<PauliString> src, dst;
    for (int q = 0; q < n; ++q) {
        auto s = majorana_pair_index(q, plan.source);
        auto t = majorana_pair_index(q, plan.target);
        src.push_back(s.even_string);
        src.push_back(s.odd_string);
        dst.push_back(t.even_string);
        dst.push_back(t.odd_string);
    }
    std::vector<int> flipped;
    plan.compensation = majorana_compensation(plan.full_circuit(), src, dst, &flipped);
    if (plan.circuit.shape()) plan.compensation.bind_shape(*plan.circuit.shape());
    plan.sign_audit.clear();
    for (int k = 0; k < 2 * n; ++k) plan.sign_audit[k] = 1;
    for (int k : flipped) plan.sign_audit[k] = -1;
    return plan.sign_audit;
}

bool verify_pauli(const SwitchPlan &plan) {
    Circuit c = plan.compensated_circuit();
    for (int q = 0; q < plan.source.size(); ++q) {
        auto s = majorana_pair_index(q, plan.source);
        auto t = majorana_pair_index(q, plan.target);
        if (!(conjugate(s.even_string, c) == t.even_string)) return false;
        if (!(conjugate(s.odd_string, c) == t.odd_string)) return false;
    }
    return true;
}

bool verify_dense(const SwitchPlan &plan, double tol) {
    if (plan.source.size() > 8) throw SizeError("dense switch check is limited to 8 qubits");
    CMatrix u = dense_unitary(plan.full_circuit());
    PhasePolynomial q = inversion_form(plan.source, plan.target);
    const int64_t dim = u.rows();
    for (int64_t x = 0; x < dim; ++x)
        for (int64_t y = 0; y < dim; ++y) {
            cplx want = (x == y) ? cplx(q.evaluate_bits(static_cast<uint64_t>(x)) ? -1.0 : 1.0, 0) : cplx(0, 0);
            if (std::abs(u(y, x) - want) > tol) return false;
        }
    return true;
}

}  // namespace djw
