// SPDX-License-Identifier: MIT
#include "djw/routing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>

#include "djw/errors.hpp"
#include "djw/oracles.hpp"
#include "djw/switch.hpp"

namespace djw {

void RoutingProblem::validate() const {
    if (static_cast<int>(perm.size()) != shape.size()) throw PermutationError("permutation size does not match the lattice");
    std::vector<char> seen(perm.size(), 0);
    for (int d : perm) {
        if (d < 0 || d >= shape.size() || seen[d]) throw PermutationError("routing target is not a bijection");
        seen[d] = 1;
    }
}

std::string stage_name(StageKind k) {
    switch (k) {
        case StageKind::row_perm: return "row_perm";
        case StageKind::col_perm: return "col_perm";
        case StageKind::axis_perm: return "axis_perm";
        case StageKind::sweep: return "sweep";
        case StageKind::switch_encoding: return "switch";
    }
    return "?";
}

int RoutingSchedule::fswap_rounds() const {
    int r = 0;
    for (auto &s : stages) r += s.rounds;
    return r;
}

int RoutingSchedule::fswap_count() const {
    int n = 0;
    for (auto &g : total.gates()) n += g.kind == GateKind::FSWAP;
    return n;
}

namespace {

// layers of the odd-even sort; each layer lists swapped line positions p (p, p+1)
std::vector<std::vector<int>> odd_even_layers(std::vector<int> keys, int parity) {
    std::vector<std::vector<int>> layers;
    const int n = static_cast<int>(keys.size());
    int idle = 0;
    for (int round = 0; idle < 2 && round < n + 2; ++round, parity ^= 1) {
        std::vector<int> layer;
        for (int p = parity; p + 1 < n; p += 2)
            if (keys[p] > keys[p + 1]) {
                std::swap(keys[p], keys[p + 1]);
                layer.push_back(p);
            }
        if (layer.empty()) {
            ++idle;
            continue;
        }
        idle = 0;
        layers.push_back(std::move(layer));
    }
    return layers;
}

}  // namespace

Circuit odd_even_fswap_sort(const std::vector<int> &keys, const std::vector<int> &line, int num_qubits, int *rounds) {
    if (keys.size() != line.size()) throw ParameterError("key and line lengths differ");
    std::vector<int> s = keys;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw KeyError("duplicate sort keys");
    auto a = odd_even_layers(keys, 0), b = odd_even_layers(keys, 1);
    const auto &best = b.size() < a.size() ? b : a;
    Circuit c(num_qubits);
    for (auto &layer : best)
        for (int p : layer) c.add(Gate::fswap(line[p], line[p + 1]));
    if (rounds) *rounds = static_cast<int>(best.size());
    return c;
}

// ---- matching ----

namespace {

class HopcroftKarp {
  public:
    explicit HopcroftKarp(int n) : n_(n), adj_(n), mu_(n, -1), mv_(n, -1), dist_(n) {}
    void edge(int u, int v) { adj_[u].push_back(v); }
    void seed(int u, int v) {
        if (mu_[u] < 0 && mv_[v] < 0) mu_[u] = v, mv_[v] = u;
    }
    int run() {
        int m = 0;
        for (int u = 0; u < n_; ++u) m += mu_[u] >= 0;
        while (bfs())
            for (int u = 0; u < n_; ++u)
                if (mu_[u] < 0 && dfs(u)) ++m;
        return m;
    }
    int match(int u) const { return mu_[u]; }

  private:
    bool bfs() {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < n_; ++u) {
            dist_[u] = mu_[u] < 0 ? 0 : -1;
            if (mu_[u] < 0) q.push(u);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                int w = mv_[v];
                if (w < 0) found = true;
                else if (dist_[w] < 0) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }
    bool dfs(int u) {
        for (int v : adj_[u]) {
            int w = mv_[v];
            if (w < 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                mu_[u] = v;
                mv_[v] = u;
                return true;
            }
        }
        dist_[u] = -1;
        return false;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> mu_, mv_, dist_;
};

}  // namespace

std::vector<int> group_assignment(const std::vector<int> &src_row, const std::vector<int> &src_col,
                                  const std::vector<int> &dst_row, int groups, int labels) {
    const size_t n = src_row.size();
    if (n != static_cast<size_t>(groups) * labels || src_col.size() != n || dst_row.size() != n)
        throw ParameterError("assignment needs groups*labels items");
    // bucket[a][b]: unassigned items from group a to group b
    std::vector<std::vector<std::vector<int>>> bucket(groups, std::vector<std::vector<int>>(groups));
    for (size_t i = 0; i < n; ++i) bucket[src_row[i]][dst_row[i]].push_back(static_cast<int>(i));
    std::vector<int> out(n, -1);
    for (int k = 0; k < labels; ++k) {
        HopcroftKarp hk(groups);
        for (int a = 0; a < groups; ++a)
            for (int b = 0; b < groups; ++b)
                if (!bucket[a][b].empty()) hk.edge(a, b);
        for (size_t i = 0; i < n; ++i)
            if (out[i] < 0 && src_col[i] == k) hk.seed(src_row[i], dst_row[i]);
        if (hk.run() != groups) throw SynthesisError("no perfect matching in a regular bipartite multigraph");
        for (int a = 0; a < groups; ++a) {
            auto &items = bucket[a][hk.match(a)];
            auto it = std::min_element(items.begin(), items.end(), [&](int x, int y) {
                return std::abs(src_col[x] - k) < std::abs(src_col[y] - k);
            });
            out[*it] = k;
            items.erase(it);
        }
    }
    return out;
}

std::vector<int> intermediate_assignment(const RoutingProblem &p) {
    p.validate();
    if (p.shape.dims() != 2) throw DimensionError("intermediate assignment needs a 2D shape");
    const int R = p.shape.rows(), C = p.shape.cols();
    std::vector<int> sr(p.shape.size()), sc(p.shape.size()), dr(p.shape.size());
    for (int q = 0; q < p.shape.size(); ++q) {
        sr[q] = q / C;
        sc[q] = q % C;
        dr[q] = p.perm[q] / C;
    }
    auto col = group_assignment(sr, sc, dr, R, C);
    for (int r = 0; r < R; ++r) {
        std::vector<char> used(C, 0);
        for (int c = 0; c < C; ++c) {
            if (used[col[r * C + c]]) throw SynthesisError("intermediate columns repeat within a row");
            used[col[r * C + c]] = 1;
        }
    }
    for (int k = 0; k < C; ++k) {
        std::vector<char> used(R, 0);
        for (int q = 0; q < p.shape.size(); ++q)
            if (col[q] == k) {
                if (used[dr[q]]) throw SynthesisError("destination rows repeat within an intermediate column");
                used[dr[q]] = 1;
            }
    }
    return col;
}

// ---- schedule building ----

namespace {

class ScheduleBuilder {
  public:
    ScheduleBuilder(const LatticeShape &shape, const CanonicalOrdering &start) : shape_(shape), ord_(start) {
        s_.total = Circuit(shape.size(), shape);
        mode_at_.resize(shape.size());
        std::iota(mode_at_.begin(), mode_at_.end(), 0);
    }

    const std::vector<int> &mode_at() const { return mode_at_; }

    // lines: qubit sets, each rank-contiguous in the active ordering; target[q] = destination qubit of the mode on q
    void sort_stage(StageKind kind, int axis, const std::vector<std::vector<int>> &lines, const std::vector<int> &target) {
        RoutingStage st;
        st.kind = kind;
        st.axis = axis;
        st.ordering = ord_;
        st.circuit = Circuit(shape_.size(), shape_);
        std::vector<int> next = mode_at_;
        for (auto line : lines) {
            std::sort(line.begin(), line.end(), [&](int a, int b) { return ord_.rank(a) < ord_.rank(b); });
            for (size_t i = 0; i + 1 < line.size(); ++i)
                if (ord_.rank(line[i + 1]) != ord_.rank(line[i]) + 1)
                    throw OrderingError("sort line is not rank-contiguous");
            std::map<int, int> pos;
            for (size_t i = 0; i < line.size(); ++i) pos[line[i]] = static_cast<int>(i);
            std::vector<int> keys;
            for (int q : line) {
                auto it = pos.find(target[q]);
                if (it == pos.end()) throw SynthesisError("sort target leaves its line");
                keys.push_back(it->second);
            }
            int rounds = 0;
            st.circuit.append(odd_even_fswap_sort(keys, line, shape_.size(), &rounds));
            st.rounds = std::max(st.rounds, rounds);
            for (int q : line) next[target[q]] = mode_at_[q];
        }
        mode_at_ = next;
        s_.total.append(st.circuit);
        s_.stages.push_back(std::move(st));
    }

    void switch_stage(const SwitchPlan &plan) {
        if (!(plan.source == ord_)) throw OrderingError("switch source differs from the active ordering");
        RoutingStage st;
        st.kind = StageKind::switch_encoding;
        st.ordering = plan.target;
        st.circuit = plan.compensated_circuit();
        ord_ = plan.target;
        s_.total.append(st.circuit);
        s_.stages.push_back(std::move(st));
    }

    RoutingSchedule finish() { return std::move(s_); }

  private:
    LatticeShape shape_;
    CanonicalOrdering ord_;
    RoutingSchedule s_;
    std::vector<int> mode_at_;
};

std::mutex cache_mutex;

const SwitchPlan &cached_plan(const std::string &key, const std::function<SwitchPlan()> &make) {
    static std::map<std::string, SwitchPlan> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it == cache.end()) {
        SwitchPlan p = make();
        sign_audit(p);
        it = cache.emplace(key, std::move(p)).first;
    }
    return it->second;
}

BoustrophedonSpec s_spec(const LatticeShape &s) { return BoustrophedonSpec::from_widths({s.cols()}); }
BoustrophedonSpec z_spec(const LatticeShape &s) { return BoustrophedonSpec::from_widths(std::vector<int>(s.cols(), 1)); }

const SwitchPlan &sz_plan(const LatticeShape &s, bool to_z) {
    return cached_plan(s.str() + (to_z ? ":S>Z" : ":Z>S"), [&] {
        return to_z ? boustrophedon_switch(s_spec(s), z_spec(s), s) : boustrophedon_switch(z_spec(s), s_spec(s), s);
    });
}

const SwitchPlan &transposition_plan(const LatticeShape &s, const DimHierarchy &h, int k) {
    std::string key = s.str() + ":h";
    for (int a : h.order) key += std::to_string(a);
    key += ":" + std::to_string(k);
    return cached_plan(key, [&] { return hierarchy_transposition(s, h, k); });
}

// current destinations of the modes on each qubit
std::vector<int> current_targets(const std::vector<int> &mode_at, const std::vector<int> &final_dest) {
    std::vector<int> t(mode_at.size());
    for (size_t q = 0; q < mode_at.size(); ++q) t[q] = final_dest[mode_at[q]];
    return t;
}

}  // namespace

RoutingSchedule route_2d(const RoutingProblem &p) {
    p.validate();
    if (p.shape.dims() != 2) throw DimensionError("route_2d needs a 2D shape");
    const LatticeShape &s = p.shape;
    const int R = s.rows(), C = s.cols();
    auto col = intermediate_assignment(p);
    ScheduleBuilder b(s, boustrophedon_ordering(s_spec(s), s));
    std::vector<std::vector<int>> rows(R), cols(C);
    for (int q = 0; q < s.size(); ++q) {
        rows[q / C].push_back(q);
        cols[q % C].push_back(q);
    }
    auto cell = [&](int r, int c) { return r * C + c; };
    std::vector<int> t(s.size());
    for (int q = 0; q < s.size(); ++q) t[q] = cell(q / C, col[q]);
    b.sort_stage(StageKind::row_perm, 1, rows, t);
    b.switch_stage(sz_plan(s, true));
    auto cur = current_targets(b.mode_at(), p.perm);
    for (int q = 0; q < s.size(); ++q) t[q] = cell(cur[q] / C, q % C);
    b.sort_stage(StageKind::col_perm, 0, cols, t);
    b.switch_stage(sz_plan(s, false));
    b.sort_stage(StageKind::row_perm, 1, rows, current_targets(b.mode_at(), p.perm));
    return b.finish();
}

namespace {

struct DdRouter {
    const LatticeShape &shape;
    ScheduleBuilder &b;
    DimHierarchy h;

    void make_lowest(int axis) {
        int pos = static_cast<int>(std::find(h.order.begin(), h.order.end(), axis) - h.order.begin());
        for (int k = pos - 1; k >= 0; --k) {
            b.switch_stage(transposition_plan(shape, h, k));
            std::swap(h.order[k], h.order[k + 1]);
        }
    }

    void sort_axis(int axis, const std::vector<int> &target) {
        make_lowest(axis);
        std::map<Site, std::vector<int>> fibers;
        for (int q = 0; q < shape.size(); ++q) {
            Site v = shape.site(q);
            v[axis] = 0;
            fibers[v].push_back(q);
        }
        std::vector<std::vector<int>> lines;
        for (auto &[k, v] : fibers) lines.push_back(v);
        b.sort_stage(StageKind::axis_perm, axis, lines, target);
    }

    // routes target (qubit -> qubit) that only changes coordinates on axes
    void route(const std::vector<int> &axes, const std::vector<int> &target) {
        if (axes.size() == 1) {
            sort_axis(axes[0], target);
            return;
        }
        const int g = axes[0];
        std::vector<int> rest(axes.begin() + 1, axes.end());
        // groups: H coordinates inside each fixed outer coordinate
        auto outer_key = [&](int q) {
            Site v = shape.site(q);
            for (int a : axes) v[a] = 0;
            return v;
        };
        auto h_index = [&](const Site &v) {
            int idx = 0;
            for (int a : rest) idx = idx * shape.length(a) + v[a];
            return idx;
        };
        std::map<Site, std::vector<int>> parts;
        for (int q = 0; q < shape.size(); ++q) parts[outer_key(q)].push_back(q);
        int groups = 1;
        for (int a : rest) groups *= shape.length(a);
        std::vector<int> t1(shape.size());
        for (auto &[k, qs] : parts) {
            std::vector<int> sr, sc, dr;
            for (int q : qs) {
                Site v = shape.site(q), w = shape.site(target[q]);
                sr.push_back(h_index(v));
                sc.push_back(v[g]);
                dr.push_back(h_index(w));
            }
            auto lab = group_assignment(sr, sc, dr, groups, shape.length(g));
            for (size_t i = 0; i < qs.size(); ++i) {
                Site v = shape.site(qs[i]);
                v[g] = lab[i];
                t1[qs[i]] = shape.index(v);
            }
        }
        // final destinations of the modes, by mode id
        std::vector<int> dest_of_mode(shape.size());
        for (int q = 0; q < shape.size(); ++q) dest_of_mode[b.mode_at()[q]] = target[q];
        route({g}, t1);
        std::vector<int> t2(shape.size());
        for (int q = 0; q < shape.size(); ++q) {
            Site v = shape.site(q), w = shape.site(dest_of_mode[b.mode_at()[q]]);
            w[g] = v[g];
            t2[q] = shape.index(w);
        }
        route(rest, t2);
        route({g}, current_targets(b.mode_at(), dest_of_mode));
    }
};

}  // namespace

RoutingSchedule route_dd(const RoutingProblem &p) {
    p.validate();
    const int d = p.shape.dims();
    if (d < 2) throw DimensionError("route_dd needs at least two axes");
    if (d == 2) return route_2d(p);
    DimHierarchy h0 = DimHierarchy::standard(d);
    ScheduleBuilder b(p.shape, d_dim_s_pattern(p.shape, h0));
    DdRouter r{p.shape, b, h0};
    std::vector<int> axes;
    for (int a = d - 1; a >= 0; --a) axes.push_back(a);
    r.route(axes, p.perm);
    r.make_lowest(h0.order[0]);
    // lowest axis is back in place; restore the remaining levels
    for (int k = 1; k + 1 < d; ++k) {
        int want = h0.order[k];
        int pos = static_cast<int>(std::find(r.h.order.begin(), r.h.order.end(), want) - r.h.order.begin());
        for (int j = pos - 1; j >= k; --j) {
            b.switch_stage(transposition_plan(p.shape, r.h, j));
            std::swap(r.h.order[j], r.h.order[j + 1]);
        }
    }
    return b.finish();
}

RoutingSchedule fsn_baseline_route(const RoutingProblem &p) {
    p.validate();
    if (p.shape.dims() != 2) throw DimensionError("FSN baseline needs a 2D shape");
    ScheduleBuilder b(p.shape, s_pattern(p.shape));
    std::vector<int> all(p.shape.size());
    std::iota(all.begin(), all.end(), 0);
    b.sort_stage(StageKind::sweep, -1, {all}, p.perm);
    return b.finish();
}

std::string check_schedule(const RoutingSchedule &s, const RoutingProblem &p) {
    std::vector<int> moved = track_modes(s.total);
    if (moved != p.perm) return "tracked permutation differs from the requested one";
    for (auto &st : s.stages) {
        if (st.kind == StageKind::switch_encoding) continue;
        for (auto &g : st.circuit.gates())
            if (g.kind == GateKind::FSWAP && std::abs(st.ordering.rank(g.q0) - st.ordering.rank(g.q1)) != 1)
                return "FSWAP on non rank-adjacent modes in a " + stage_name(st.kind) + " stage";
    }
    return "";
}

double all_to_all_depth_from_log(double l, const AllToAllStrategy &s) {
    if (s.kind == AllToAllStrategy::fixed_L) {
        double lL = std::log2(static_cast<double>(s.L));
        return (l / lL) * (l + (s.L - 1));
    }
    if (s.a <= 1) return l * (l + 1);
    AllToAllStrategy sub = s;
    sub.a = s.a - 1;
    double lam = std::pow(l, (s.a - 1) / s.a);
    return (l / lam) * (l + all_to_all_depth_from_log(lam, sub));
}

double all_to_all_depth_estimate(double N, const AllToAllStrategy &s) {
    if (N < 2) throw ParameterError("need N >= 2");
    if (s.kind == AllToAllStrategy::fixed_L && s.L < 2) throw ParameterError("need L >= 2");
    if (s.kind == AllToAllStrategy::recursive && s.a < 1) throw ParameterError("need a >= 1");
    return all_to_all_depth_from_log(std::log2(N), s);
}

}  // namespace djw
