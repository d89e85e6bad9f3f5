// SPDX-License-Identifier: MIT
#include "djw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "djw/errors.hpp"

namespace djw {

bool is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::FSWAP:
        case GateKind::PauliRot:
        case GateKind::FswapHop:
        case GateKind::CPhase:
            return true;
        default:
            return false;
    }
}

bool Gate::two_qubit() const { return is_two_qubit(kind); }

bool Gate::operator==(const Gate &o) const {
    if (kind != o.kind || q0 != o.q0 || q1 != o.q1) return false;
    if (kind == GateKind::PauliRot && axis != o.axis) return false;
    return angle == o.angle;
}

bool is_clifford(const Gate &g) {
    switch (g.kind) {
        case GateKind::RZ:
        case GateKind::RY:
        case GateKind::PauliRot:
        case GateKind::FswapHop:
        case GateKind::CPhase:
            return false;
        default:
            return true;
    }
}

std::string kind_name(GateKind k) {
    switch (k) {
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::FSWAP: return "FSWAP";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::RZ: return "RZ";
        case GateKind::RY: return "RY";
        case GateKind::PauliRot: return "PAULIROT";
        case GateKind::FswapHop: return "FSWAPHOP";
        case GateKind::CPhase: return "CPHASE";
    }
    return "?";
}

std::string axis_name(RotAxis a) {
    switch (a) {
        case RotAxis::XX: return "XX";
        case RotAxis::YY: return "YY";
        case RotAxis::ZZ: return "ZZ";
        case RotAxis::XY: return "XY";
        case RotAxis::YX: return "YX";
        case RotAxis::XXpYY: return "XX+YY";
        case RotAxis::XYmYX: return "XY-YX";
    }
    return "?";
}

static RotAxis parse_axis(const std::string &s) {
    for (auto a : {RotAxis::XX, RotAxis::YY, RotAxis::ZZ, RotAxis::XY, RotAxis::YX, RotAxis::XXpYY, RotAxis::XYmYX})
        if (axis_name(a) == s) return a;
    throw ParseError("unknown rotation axis '" + s + "'");
}

Gate inverse_gate(const Gate &g) {
    Gate r = g;
    switch (g.kind) {
        case GateKind::S: r.kind = GateKind::Sdg; break;
        case GateKind::Sdg: r.kind = GateKind::S; break;
        case GateKind::RZ:
        case GateKind::RY:
        case GateKind::PauliRot:
        case GateKind::FswapHop:
        case GateKind::CPhase: r.angle = -g.angle; break;
        default: break;
    }
    return r;
}

void Circuit::add(const Gate &g) {
    int need = g.two_qubit() ? 2 : 1;
    if (g.q0 < 0 || g.q0 >= n_) throw ParameterError("gate operand out of range");
    if (need == 2) {
        if (g.q1 < 0 || g.q1 >= n_) throw ParameterError("gate operand out of range");
        if (g.q0 == g.q1) throw ParameterError("two-qubit gate needs distinct operands");
    }
    Gate h = g;
    if (need == 1) h.q1 = -1;
    if (h.ladder >= next_ladder_) next_ladder_ = h.ladder + 1;
    gates_.push_back(h);
}

void Circuit::append(const Circuit &other) {
    if (other.n_ != n_) throw ParameterError("qubit count mismatch in append");
    int base = next_ladder_;
    for (auto g : other.gates_) {
        if (g.ladder >= 0) g.ladder += base;
        add(g);
    }
}

Circuit Circuit::inverse() const {
    Circuit c(n_);
    c.shape_ = shape_;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) c.add(inverse_gate(*it));
    return c;
}

static std::string fmt_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    os << "# qubit q is lattice site with row-major index q\n";
    os << "QUBITS " << n_ << "\n";
    if (shape_) os << "SHAPE " << shape_->str() << "\n";
    int open = -1;
    for (auto &g : gates_) {
        if (g.ladder != open) {
            if (open >= 0) os << "LADDER_END\n";
            if (g.ladder >= 0) os << "LADDER_BEGIN\n";
            open = g.ladder;
        }
        os << kind_name(g.kind);
        if (g.kind == GateKind::PauliRot) os << " " << axis_name(g.axis);
        os << " " << g.q0;
        if (g.two_qubit()) os << " " << g.q1;
        switch (g.kind) {
            case GateKind::RZ:
            case GateKind::RY:
            case GateKind::PauliRot:
            case GateKind::FswapHop:
            case GateKind::CPhase: os << " " << fmt_angle(g.angle); break;
            default: break;
        }
        os << "\n";
    }
    if (open >= 0) os << "LADDER_END\n";
    return os.str();
}

Circuit Circuit::from_text(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    Circuit c;
    bool have_n = false;
    int ladder = -1, next = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        if (op == "QUBITS") {
            int n;
            if (!(ls >> n) || n < 0) throw ParseError("bad QUBITS line");
            c = Circuit(n);
            have_n = true;
            continue;
        }
        if (!have_n) throw ParseError("QUBITS line must come first");
        if (op == "SHAPE") {
            std::string s;
            ls >> s;
            c.bind_shape(LatticeShape::parse(s));
            continue;
        }
        if (op == "LADDER_BEGIN") {
            if (ladder >= 0) throw ParseError("nested ladder");
            ladder = next++;
            continue;
        }
        if (op == "LADDER_END") {
            if (ladder < 0) throw ParseError("unmatched LADDER_END");
            ladder = -1;
            continue;
        }
        Gate g;
        bool found = false;
        for (int k = 0; k <= static_cast<int>(GateKind::CPhase); ++k) {
            if (kind_name(static_cast<GateKind>(k)) == op) {
                g.kind = static_cast<GateKind>(k);
                found = true;
            }
        }
        if (!found) throw ParseError("unknown gate '" + op + "'");
        if (g.kind == GateKind::PauliRot) {
            std::string ax;
            ls >> ax;
            g.axis = parse_axis(ax);
        }
        if (!(ls >> g.q0)) throw ParseError("missing operand in '" + line + "'");
        if (g.two_qubit() && !(ls >> g.q1)) throw ParseError("missing operand in '" + line + "'");
        switch (g.kind) {
            case GateKind::RZ:
            case GateKind::RY:
            case GateKind::PauliRot:
            case GateKind::FswapHop:
            case GateKind::CPhase: {
                std::string a;
                if (!(ls >> a)) throw ParseError("missing angle in '" + line + "'");
                g.angle = std::stod(a);
                break;
            }
            default: break;
        }
        g.ladder = ladder;
        if (ladder >= 0 && g.kind != GateKind::CNOT) throw ParseError("ladders may only hold CNOT gates");
        c.add(g);
    }
    if (ladder >= 0) throw ParseError("unterminated ladder");
    return c;
}

std::string model_name(DepthModel m) {
    switch (m) {
        case DepthModel::nn_lattice: return "nn_lattice";
        case DepthModel::all_to_all: return "all_to_all";
        case DepthModel::lattice_surgery: return "lattice_surgery";
    }
    return "?";
}

DepthModel parse_depth_model(const std::string &s) {
    for (auto m : {DepthModel::nn_lattice, DepthModel::all_to_all, DepthModel::lattice_surgery})
        if (model_name(m) == s) return m;
    throw ParseError("unknown depth model '" + s + "'");
}

std::vector<Violation> validate_connectivity(const Circuit &c) {
    if (!c.shape()) throw MissingShapeError("connectivity check needs a bound lattice shape");
    const auto &sh = *c.shape();
    if (sh.size() != c.num_qubits()) throw ShapeError("bound shape does not match qubit count");
    std::vector<Violation> out;
    for (size_t i = 0; i < c.size(); ++i) {
        const auto &g = c.gates()[i];
        if (g.two_qubit() && sh.distance_l1(g.q0, g.q1) != 1) out.push_back({i, g.q0, g.q1});
    }
    return out;
}

namespace {

void emit_zz(Circuit &out, int a, int b, double theta) {
    out.add(Gate::cnot(a, b));
    out.add(Gate::one(GateKind::RZ, b, theta));
    out.add(Gate::cnot(a, b));
}

void emit_xxpyy(Circuit &out, int a, int b, double theta) {
    for (int q : {a, b}) {
        out.add(Gate::one(GateKind::H, q));
        out.add(Gate::one(GateKind::Sdg, q));
        out.add(Gate::one(GateKind::H, q));
    }
    out.add(Gate::cnot(a, b));
    out.add(Gate::one(GateKind::H, a));
    out.add(Gate::one(GateKind::RZ, a, theta));
    out.add(Gate::one(GateKind::H, a));
    out.add(Gate::one(GateKind::RZ, b, theta));
    out.add(Gate::cnot(a, b));
    for (int q : {a, b}) {
        out.add(Gate::one(GateKind::H, q));
        out.add(Gate::one(GateKind::S, q));
        out.add(Gate::one(GateKind::H, q));
    }
}

void to_z_basis(Circuit &out, char p, int q, bool undo) {
    if (p == 'X') {
        out.add(Gate::one(GateKind::H, q));
    } else if (p == 'Y') {
        if (!undo) {
            out.add(Gate::one(GateKind::Sdg, q));
            out.add(Gate::one(GateKind::H, q));
        } else {
            out.add(Gate::one(GateKind::H, q));
            out.add(Gate::one(GateKind::S, q));
        }
    }
}

}  // namespace

Circuit decompose_to_cnot_basis(const Circuit &c, const DecomposeOptions &opt) {
    Circuit out(c.num_qubits());
    if (c.shape()) out.bind_shape(*c.shape());
    for (const auto &g : c.gates()) {
        int a = g.q0, b = g.q1;
        switch (g.kind) {
            case GateKind::CZ:
                if (opt.cz_to_cnot) {
                    out.add(Gate::one(GateKind::H, b));
                    out.add(Gate::cnot(a, b));
                    out.add(Gate::one(GateKind::H, b));
                } else {
                    out.add(g);
                }
                break;
            case GateKind::SWAP:
                out.add(Gate::cnot(a, b));
                out.add(Gate::cnot(b, a));
                out.add(Gate::cnot(a, b));
                break;
            case GateKind::FSWAP:
                emit_xxpyy(out, a, b, -M_PI / 2);
                out.add(Gate::one(GateKind::Sdg, a));
                out.add(Gate::one(GateKind::Sdg, b));
                break;
            case GateKind::FswapHop:
                emit_xxpyy(out, a, b, g.angle - M_PI / 2);
                out.add(Gate::one(GateKind::Sdg, a));
                out.add(Gate::one(GateKind::Sdg, b));
                break;
            case GateKind::CPhase:
                out.add(Gate::one(GateKind::RZ, a, g.angle / 2));
                out.add(Gate::one(GateKind::RZ, b, g.angle / 2));
                emit_zz(out, a, b, -g.angle / 2);
                break;
            case GateKind::PauliRot: {
                if (g.axis == RotAxis::XXpYY) {
                    emit_xxpyy(out, a, b, g.angle);
                } else if (g.axis == RotAxis::XYmYX) {
                    out.add(Gate::one(GateKind::S, b));
                    emit_xxpyy(out, a, b, -g.angle);
                    out.add(Gate::one(GateKind::Sdg, b));
                } else {
                    std::string ax = axis_name(g.axis);
                    to_z_basis(out, ax[0], a, false);
                    to_z_basis(out, ax[1], b, false);
                    emit_zz(out, a, b, g.angle);
                    to_z_basis(out, ax[0], a, true);
                    to_z_basis(out, ax[1], b, true);
                }
                break;
            }
            default:
                out.add(g);
        }
    }
    return out;
}

int depth(const Circuit &c, DepthModel model, const DepthOptions &opt) {
    if (model == DepthModel::nn_lattice && !opt.skip_connectivity_check) {
        auto v = validate_connectivity(c);
        if (!v.empty()) throw ConnectivityError("circuit has non-nearest-neighbour gates");
    }
    std::vector<int> level(c.num_qubits(), 0);
    const auto &g = c.gates();
    size_t i = 0;
    while (i < g.size()) {
        if (model != DepthModel::nn_lattice && g[i].ladder >= 0) {
            size_t j = i;
            std::vector<int> qs;
            while (j < g.size() && g[j].ladder == g[i].ladder) {
                qs.push_back(g[j].q0);
                qs.push_back(g[j].q1);
                ++j;
            }
            int len = static_cast<int>(j - i);
            int cost = model == DepthModel::lattice_surgery ? 7 : static_cast<int>(std::ceil(std::log2(len + 1.0)));
            int start = 0;
            for (int q : qs) start = std::max(start, level[q]);
            for (int q : qs) level[q] = start + cost;
            i = j;
            continue;
        }
        const auto &x = g[i++];
        if (!x.two_qubit()) {
            if (!opt.two_qubit_only) level[x.q0] += 1;
            continue;
        }
        int t = std::max(level[x.q0], level[x.q1]) + 1;
        level[x.q0] = level[x.q1] = t;
    }
    int d = 0;
    for (int l : level) d = std::max(d, l);
    return d;
}

nlohmann::json ResourceReport::to_json() const {
    return {{"cnot_count", cnot_count}, {"two_qubit_count", two_qubit_count}, {"gate_count", gate_count},
            {"counts", counts},         {"depth", depth},                     {"two_qubit_depth", two_qubit_depth}};
}

ResourceReport resource_report(const Circuit &c) {
    ResourceReport r;
    for (auto &g : c.gates()) {
        r.counts[kind_name(g.kind)] += 1;
        if (g.two_qubit()) r.two_qubit_count += 1;
    }
    r.gate_count = static_cast<int64_t>(c.size());
    Circuit d = decompose_to_cnot_basis(c, {true});
    for (auto &g : d.gates())
        if (g.kind == GateKind::CNOT) r.cnot_count += 1;
    bool nn = c.shape() && c.shape()->size() == c.num_qubits() && validate_connectivity(c).empty();
    if (nn) {
        r.depth["nn_lattice"] = depth(c, DepthModel::nn_lattice);
        r.two_qubit_depth = depth(c, DepthModel::nn_lattice, {true});
    } else {
        r.two_qubit_depth = depth(c, DepthModel::nn_lattice, {true, true});
    }
    r.depth["all_to_all"] = depth(c, DepthModel::all_to_all);
    r.depth["lattice_surgery"] = depth(c, DepthModel::lattice_surgery);
    return r;
}

}  // namespace djw
