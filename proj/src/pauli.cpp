// SPDX-License-Identifier: MIT
#include "djw/pauli.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "djw/errors.hpp"
#include "djw/gate_matrix.hpp"

namespace djw {

PauliString PauliString::single(int n, int q, char p) {
    PauliString s(n);
    s.set_letter(q, p);
    return s;
}

char PauliString::letter(int q) const {
    bool x = x_.get(q), z = z_.get(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliString::set_letter(int q, char p) {
    x_.set(q, p == 'X' || p == 'Y');
    z_.set(q, p == 'Z' || p == 'Y');
}

PauliString PauliString::parse(const std::string &text) {
    size_t pos = 0;
    int ph = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        ph = text[pos] == '-' ? 2 : 0;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        ph += 1;
        ++pos;
    }
    PauliString s(static_cast<int>(text.size() - pos));
    for (size_t k = pos; k < text.size(); ++k) {
        char c = text[k];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') throw ParseError("bad Pauli letter in '" + text + "'");
        s.set_letter(static_cast<int>(k - pos), c);
    }
    s.set_phase(ph);
    return s;
}

std::string PauliString::str() const {
    static const char *ph[] = {"+", "+i", "-", "-i"};
    std::string s = ph[phase_];
    for (int q = 0; q < n_; ++q) s.push_back(letter(q));
    return s;
}

PauliString PauliString::operator*(const PauliString &o) const {
    if (n_ != o.n_) throw ParameterError("Pauli size mismatch");
    PauliString r(n_);
    int64_t pos = 0, neg = 0;
    for (size_t k = 0; k < x_.num_words(); ++k) {
        uint64_t x1 = x_.word(k), z1 = z_.word(k), x2 = o.x_.word(k), z2 = o.z_.word(k);
        uint64_t p = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
        uint64_t m = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
        pos += std::popcount(p);
        neg += std::popcount(m);
        r.x_.word(k) = x1 ^ x2;
        r.z_.word(k) = z1 ^ z2;
    }
    r.set_phase(static_cast<int>((phase_ + o.phase_ + pos - neg) % 4));
    return r;
}

bool PauliString::commutes(const PauliString &o) const {
    size_t c = 0;
    for (size_t k = 0; k < x_.num_words(); ++k)
        c += std::popcount((x_.word(k) & o.z_.word(k)) ^ (z_.word(k) & o.x_.word(k)));
    return c % 2 == 0;
}

namespace {

// image of a local Pauli under conjugation, stored as a 1- or 2-qubit PauliString
struct Images {
    int arity = 1;
    std::array<PauliString, 4> img;  // X_a, Z_a, X_b, Z_b
};

PauliString identify(const std::vector<cplx> &M, int dim) {
    static const char letters[] = {'I', 'X', 'Y', 'Z'};
    auto pm = [](char p) -> Mat2 {
        const cplx i1{0, 1};
        switch (p) {
            case 'X': return {0, 1, 1, 0};
            case 'Y': return {0, -i1, i1, 0};
            case 'Z': return {1, 0, 0, -1};
            default: return {1, 0, 0, 1};
        }
    };
    int nq = dim == 2 ? 1 : 2;
    int combos = nq == 1 ? 4 : 16;
    for (int t = 0; t < combos; ++t) {
        char a = letters[nq == 1 ? t : t / 4], b = letters[t % 4];
        std::vector<cplx> T(dim * dim);
        if (nq == 1) {
            auto m = pm(a);
            for (int i = 0; i < 4; ++i) T[i] = m[i];
        } else {
            auto A = pm(a), B = pm(b);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l) T[(2 * i + k) * 4 + (2 * j + l)] = A[i * 2 + j] * B[k * 2 + l];
        }
        cplx tr = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) tr += std::conj(T[i * dim + j]) * M[i * dim + j];
        tr /= double(dim);
        if (std::abs(tr) > 0.5) {
            PauliString s(nq);
            s.set_letter(0, a);
            if (nq == 2) s.set_letter(1, b);
            int ph = 0;
            if (std::abs(tr - cplx(1, 0)) < 1e-9)
                ph = 0;
            else if (std::abs(tr - cplx(0, 1)) < 1e-9)
                ph = 1;
            else if (std::abs(tr - cplx(-1, 0)) < 1e-9)
                ph = 2;
            else if (std::abs(tr - cplx(0, -1)) < 1e-9)
                ph = 3;
            else
                throw SynthesisError("gate is not Clifford");
            s.set_phase(ph);
            return s;
        }
    }
    throw SynthesisError("gate is not Clifford");
}

Images build_images(GateKind k) {
    Images im;
    Gate g{k, 0, is_two_qubit(k) ? 1 : -1};
    const char gens[] = {'X', 'Z'};
    if (!is_two_qubit(k)) {
        Mat2 U = matrix_1q(g);
        for (int t = 0; t < 2; ++t) {
            Mat2 P = gens[t] == 'X' ? Mat2{0, 1, 1, 0} : Mat2{1, 0, 0, -1};
            std::vector<cplx> M(4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    cplx s = 0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) s += std::conj(U[a * 2 + i]) * P[a * 2 + b] * U[b * 2 + j];
                    M[i * 2 + j] = s;
                }
            im.img[t] = identify(M, 2);
        }
        return im;
    }
    im.arity = 2;
    Mat4 U = matrix_2q(g);
    for (int t = 0; t < 4; ++t) {
        PauliString p(2);
        p.set_letter(t / 2, gens[t % 2]);
        std::vector<cplx> P(16);
        auto pm = [](char c) -> Mat2 { return c == 'X' ? Mat2{0, 1, 1, 0} : c == 'Z' ? Mat2{1, 0, 0, -1} : Mat2{1, 0, 0, 1}; };
        Mat2 A = pm(p.letter(0)), B = pm(p.letter(1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int kk = 0; kk < 2; ++kk)
                    for (int l = 0; l < 2; ++l) P[(2 * i + kk) * 4 + (2 * j + l)] = A[i * 2 + j] * B[kk * 2 + l];
        std::vector<cplx> M(16);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cplx s = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += std::conj(U[a * 4 + i]) * P[a * 4 + b] * U[b * 4 + j];
                M[i * 4 + j] = s;
            }
        im.img[t] = identify(M, 4);
    }
    return im;
}

const Images &images_for(GateKind k) {
    static std::map<GateKind, Images> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, build_images(k)).first;
    return it->second;
}

PauliString embed(const PauliString &local, int n, int a, int b) {
    PauliString s(n);
    s.set_letter(a, local.letter(0));
    if (local.size() == 2) s.set_letter(b, local.letter(1));
    s.set_phase(local.phase());
    return s;
}

PauliString image_of_letter(const Images &im, int slot, char letter, int n, int a, int b) {
    if (letter == 'I') return PauliString(n);
    int q0 = a, q1 = b;
    PauliString X = embed(im.img[slot * 2 + 0], n, q0, q1);
    PauliString Z = embed(im.img[slot * 2 + 1], n, q0, q1);
    if (letter == 'X') return X;
    if (letter == 'Z') return Z;
    PauliString y = X * Z;  // Y = i X Z
    y.set_phase(y.phase() + 1);
    return y;
}

}  // namespace

void conjugate_gate(PauliString &p, const Gate &g) {
    if (!is_clifford(g)) throw UnsupportedGateError("non-Clifford gate " + kind_name(g.kind) + " in conjugation");
    const Images &im = images_for(g.kind);
    int n = p.size();
    int a = g.q0, b = g.q1;
    char la = p.letter(a);
    char lb = im.arity == 2 ? p.letter(b) : 'I';
    if (la == 'I' && lb == 'I') return;
    PauliString rest = p;
    rest.set_letter(a, 'I');
    if (im.arity == 2) rest.set_letter(b, 'I');
    PauliString r = rest * image_of_letter(im, 0, la, n, a, b);
    if (im.arity == 2) r = r * image_of_letter(im, 1, lb, n, a, b);
    p = r;
}

PauliString conjugate(const PauliString &p, const Circuit &c) {
    if (p.size() != c.num_qubits()) throw ParameterError("qubit count mismatch in conjugation");
    PauliString r = p;
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) conjugate_gate(r, *it);
    return r;
}

ParityFlowState::ParityFlowState(int n) : n_(n) {
    for (int i = 0; i < n; ++i) {
        z_.emplace_back(n);
        x_.emplace_back(n);
        z_.back().set(i);
        x_.back().set(i);
    }
}

void ParityFlowState::apply_cnot(int c, int t) {
    z_[t] ^= z_[c];
    x_[c] ^= x_[t];
}

void ParityFlowState::apply_swap(int a, int b) {
    std::swap(z_[a], z_[b]);
    std::swap(x_[a], x_[b]);
}

bool ParityFlowState::is_identity() const {
    for (int i = 0; i < n_; ++i) {
        BitVec e(n_);
        e.set(i);
        if (!(z_[i] == e) || !(x_[i] == e)) return false;
    }
    return true;
}

bool ParityFlowState::inverse_transpose_consistent() const {
    // rows of Z-labels and X-labels must pair to the identity: <z_i, x_j> = delta_ij
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            bool d = (z_[i] & x_[j]).popcount() % 2 == 1;
            if (d != (i == j)) return false;
        }
    return true;
}

ParityFlowState track_cnots(const Circuit &c) {
    ParityFlowState f(c.num_qubits());
    for (auto &g : c.gates()) {
        if (g.kind != GateKind::CNOT) throw UnsupportedGateError("parity flow tracks CNOT gates only");
        f.apply_cnot(g.q0, g.q1);
    }
    return f;
}

PhasePolynomial::PhasePolynomial(int n) : n_(n), linear_(n), q_(n, BitVec(n)) {}

void PhasePolynomial::add_quadratic(int i, int j) {
    if (i == j) {
        linear_.flip(i);
        return;
    }
    q_[i].flip(j);
    q_[j].flip(i);
}

void PhasePolynomial::add_product(const BitVec &a, const BitVec &b) {
    a.for_each_set([&](size_t i) { q_[i] ^= b; });
    b.for_each_set([&](size_t j) { q_[j] ^= a; });
    BitVec both = a & b;
    both.for_each_set([&](size_t i) {
        // the two symmetric updates toggled the diagonal twice; the self term is linear
        linear_.flip(i);
    });
    // clear any diagonal bits (they were toggled an even number of times, so they are already zero)
}

void PhasePolynomial::add(const PhasePolynomial &o) {
    if (o.n_ != n_) throw ParameterError("polynomial size mismatch");
    linear_ ^= o.linear_;
    for (int i = 0; i < n_; ++i) q_[i] ^= o.q_[i];
}

std::vector<std::pair<int, int>> PhasePolynomial::quadratic_terms() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        q_[i].for_each_set([&](size_t j) {
            if (static_cast<int>(j) > i) out.emplace_back(i, static_cast<int>(j));
        });
    return out;
}

int PhasePolynomial::quadratic_support_count() const {
    size_t c = 0;
    for (auto &r : q_) c += r.popcount();
    return static_cast<int>(c / 2);
}

bool PhasePolynomial::is_zero() const {
    if (linear_.any()) return false;
    for (auto &r : q_)
        if (r.any()) return false;
    return true;
}

int PhasePolynomial::evaluate(const std::vector<int> &x) const {
    int v = 0;
    for (int i = 0; i < n_; ++i) {
        if (!x[i]) continue;
        if (linear_.get(i)) v ^= 1;
        for (int j = i + 1; j < n_; ++j)
            if (x[j] && q_[i].get(j)) v ^= 1;
    }
    return v;
}

int PhasePolynomial::evaluate_bits(uint64_t bits) const {
    std::vector<int> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = (bits >> i) & 1;
    return evaluate(x);
}

nlohmann::json PhasePolynomial::to_json() const {
    nlohmann::json q = nlohmann::json::array();
    for (auto &[i, j] : quadratic_terms()) q.push_back({i, j});
    return {{"linear", linear_.ones()}, {"quadratic", q}};
}

PhasePolynomial conjugated_cz_expansion(const ParityFlowState &flow, int i, int j) {
    if (i == j) throw ParameterError("conjugated CZ needs distinct qubits");
    PhasePolynomial p(flow.size());
    p.add_product(flow.z_label(i), flow.z_label(j));
    return p;
}

PhasePolynomial phase_polynomial(const Circuit &c) {
    int n = c.num_qubits();
    ParityFlowState f(n);
    PhasePolynomial p(n);
    for (auto &g : c.gates()) {
        switch (g.kind) {
            case GateKind::CNOT: f.apply_cnot(g.q0, g.q1); break;
            case GateKind::SWAP: f.apply_swap(g.q0, g.q1); break;
            case GateKind::CZ: p.add_product(f.z_label(g.q0), f.z_label(g.q1)); break;
            case GateKind::Z: p.add_linear(f.z_label(g.q0)); break;
            default: throw UnsupportedGateError("phase polynomial accepts CNOT, SWAP, CZ and Z only");
        }
    }
    if (!f.is_identity()) throw NotDiagonalError("net CNOT map of the circuit is not the identity");
    return p;
}

PhasePolynomial inversion_form(const CanonicalOrdering &m, const CanonicalOrdering &mp) {
    PhasePolynomial p(m.size());
    for (auto &[i, j] : inversion_pairs(m, mp)) p.add_quadratic(i, j);
    return p;
}

MajoranaPair majorana_pair_index(int idx, const CanonicalOrdering &m) {
    int n = m.size();
    if (idx < 0 || idx >= n) throw ShapeError("mode site out of bounds");
    MajoranaPair mp;
    mp.mode = idx;
    mp.even_string = PauliString(n);
    int rk = m.rank(idx);
    for (int r = 0; r < rk; ++r) mp.even_string.set_letter(m.index_at(r), 'Z');
    mp.odd_string = mp.even_string;
    mp.even_string.set_letter(idx, 'X');
    mp.odd_string.set_letter(idx, 'Y');
    return mp;
}

MajoranaPair majorana_pair(const Site &mode_site, const CanonicalOrdering &m) {
    if (!m.shape().contains(mode_site)) throw ShapeError("mode site out of bounds");
    return majorana_pair_index(m.shape().index(mode_site), m);
}

std::pair<PauliString, PauliString> hopping_string(const Site &i, const Site &j, const CanonicalOrdering &m) {
    int a = m.shape().index(i), b = m.shape().index(j);
    if (a == b) throw ParameterError("hopping needs distinct sites");
    int ra = m.rank(a), rb = m.rank(b);
    int lo = std::min(ra, rb), hi = std::max(ra, rb);
    PauliString xx(m.size());
    for (int r = lo + 1; r < hi; ++r) xx.set_letter(m.index_at(r), 'Z');
    PauliString yy = xx;
    xx.set_letter(a, 'X');
    xx.set_letter(b, 'X');
    yy.set_letter(a, 'Y');
    yy.set_letter(b, 'Y');
    return {xx, yy};
}

}  // namespace djw
