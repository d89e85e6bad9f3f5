// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "djw/bitvec.hpp"
#include "djw/circuit.hpp"
#include "djw/lattice.hpp"

namespace djw {

// phase * prod_q sigma_q where sigma is I/X/Y/Z by (x_q, z_q); phase is i^k.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(int n) : n_(n), x_(n), z_(n) {}

    static PauliString single(int n, int q, char p);
    static PauliString parse(const std::string &text);

    int size() const { return n_; }
    int phase() const { return phase_; }
    void set_phase(int k) { phase_ = ((k % 4) + 4) % 4; }
    const BitVec &x() const { return x_; }
    const BitVec &z() const { return z_; }
    char letter(int q) const;
    void set_letter(int q, char p);

    PauliString operator*(const PauliString &o) const;
    bool operator==(const PauliString &o) const { return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_; }
    bool commutes(const PauliString &o) const;
    bool is_hermitian() const { return phase_ % 2 == 0; }
    bool same_up_to_sign(const PauliString &o) const { return x_ == o.x_ && z_ == o.z_; }
    int weight() const { return static_cast<int>((x_ | z_).popcount()); }

    std::string str() const;

  private:
    int n_ = 0;
    int phase_ = 0;
    BitVec x_, z_;
};

// C^dagger p C, gates processed in reverse time order.
PauliString conjugate(const PauliString &p, const Circuit &c);
// g^dagger p g for a single Clifford gate
void conjugate_gate(PauliString &p, const Gate &g);

class ParityFlowState {
  public:
    explicit ParityFlowState(int n = 0);
    int size() const { return n_; }
    void apply_cnot(int c, int t);
    void apply_swap(int a, int b);
    const BitVec &z_label(int i) const { return z_[i]; }
    const BitVec &x_label(int i) const { return x_[i]; }
    const std::vector<BitVec> &z_labels() const { return z_; }
    const std::vector<BitVec> &x_labels() const { return x_; }
    bool is_identity() const;
    bool inverse_transpose_consistent() const;

  private:
    int n_;
    std::vector<BitVec> z_, x_;
};

ParityFlowState track_cnots(const Circuit &c);

class PhasePolynomial {
  public:
    PhasePolynomial() = default;
    explicit PhasePolynomial(int n);

    int size() const { return n_; }
    void add_linear(int i) { linear_.flip(i); }
    void add_linear(const BitVec &v) { linear_ ^= v; }
    void add_quadratic(int i, int j);
    // adds (sum_{i in a} x_i)(sum_{j in b} x_j)
    void add_product(const BitVec &a, const BitVec &b);
    void add(const PhasePolynomial &o);

    const BitVec &linear() const { return linear_; }
    bool quadratic(int i, int j) const { return q_[i].get(j); }
    std::vector<std::pair<int, int>> quadratic_terms() const;
    int quadratic_support_count() const;
    bool is_zero() const;
    bool is_pi_over_2_graded() const { return true; }
    int evaluate(const std::vector<int> &x) const;
    int evaluate_bits(uint64_t bits) const;
    bool operator==(const PhasePolynomial &o) const { return n_ == o.n_ && linear_ == o.linear_ && q_ == o.q_; }

    nlohmann::json to_json() const;

  private:
    int n_ = 0;
    BitVec linear_;
    std::vector<BitVec> q_;  // symmetric, zero diagonal
};

PhasePolynomial conjugated_cz_expansion(const ParityFlowState &flow, int i, int j);
// Exact phase function of a CNOT / CZ / Z / SWAP circuit whose net linear map is the identity.
PhasePolynomial phase_polynomial(const Circuit &c);
// sum over inversion pairs of x_i x_j
PhasePolynomial inversion_form(const CanonicalOrdering &m, const CanonicalOrdering &mp);

struct MajoranaPair {
    int mode = 0;
    PauliString even_string, odd_string;
};

MajoranaPair majorana_pair(const Site &mode_site, const CanonicalOrdering &m);
MajoranaPair majorana_pair_index(int site_index, const CanonicalOrdering &m);
std::pair<PauliString, PauliString> hopping_string(const Site &i, const Site &j, const CanonicalOrdering &m);

}  // namespace djw
