// SPDX-License-Identifier: MIT
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace djw {

// Fixed-width packed bit-vector.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    size_t num_words() const { return w_.size(); }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec &operator^=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    BitVec &operator&=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    BitVec &operator|=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec &b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec &b) { return a |= b; }
    bool operator==(const BitVec &o) const { return n_ == o.n_ && w_ == o.w_; }

    size_t popcount() const {
        size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool intersects(const BitVec &o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    template <typename F>
    void for_each_set(F &&f) const {
        for (size_t k = 0; k < w_.size(); ++k) {
            uint64_t x = w_[k];
            while (x) {
                int b = std::countr_zero(x);
                f(k * 64 + b);
                x &= x - 1;
            }
        }
    }
    std::vector<int> ones() const {
        std::vector<int> out;
        for_each_set([&](size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

    uint64_t word(size_t k) const { return w_[k]; }
    uint64_t &word(size_t k) { return w_[k]; }

    size_t hash() const {
        size_t h = n_;
        for (auto x : w_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<uint64_t>{}(x);
        return h;
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace djw
