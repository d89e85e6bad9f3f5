// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace djw {

using Site = std::vector<int>;

// Axis-aligned product grid; sites are indexed row-major (axis 0 slowest).
class LatticeShape {
  public:
    LatticeShape() = default;
    explicit LatticeShape(std::vector<int> lengths);
    static LatticeShape grid2d(int rows, int cols) { return LatticeShape({rows, cols}); }

    int dims() const { return static_cast<int>(lengths_.size()); }
    int length(int axis) const { return lengths_.at(axis); }
    const std::vector<int> &lengths() const { return lengths_; }
    int size() const { return n_; }
    int rows() const { return lengths_.at(0); }
    int cols() const { return lengths_.at(1); }

    int index(const Site &s) const;
    Site site(int index) const;
    bool contains(const Site &s) const;
    int distance_l1(int a, int b) const;
    int distance_linf(int a, int b) const;
    std::vector<std::pair<int, int>> nn_edges() const;

    bool operator==(const LatticeShape &o) const { return lengths_ == o.lengths_; }
    std::string str() const;
    static LatticeShape parse(const std::string &text);

  private:
    std::vector<int> lengths_;
    std::vector<int> stride_;
    int n_ = 0;
};

// Bijection from sites (row-major index) to JW ranks.
class CanonicalOrdering {
  public:
    CanonicalOrdering() = default;
    CanonicalOrdering(LatticeShape shape, std::vector<int> rank_by_index);

    const LatticeShape &shape() const { return shape_; }
    int size() const { return shape_.size(); }
    int rank(int index) const { return rank_[index]; }
    int rank_of(const Site &s) const { return rank_[shape_.index(s)]; }
    int index_at(int rank) const { return site_[rank]; }
    Site site_of(int rank) const { return shape_.site(site_[rank]); }
    const std::vector<int> &ranks() const { return rank_; }
    const std::vector<int> &sites_by_rank() const { return site_; }

    CanonicalOrdering reversed() const;
    bool operator==(const CanonicalOrdering &o) const { return shape_ == o.shape_ && rank_ == o.rank_; }

    nlohmann::json to_json() const;
    static CanonicalOrdering from_json(const nlohmann::json &j);

  private:
    LatticeShape shape_;
    std::vector<int> rank_;
    std::vector<int> site_;
};

// sigma_1 (lowest) first.
struct DimHierarchy {
    std::vector<int> order;
    static DimHierarchy standard(int d);
    void validate(int d) const;
};

struct Interval {
    int begin = 0;
    int end = 0;  // exclusive
    int width() const { return end - begin; }
    bool operator==(const Interval &o) const = default;
};

using IntervalPartition = std::vector<Interval>;

struct BoustrophedonSpec {
    IntervalPartition column_partition;
    IntervalPartition row_partition;  // 3D only

    static BoustrophedonSpec uniform(int length, int width, int offset = 0);
    static BoustrophedonSpec from_widths(const std::vector<int> &widths);
    std::string str() const;
    static BoustrophedonSpec parse(const std::string &text);
};

void validate_partition(const IntervalPartition &p, int length);

struct SubgridPartition {
    int delta = 1;
    std::vector<int> shift;
    // each block is a list of per-axis intervals
    std::vector<std::vector<Interval>> blocks;
};

CanonicalOrdering z_pattern(const LatticeShape &shape);
CanonicalOrdering s_pattern(const LatticeShape &shape);
CanonicalOrdering d_dim_s_pattern(const LatticeShape &shape, const DimHierarchy &h);
CanonicalOrdering boustrophedon_ordering(const BoustrophedonSpec &spec, const LatticeShape &shape);
std::vector<SubgridPartition> subgrid_partitions(const LatticeShape &shape, int delta);
std::vector<std::pair<int, int>> inversion_pairs(const CanonicalOrdering &m, const CanonicalOrdering &mp);
int64_t inversion_count(const CanonicalOrdering &m, const CanonicalOrdering &mp);

bool is_hamiltonian_path(const CanonicalOrdering &m);

// rho_r(c) on an axis of length L
inline int rho(int r, int c, int L) { return (r & 1) ? L - 1 - c : c; }

}  // namespace djw
