// SPDX-License-Identifier: MIT
#include "djw/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "djw/errors.hpp"

namespace djw {

LatticeShape::LatticeShape(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw DimensionError("lattice needs at least one axis");
    stride_.assign(lengths_.size(), 1);
    n_ = 1;
    for (int a = dims() - 1; a >= 0; --a) {
        if (lengths_[a] < 1) throw DimensionError("axis length must be positive");
        stride_[a] = n_;
        n_ *= lengths_[a];
    }
}

int LatticeShape::index(const Site &s) const {
    if (static_cast<int>(s.size()) != dims()) throw DimensionError("site has wrong dimension");
    int idx = 0;
    for (int a = 0; a < dims(); ++a) {
        if (s[a] < 0 || s[a] >= lengths_[a]) throw ShapeError("site out of bounds");
        idx += s[a] * stride_[a];
    }
    return idx;
}

Site LatticeShape::site(int index) const {
    Site s(lengths_.size());
    for (int a = 0; a < dims(); ++a) {
        s[a] = index / stride_[a];
        index %= stride_[a];
    }
    return s;
}

bool LatticeShape::contains(const Site &s) const {
    if (static_cast<int>(s.size()) != dims()) return false;
    for (int a = 0; a < dims(); ++a)
        if (s[a] < 0 || s[a] >= lengths_[a]) return false;
    return true;
}

int LatticeShape::distance_l1(int a, int b) const {
    int d = 0;
    for (int ax = 0; ax < dims(); ++ax) {
        int xa = (a / stride_[ax]) % lengths_[ax];
        int xb = (b / stride_[ax]) % lengths_[ax];
        d += std::abs(xa - xb);
    }
    return d;
}

int LatticeShape::distance_linf(int a, int b) const {
    int d = 0;
    for (int ax = 0; ax < dims(); ++ax) {
        int xa = (a / stride_[ax]) % lengths_[ax];
        int xb = (b / stride_[ax]) % lengths_[ax];
        d = std::max(d, std::abs(xa - xb));
    }
    return d;
}

std::vector<std::pair<int, int>> LatticeShape::nn_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i) {
        Site s = site(i);
        for (int a = 0; a < dims(); ++a) {
            if (s[a] + 1 < lengths_[a]) out.emplace_back(i, i + stride_[a]);
        }
    }
    return out;
}

std::string LatticeShape::str() const {
    std::ostringstream os;
    for (int a = 0; a < dims(); ++a) os << (a ? "x" : "") << lengths_[a];
    return os.str();
}

LatticeShape LatticeShape::parse(const std::string &text) {
    std::vector<int> lens;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, 'x')) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
            throw ParseError("bad shape '" + text + "'");
        lens.push_back(std::stoi(tok));
    }
    if (lens.empty()) throw ParseError("bad shape '" + text + "'");
    return LatticeShape(lens);
}

CanonicalOrdering::CanonicalOrdering(LatticeShape shape, std::vector<int> rank_by_index)
    : shape_(std::move(shape)), rank_(std::move(rank_by_index)) {
    int n = shape_.size();
    if (static_cast<int>(rank_.size()) != n) throw ShapeError("rank table size mismatch");
    site_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = rank_[i];
        if (r < 0 || r >= n || site_[r] != -1) throw OrderingError("ranks are not a bijection");
        site_[r] = i;
    }
}

CanonicalOrdering CanonicalOrdering::reversed() const {
    std::vector<int> r(rank_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = size() - 1 - rank_[i];
    return CanonicalOrdering(shape_, r);
}

nlohmann::json CanonicalOrdering::to_json() const {
    return {{"shape", shape_.lengths()}, {"ranks", rank_}};
}

CanonicalOrdering CanonicalOrdering::from_json(const nlohmann::json &j) {
    return CanonicalOrdering(LatticeShape(j.at("shape").get<std::vector<int>>()),
                             j.at("ranks").get<std::vector<int>>());
}

DimHierarchy DimHierarchy::standard(int d) {
    DimHierarchy h;
    for (int a = d - 1; a >= 0; --a) h.order.push_back(a);
    return h;
}

void DimHierarchy::validate(int d) const {
    if (static_cast<int>(order.size()) != d) throw DimensionError("hierarchy length mismatch");
    std::vector<int> s = order;
    std::sort(s.begin(), s.end());
    for (int a = 0; a < d; ++a)
        if (s[a] != a) throw DimensionError("hierarchy is not a permutation of the axes");
}

BoustrophedonSpec BoustrophedonSpec::uniform(int length, int width, int offset) {
    BoustrophedonSpec b;
    int start = 0;
    if (offset > 0) {
        b.column_partition.push_back({0, std::min(offset, length)});
        start = offset;
    }
    for (int a = start; a < length; a += width) b.column_partition.push_back({a, std::min(a + width, length)});
    return b;
}

BoustrophedonSpec BoustrophedonSpec::from_widths(const std::vector<int> &widths) {
    BoustrophedonSpec b;
    int a = 0;
    for (int w : widths) {
        b.column_partition.push_back({a, a + w});
        a += w;
    }
    return b;
}

static std::string partition_str(const IntervalPartition &p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].width();
    return os.str();
}

std::string BoustrophedonSpec::str() const {
    std::string s = partition_str(column_partition);
    if (!row_partition.empty()) s += ";" + partition_str(row_partition);
    return s;
}

static IntervalPartition parse_widths(const std::string &t) {
    IntervalPartition p;
    std::istringstream is(t);
    std::string tok;
    int a = 0;
    while (std::getline(is, tok, ',')) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
            throw ParseError("bad block width list '" + t + "'");
        int w = std::stoi(tok);
        if (w < 1) throw ParseError("block width must be positive");
        p.push_back({a, a + w});
        a += w;
    }
    return p;
}

BoustrophedonSpec BoustrophedonSpec::parse(const std::string &text) {
    BoustrophedonSpec b;
    auto semi = text.find(';');
    b.column_partition = parse_widths(text.substr(0, semi));
    if (semi != std::string::npos) b.row_partition = parse_widths(text.substr(semi + 1));
    return b;
}

void validate_partition(const IntervalPartition &p, int length) {
    int a = 0;
    for (auto &iv : p) {
        if (iv.begin != a || iv.width() < 1) throw SpecError("partition blocks must be consecutive and non-empty");
        a = iv.end;
    }
    if (a != length) throw SpecError("partition does not cover the axis");
}

CanonicalOrdering z_pattern(const LatticeShape &shape) {
    if (shape.dims() != 2) throw DimensionError("z_pattern needs a 2D shape");
    int R = shape.rows(), C = shape.cols();
    std::vector<int> ranks(shape.size());
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) ranks[r * C + c] = R * c + (R - 1 - r);
    return CanonicalOrdering(shape, ranks);
}

CanonicalOrdering s_pattern(const LatticeShape &shape) {
    if (shape.dims() != 2) throw DimensionError("s_pattern needs a 2D shape");
    int R = shape.rows(), C = shape.cols();
    std::vector<int> ranks(shape.size());
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < C; ++c) ranks[r * C + c] = C * r + rho(r, c, C);
    return CanonicalOrdering(shape, ranks);
}

CanonicalOrdering d_dim_s_pattern(const LatticeShape &shape, const DimHierarchy &h) {
    int d = shape.dims();
    h.validate(d);
    std::vector<int> ranks(shape.size());
    for (int idx = 0; idx < shape.size(); ++idx) {
        Site v = shape.site(idx);
        int rank = 0, weight = 1;
        for (int i = 0; i < d; ++i) {
            int higher = 0;
            for (int k = i + 1; k < d; ++k) higher += v[h.order[k]];
            int ax = h.order[i];
            rank += weight * rho(higher, v[ax], shape.length(ax));
            weight *= shape.length(ax);
        }
        ranks[idx] = rank;
    }
    return CanonicalOrdering(shape, ranks);
}

CanonicalOrdering boustrophedon_ordering(const BoustrophedonSpec &spec, const LatticeShape &shape) {
    std::vector<int> ranks(shape.size());
    if (shape.dims() == 2) {
        int R = shape.rows(), C = shape.cols();
        validate_partition(spec.column_partition, C);
        int offset = 0;
        for (auto &iv : spec.column_partition) {
            int w = iv.width();
            for (int r = 0; r < R; ++r)
                for (int c = iv.begin; c < iv.end; ++c) ranks[r * C + c] = offset + w * r + rho(r, c - iv.begin, w);
            offset += w * R;
        }
        return CanonicalOrdering(shape, ranks);
    }
    if (shape.dims() == 3) {
        // axes (p, r, c); each subgrid carries a 3D S pattern with c lowest, then r, then p
        int P = shape.length(0), R = shape.length(1), C = shape.length(2);
        validate_partition(spec.column_partition, C);
        IntervalPartition rows = spec.row_partition.empty() ? IntervalPartition{{0, R}} : spec.row_partition;
        validate_partition(rows, R);
        int offset = 0;
        for (auto &rb : rows) {
            for (auto &cb : spec.column_partition) {
                int wr = rb.width(), wc = cb.width();
                for (int p = 0; p < P; ++p)
                    for (int r = rb.begin; r < rb.end; ++r)
                        for (int c = cb.begin; c < cb.end; ++c) {
                            int lr = r - rb.begin, lc = c - cb.begin;
                            int rank = rho(p + lr, lc, wc) + wc * rho(p, lr, wr) + wc * wr * p;
                            ranks[(p * R + r) * C + c] = offset + rank;
                        }
                offset += wr * wc * P;
            }
        }
        return CanonicalOrdering(shape, ranks);
    }
    throw DimensionError("boustrophedon ordering supports 2D and 3D shapes");
}

static std::vector<Interval> axis_intervals(int L, int delta, int b) {
    std::vector<Interval> out;
    for (int j = -delta * b; j < L; j += 2 * delta) {
        int lo = std::max(0, j), hi = std::min(L - 1, j + 2 * delta - 1);
        if (lo <= hi) out.push_back({lo, hi + 1});
    }
    return out;
}

std::vector<SubgridPartition> subgrid_partitions(const LatticeShape &shape, int delta) {
    int d = shape.dims();
    if (delta < 1) throw ParameterError("delta must be positive");
    for (int a = 0; a < d; ++a)
        if (delta > shape.length(a)) throw ParameterError("delta exceeds an axis length");
    std::vector<SubgridPartition> out;
    for (int mask = 0; mask < (1 << d); ++mask) {
        SubgridPartition part;
        part.delta = delta;
        std::vector<std::vector<Interval>> per_axis;
        for (int a = 0; a < d; ++a) {
            int b = (mask >> a) & 1;
            part.shift.push_back(b);
            per_axis.push_back(axis_intervals(shape.length(a), delta, b));
        }
        std::vector<size_t> ix(d, 0);
        while (true) {
            std::vector<Interval> block;
            for (int a = 0; a < d; ++a) block.push_back(per_axis[a][ix[a]]);
            part.blocks.push_back(block);
            int a = d - 1;
            while (a >= 0 && ++ix[a] == per_axis[a].size()) ix[a--] = 0;
            if (a < 0) break;
        }
        out.push_back(std::move(part));
    }
    return out;
}

std::vector<std::pair<int, int>> inversion_pairs(const CanonicalOrdering &m, const CanonicalOrdering &mp) {
    if (!(m.shape() == mp.shape())) throw ShapeError("orderings live on different shapes");
    std::vector<std::pair<int, int>> out;
    int n = m.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((m.rank(i) < m.rank(j)) != (mp.rank(i) < mp.rank(j))) out.emplace_back(i, j);
    return out;
}

static int64_t merge_count(std::vector<int> &a, std::vector<int> &tmp, size_t lo, size_t hi) {
    if (hi - lo < 2) return 0;
    size_t mid = (lo + hi) / 2;
    int64_t c = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
    size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j])
            tmp[k++] = a[i++];
        else {
            c += static_cast<int64_t>(mid - i);
            tmp[k++] = a[j++];
        }
    }
    while (i < mid) tmp[k++] = a[i++];
    while (j < hi) tmp[k++] = a[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
    return c;
}

int64_t inversion_count(const CanonicalOrdering &m, const CanonicalOrdering &mp) {
    if (!(m.shape() == mp.shape())) throw ShapeError("orderings live on different shapes");
    std::vector<int> seq(m.size()), tmp(m.size());
    for (int r = 0; r < m.size(); ++r) seq[r] = mp.rank(m.index_at(r));
    return merge_count(seq, tmp, 0, seq.size());
}

bool is_hamiltonian_path(const CanonicalOrdering &m) {
    for (int r = 0; r + 1 < m.size(); ++r)
        if (m.shape().distance_l1(m.index_at(r), m.index_at(r + 1)) != 1) return false;
    return true;
}

}  // namespace djw
