#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "uqh/scalar.hpp"

namespace uqh {

template <class S>
struct ST;

template <>
struct ST<Cyc> {
    static bool is_zero(const Cyc& x, double) { return x.is_zero(); }
    static Cyc inv(const Cyc& x) { return x.inverse(); }
    static double mag(const Cyc&) { return 1.0; }
};
template <>
struct ST<CD> {
    static bool is_zero(CD x, double tol) { return std::abs(x) <= tol; }
    static CD inv(CD x) { return CD(1.0, 0.0) / x; }
    static double mag(CD x) { return std::abs(x); }
};

// Column-major sparse matrix; rows within a column kept sorted.
template <class S>
class SpMat {
public:
    SpMat() : nr_(0), nc_(0) {}
    SpMat(int nr, int nc) : nr_(nr), nc_(nc), cols_(nc) {}

    int rows() const { return nr_; }
    int cols() const { return nc_; }
    const std::vector<std::pair<int, S>>& col(int j) const { return cols_[j]; }

    void set(int i, int j, const S& v) {
        auto& c = cols_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, S>& e, int row) { return e.first < row; });
        if (it != c.end() && it->first == i) it->second = v;
        else
            c.insert(it, {i, v});
    }
    void add_at(int i, int j, const S& v) {
        auto& c = cols_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, S>& e, int row) { return e.first < row; });
        if (it != c.end() && it->first == i) it->second = it->second + v;
        else
            c.insert(it, {i, v});
    }
    // entry lookup; zero must be supplied by the caller
    const S* find(int i, int j) const {
        const auto& c = cols_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, S>& e, int row) { return e.first < row; });
        if (it != c.end() && it->first == i) return &it->second;
        return nullptr;
    }

    static SpMat identity(int n, const S& one) {
        SpMat m(n, n);
        for (int i = 0; i < n; ++i) m.cols_[i].push_back({i, one});
        return m;
    }

    void drop_zeros(double tol = 0.0) {
        for (auto& c : cols_)
            c.erase(std::remove_if(c.begin(), c.end(),
                                   [&](const std::pair<int, S>& e) { return ST<S>::is_zero(e.second, tol); }),
                    c.end());
    }

    bool is_zero(double tol = 0.0) const {
        for (const auto& c : cols_)
            for (const auto& [i, v] : c)
                if (!ST<S>::is_zero(v, tol)) return false;
        return true;
    }

    size_t nnz() const {
        size_t n = 0;
        for (const auto& c : cols_) n += c.size();
        return n;
    }

    friend SpMat operator*(const SpMat& a, const SpMat& b) {
        if (a.nc_ != b.nr_) throw ShapeError("SpMat: dimension mismatch in product");
        SpMat out(a.nr_, b.nc_);
        std::vector<S> acc(a.nr_);
        std::vector<int> touched;
        std::vector<char> seen(a.nr_, 0);
        for (int j = 0; j < b.nc_; ++j) {
            touched.clear();
            for (const auto& [k, bv] : b.cols_[j]) {
                for (const auto& [i, av] : a.cols_[k]) {
                    if (!seen[i]) {
                        seen[i] = 1;
                        touched.push_back(i);
                        acc[i] = av * bv;
                    } else {
                        acc[i] = acc[i] + av * bv;
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& c = out.cols_[j];
            c.reserve(touched.size());
            for (int i : touched) {
                if (!ST<S>::is_zero(acc[i], 0.0)) c.push_back({i, acc[i]});
                seen[i] = 0;
            }
            for (int i : touched) seen[i] = 0;
        }
        return out;
    }

    friend SpMat operator+(const SpMat& a, const SpMat& b) { return combine(a, b, false); }
    friend SpMat operator-(const SpMat& a, const SpMat& b) { return combine(a, b, true); }

    SpMat operator-() const {
        SpMat out = *this;
        for (auto& c : out.cols_)
            for (auto& e : c) e.second = -e.second;
        return out;
    }

    SpMat scaled(const S& s) const {
        SpMat out = *this;
        for (auto& c : out.cols_)
            for (auto& e : c) e.second = e.second * s;
        return out;
    }

    SpMat transposed() const {
        SpMat out(nc_, nr_);
        for (int j = 0; j < nc_; ++j)
            for (const auto& [i, v] : cols_[j]) out.cols_[i].push_back({j, v});
        for (auto& c : out.cols_)
            std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    // Kronecker product, index convention (ia, ib) -> ia*B.rows + ib
    friend SpMat kron(const SpMat& a, const SpMat& b) {
        SpMat out(a.nr_ * b.nr_, a.nc_ * b.nc_);
        for (int ja = 0; ja < a.nc_; ++ja)
            for (const auto& [ia, va] : a.cols_[ja])
                for (int jb = 0; jb < b.nc_; ++jb) {
                    auto& c = out.cols_[ja * b.nc_ + jb];
                    for (const auto& [ib, vb] : b.cols_[jb]) c.push_back({ia * b.nr_ + ib, va * vb});
                }
        for (auto& c : out.cols_)
            std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    std::vector<std::vector<S>> to_dense(const S& zero) const {
        std::vector<std::vector<S>> d(nr_, std::vector<S>(nc_, zero));
        for (int j = 0; j < nc_; ++j)
            for (const auto& [i, v] : cols_[j]) d[i][j] = v;
        return d;
    }

    static SpMat from_dense(const std::vector<std::vector<S>>& d, double tol = 0.0) {
        int nr = int(d.size()), nc = nr ? int(d[0].size()) : 0;
        SpMat out(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j)
                if (!ST<S>::is_zero(d[i][j], tol)) out.cols_[j].push_back({i, d[i][j]});
        return out;
    }

    // y = M x for a sparse vector x given as (index, value) pairs
    std::vector<std::pair<int, S>> apply(const std::vector<std::pair<int, S>>& x) const {
        std::vector<S> acc(nr_);
        std::vector<char> seen(nr_, 0);
        std::vector<int> touched;
        for (const auto& [k, xv] : x)
            for (const auto& [i, av] : cols_[k]) {
                if (!seen[i]) {
                    seen[i] = 1;
                    touched.push_back(i);
                    acc[i] = av * xv;
                } else
                    acc[i] = acc[i] + av * xv;
            }
        std::sort(touched.begin(), touched.end());
        std::vector<std::pair<int, S>> out;
        for (int i : touched)
            if (!ST<S>::is_zero(acc[i], 0.0)) out.push_back({i, acc[i]});
        return out;
    }

private:
    static SpMat combine(const SpMat& a, const SpMat& b, bool sub) {
        if (a.nr_ != b.nr_ || a.nc_ != b.nc_) throw ShapeError("SpMat: dimension mismatch in sum");
        SpMat out(a.nr_, a.nc_);
        for (int j = 0; j < a.nc_; ++j) {
            const auto& ca = a.cols_[j];
            const auto& cb = b.cols_[j];
            auto& co = out.cols_[j];
            size_t ia = 0, ib = 0;
            while (ia < ca.size() || ib < cb.size()) {
                if (ib == cb.size() || (ia < ca.size() && ca[ia].first < cb[ib].first)) {
                    co.push_back(ca[ia++]);
                } else if (ia == ca.size() || cb[ib].first < ca[ia].first) {
                    co.push_back({cb[ib].first, sub ? -cb[ib].second : cb[ib].second});
                    ++ib;
                } else {
                    S v = sub ? ca[ia].second - cb[ib].second : ca[ia].second + cb[ib].second;
                    if (!ST<S>::is_zero(v, 0.0)) co.push_back({ca[ia].first, v});
                    ++ia;
                    ++ib;
                }
            }
        }
        return out;
    }

    int nr_, nc_;
    std::vector<std::vector<std::pair<int, S>>> cols_;
};

// --- dense elimination ------------------------------------------------------

// Row echelon reduction in place; returns pivot columns.  Exact for Cyc,
// tolerance-pivoted for complex.
template <class S>
std::vector<int> row_reduce(std::vector<std::vector<S>>& m, double tol = 0.0) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int nr = int(m.size()), nc = int(m[0].size());
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int best = -1;
        double best_mag = tol;
        for (int i = row; i < nr; ++i) {
            if (ST<S>::is_zero(m[i][col], tol)) continue;
            double g = ST<S>::mag(m[i][col]);
            if (best == -1 || g > best_mag) {
                best = i;
                best_mag = g;
            }
            if (best != -1 && tol == 0.0) break;  // exact: first nonzero is fine
        }
        if (best == -1) continue;
        std::swap(m[row], m[best]);
        S pinv = ST<S>::inv(m[row][col]);
        for (int j = col; j < nc; ++j) m[row][j] = m[row][j] * pinv;
        for (int i = 0; i < nr; ++i) {
            if (i == row || ST<S>::is_zero(m[i][col], tol)) continue;
            S f = m[i][col];
            for (int j = col; j < nc; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
int rank_of(std::vector<std::vector<S>> m, double tol = 0.0) {
    return int(row_reduce(m, tol).size());
}

// Basis of the right nullspace of an nr x nc matrix.
template <class S>
std::vector<std::vector<S>> nullspace(std::vector<std::vector<S>> m, const S& zero, const S& one,
                                      double tol = 0.0) {
    int nc = m.empty() ? 0 : int(m[0].size());
    auto pivots = row_reduce(m, tol);
    std::vector<char> is_pivot(nc, 0);
    for (int p : pivots) is_pivot[p] = 1;
    std::vector<std::vector<S>> basis;
    for (int freec = 0; freec < nc; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<S> v(nc, zero);
        v[freec] = one;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Dense inverse (throws on singular input).
template <class S>
std::vector<std::vector<S>> dense_inverse(std::vector<std::vector<S>> m, const S& zero, const S& one,
                                          double tol = 0.0) {
    int n = int(m.size());
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, zero);
        m[i][n + i] = one;
    }
    auto pivots = row_reduce(m, tol);
    if (int(pivots.size()) != n || pivots.back() != n - 1)
        throw DomainError("dense_inverse: singular matrix");
    std::vector<std::vector<S>> inv(n, std::vector<S>(n, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

}  // namespace uqh
