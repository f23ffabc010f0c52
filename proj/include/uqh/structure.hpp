#pragma once

#include <optional>

#include "uqh/module.hpp"

namespace uqh {

// --- weight partition helpers ------------------------------------------------

// Groups basis indices by weight (exact equality; numeric within 1e-9).
template <class B>
std::vector<std::vector<int>> weight_blocks(const ModP<B>& m) {
    std::vector<std::vector<int>> blocks;
    std::vector<typename B::W> reps;
    for (int i = 0; i < m->dim; ++i) {
        bool placed = false;
        for (size_t b = 0; b < reps.size(); ++b)
            if (B::weq(m->wts[i], reps[b], 1e-9)) {
                blocks[b].push_back(i);
                placed = true;
                break;
            }
        if (!placed) {
            reps.push_back(m->wts[i]);
            blocks.push_back({i});
        }
    }
    return blocks;
}

template <class B>
std::vector<int> weight_space(const ModP<B>& m, typename B::W w) {
    std::vector<int> idx;
    for (int i = 0; i < m->dim; ++i)
        if (B::weq(m->wts[i], w, 1e-9)) idx.push_back(i);
    return idx;
}

// Inverts a weight-preserving operator block-by-block.
template <class B>
SpMat<typename B::S> blockwise_inverse(const ModP<B>& m, const SpMat<typename B::S>& M, double tol = 0.0) {
    using S = typename B::S;
    S zero = B::zero(m->f), one = B::one(m->f);
    SpMat<S> out(m->dim, m->dim);
    for (const auto& blk : weight_blocks<B>(m)) {
        int n = int(blk.size());
        std::vector<std::vector<S>> d(n, std::vector<S>(n, zero));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (const S* v = M.find(blk[a], blk[b])) d[a][b] = *v;
        auto inv = dense_inverse<S>(std::move(d), zero, one, tol);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!ST<S>::is_zero(inv[a][b], tol)) out.set(blk[a], blk[b], inv[a][b]);
    }
    return out;
}

// --- Casimir ------------------------------------------------------------------

// c_m = (q^{m+1} + q^{-m-1}) / {1}^2, the Casimir scalar on S_m
inline Cyc casimir_scalar(Field f, long m) {
    Cyc num = qpow(f, m + 1) + qpow(f, -m - 1);
    Cyc br = qnum(f, 1);
    return num * (br * br).inverse();
}
inline CD casimir_scalar_c(Field f, CD hw_shifted) {
    // c_alpha = (q^{alpha+r} + q^{-alpha-r}) / {1}^2 at alpha = hw_shifted
    CD num = qpow_c(f, hw_shifted + CD(double(f->r))) + qpow_c(f, -hw_shifted - CD(double(f->r)));
    CD br = qnum_c(f, CD(1.0));
    return num / (br * br);
}

// C = FE + (Kq + K^{-1}q^{-1}) / {1}^2; checks the second defining expression
// EF + (Kq^{-1} + K^{-1}q) / {1}^2 agrees.
template <class B>
SpMat<typename B::S> casimir(const ModP<B>& m, bool check_both_forms = true, double tol = 0.0) {
    using S = typename B::S;
    Field f = m->f;
    S br2inv;
    if constexpr (std::is_same_v<B, ExactB>) {
        Cyc br = qnum(f, 1);
        br2inv = (br * br).inverse();
    } else {
        CD br = qnum_c(f, CD(1.0));
        br2inv = CD(1.0, 0.0) / (br * br);
    }
    SpMat<S> diag1(m->dim, m->dim), diag2(m->dim, m->dim);
    for (int i = 0; i < m->dim; ++i) {
        S a = (B::qpow_w(f, m->wts[i] + typename B::W(1))) + (B::qpow_w(f, -(m->wts[i] + typename B::W(1))));
        S b = (B::qpow_w(f, m->wts[i] - typename B::W(1))) + (B::qpow_w(f, -(m->wts[i] - typename B::W(1))));
        diag1.set(i, i, a * br2inv);
        diag2.set(i, i, b * br2inv);
    }
    SpMat<S> C = m->F * m->E + diag1;
    if (check_both_forms) {
        SpMat<S> C2 = m->E * m->F + diag2;
        if (!(C - C2).is_zero(tol)) throw DomainError("casimir: the two defining expressions disagree");
    }
    return C;
}

// T_r({1}^2 C / 2) + (K^r + K^{-r})/2 = 0, evaluated per weight block.
template <class B>
bool chebyshev_identity_check(const ModP<B>& m, double tol = 0.0) {
    using S = typename B::S;
    Field f = m->f;
    auto C = casimir<B>(m, false);
    S half, br2;
    if constexpr (std::is_same_v<B, ExactB>) {
        br2 = qnum(f, 1) * qnum(f, 1);
        half = Cyc(f, QQ(1, 2));
    } else {
        CD br = qnum_c(f, CD(1.0));
        br2 = br * br;
        half = CD(0.5, 0.0);
    }
    S zero = B::zero(f), one = B::one(f);
    for (const auto& blk : weight_blocks<B>(m)) {
        int n = int(blk.size());
        std::vector<std::vector<S>> X(n, std::vector<S>(n, zero));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (const S* v = C.find(blk[a], blk[b])) X[a][b] = *v * br2 * half;
        // dense Chebyshev recurrence on the block
        std::vector<std::vector<S>> prev(n, std::vector<S>(n, zero)), cur = X;
        for (int a = 0; a < n; ++a) prev[a][a] = one;
        for (long k = 1; k < f->r; ++k) {
            std::vector<std::vector<S>> next(n, std::vector<S>(n, zero));
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) {
                    S acc = zero;
                    for (int b = 0; b < n; ++b) acc = acc + X[a][b] * cur[b][c];
                    next[a][c] = acc + acc - prev[a][c];
                }
            prev = std::move(cur);
            cur = std::move(next);
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                S rhs = zero;
                if (a == b) rhs = (B::qpow_w(f, m->wts[blk[a]], long(f->r)) +
                                   B::qpow_w(f, m->wts[blk[a]], -long(f->r))) *
                                  half;
                if (!ST<S>::is_zero(cur[a][b] + rhs, tol)) return false;
            }
    }
    return true;
}

// prod_{i=0}^{k-1} (C - (q^{-2i-1}K + q^{2i+1}K^{-1})/{1}^2) = E^k F^k
template <class B>
bool power_identity_check(const ModP<B>& m, long k, double tol = 0.0) {
    using S = typename B::S;
    if (k < 0 || k > m->f->r) throw InvalidParameter("power_identity_check: need 0 <= k <= r");
    Field f = m->f;
    S br2inv;
    if constexpr (std::is_same_v<B, ExactB>) br2inv = (qnum(f, 1) * qnum(f, 1)).inverse();
    else {
        CD br = qnum_c(f, CD(1.0));
        br2inv = CD(1.0, 0.0) / (br * br);
    }
    auto C = casimir<B>(m, false);
    SpMat<S> acc = m->id();
    for (long i = 0; i < k; ++i) {
        SpMat<S> diag(m->dim, m->dim);
        for (int a = 0; a < m->dim; ++a) {
            S v = (B::qpow_w(f, m->wts[a] - typename B::W(2 * i + 1)) +
                   B::qpow_w(f, -(m->wts[a] - typename B::W(2 * i + 1))));
            diag.set(a, a, v * br2inv);
        }
        acc = acc * (C - diag);
    }
    SpMat<S> Ek = m->id(), Fk = m->id();
    for (long i = 0; i < k; ++i) {
        Ek = Ek * m->E;
        Fk = Fk * m->F;
    }
    return (acc - Ek * Fk).is_zero(tol);
}

// --- dominant vectors and the modules they generate --------------------------

// Basis of { v : Hv = w v, (FE)^2 v = 0 }, returned as sparse columns.
template <class B>
std::vector<std::vector<std::pair<int, typename B::S>>> dominant_vectors(const ModP<B>& m,
                                                                         typename B::W w,
                                                                         double tol = 0.0) {
    using S = typename B::S;
    auto idx = weight_space<B>(m, w);
    if (idx.empty()) return {};
    auto FE = m->F * m->E;
    auto FE2 = FE * FE;
    S zero = B::zero(m->f), one = B::one(m->f);
    int n = int(idx.size());
    std::vector<std::vector<S>> blk(n, std::vector<S>(n, zero));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (const S* v = FE2.find(idx[a], idx[b])) blk[a][b] = *v;
    auto null_basis = nullspace<S>(std::move(blk), zero, one, tol);
    std::vector<std::vector<std::pair<int, S>>> out;
    for (auto& v : null_basis) {
        std::vector<std::pair<int, S>> col;
        for (int a = 0; a < n; ++a)
            if (!ST<S>::is_zero(v[a], tol)) col.push_back({idx[a], v[a]});
        out.push_back(std::move(col));
    }
    return out;
}

// Basis of { v : Hv = w v, Ev = 0, F^{fpow} v = 0 }  (maps out of S_i need fpow = i+1).
template <class B>
std::vector<std::vector<std::pair<int, typename B::S>>> hw_vectors(const ModP<B>& m, typename B::W w,
                                                                   long fpow, double tol = 0.0) {
    using S = typename B::S;
    auto idx = weight_space<B>(m, w);
    if (idx.empty()) return {};
    S zero = B::zero(m->f), one = B::one(m->f);
    SpMat<S> Fp = m->id();
    for (long t = 0; t < fpow; ++t) Fp = Fp * m->F;
    int n = int(idx.size());
    std::vector<std::vector<S>> sys(2 * m->dim, std::vector<S>(n, zero));
    for (int b = 0; b < n; ++b) {
        for (auto& [i, v] : m->E.col(idx[b])) sys[i][b] = v;
        for (auto& [i, v] : Fp.col(idx[b])) sys[m->dim + i][b] = v;
    }
    auto null_basis = nullspace<S>(std::move(sys), zero, one, tol);
    std::vector<std::vector<std::pair<int, S>>> out;
    for (auto& v : null_basis) {
        std::vector<std::pair<int, S>> col;
        for (int a = 0; a < n; ++a)
            if (!ST<S>::is_zero(v[a], tol)) col.push_back({idx[a], v[a]});
        out.push_back(std::move(col));
    }
    return out;
}

}  // namespace uqh
