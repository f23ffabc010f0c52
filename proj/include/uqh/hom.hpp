#pragma once

#include "uqh/morphism.hpp"

namespace uqh {

// --- generic intertwiner solver ----------------------------------------------

// Nullspace of { fE = Ef, fF = Ff, fH = Hf }, solved per weight block: an
// intertwiner maps V(w) into W(w), and the E/F constraints couple adjacent
// blocks.  Returns a basis of Hom(V, W).
template <class B>
std::vector<Morphism<B>> hom_space(const ModP<B>& V, const ModP<B>& W, double tol = 0.0) {
    using S = typename B::S;
    if (V->f != W->f) throw InvalidPair("hom_space: different field contexts");
    Field f = V->f;
    S zero = B::zero(f), one = B::one(f);

    // unknown layout: for each V-column j, the entries (i, j) with matching weights
    std::vector<std::pair<int, int>> unknowns;  // (row in W, col in V)
    std::vector<std::vector<int>> unknown_of_col(V->dim);
    for (int j = 0; j < V->dim; ++j)
        for (int i = 0; i < W->dim; ++i)
            if (B::weq(W->wts[i], V->wts[j], 1e-9)) {
                unknown_of_col[j].push_back(int(unknowns.size()));
                unknowns.push_back({i, j});
            }
    int nu = int(unknowns.size());
    if (nu == 0) return {};

    std::vector<std::vector<S>> sys;
    auto add_constraints = [&](const SpMat<S>& Ev, const SpMat<S>& Ew) {
        // f * Ev - Ew * f = 0; one equation per (row i of W, col j of V)
        // rows appear only where some unknown contributes
        std::map<std::pair<int, int>, std::vector<std::pair<int, S>>> eq;
        for (int j = 0; j < V->dim; ++j) {
            // f*Ev part: (f Ev)_{i j} = sum_k f_{i k} (Ev)_{k j}
            for (auto& [k, v] : Ev.col(j))
                for (int u : unknown_of_col[k]) eq[{unknowns[u].first, j}].push_back({u, v});
            // Ew*f part: (Ew f)_{i j} = sum_k (Ew)_{i k} f_{k j}
            for (int u : unknown_of_col[j]) {
                int k = unknowns[u].first;
                for (auto& [i, v] : Ew.col(k)) eq[{i, j}].push_back({u, -v});
            }
        }
        for (auto& [pos, entries] : eq) {
            std::vector<S> row(nu, zero);
            for (auto& [u, v] : entries) row[u] = row[u] + v;
            bool nontrivial = false;
            for (auto& x : row) nontrivial = nontrivial || !ST<S>::is_zero(x, tol);
            if (nontrivial) sys.push_back(std::move(row));
        }
    };
    add_constraints(V->E, W->E);
    add_constraints(V->F, W->F);

    std::vector<std::vector<S>> basis;
    if (sys.empty()) {
        for (int u = 0; u < nu; ++u) {
            std::vector<S> v(nu, zero);
            v[u] = one;
            basis.push_back(std::move(v));
        }
    } else {
        basis = nullspace<S>(std::move(sys), zero, one, tol);
    }

    std::vector<Morphism<B>> out;
    for (auto& v : basis) {
        SpMat<S> m(W->dim, V->dim);
        for (int u = 0; u < nu; ++u)
            if (!ST<S>::is_zero(v[u], tol)) m.set(unknowns[u].first, unknowns[u].second, v[u]);
        out.emplace_back(V, W, std::move(m));
    }
    return out;
}

// --- constructive maps out of canonical indecomposables ----------------------

// The map P_i (x) C^H_{kr} -> M sending the generator v^H_i (x) 1 to a dominant
// vector v of weight i + kr.  Images of the canonical basis are words in E, F
// applied to v; tensoring with C^H_{kr} contributes (-1)^k per E.
template <class B>
Morphism<B> hom_from_projective(const ModP<B>& X, const ModP<B>& M,
                                const std::vector<std::pair<int, typename B::S>>& v) {
    using S = typename B::S;
    if (X->prov.kind != "P" || !X->prov.canonical)
        throw PreconditionViolation("hom_from_projective: source must be a canonical P_i (x) C^H_{kr}");
    Field f = M->f;
    const long i = X->prov.i, k = X->prov.k, j = f->r - 2 - i;
    auto sgn = [&](long num_e) { return (k * num_e) % 2 == 0 ? 1 : -1; };
    auto apply_word = [&](long e_after, long f_then, long e_first) {
        // F^{f_then} E^{e_after} ... here words are: E^{e_first} applied first,
        // then F^{f_then}; e_after applies E after F (unused combinations stay 0)
        std::vector<std::pair<int, S>> cur = v;
        for (long t = 0; t < e_first; ++t) cur = M->E.apply(cur);
        for (long t = 0; t < f_then; ++t) cur = M->F.apply(cur);
        for (long t = 0; t < e_after; ++t) cur = M->E.apply(cur);
        return cur;
    };
    SpMat<S> m(M->dim, X->dim);
    auto put = [&](int col, std::vector<std::pair<int, S>> vec, long num_e) {
        int s = sgn(num_e);
        for (auto& [row, val] : vec) m.set(row, col, s == 1 ? val : -val);
    };
    if (i == f->r - 1) {
        // P_{r-1} = S_{r-1}: plain highest-weight words F^t v
        for (long t = 0; t < X->dim; ++t) put(int(t), apply_word(0, t, 0), 0);
        return Morphism<B>(X, M, std::move(m));
    }
    const int H0 = 0, R0 = int(i + 1), L0 = int(i + j + 2), S0 = int(i + 2 * j + 3);
    for (long t = 0; t <= i; ++t) put(H0 + int(t), apply_word(0, t, 0), 0);                // F^t v
    for (long t = 0; t <= j; ++t) put(R0 + int(t), apply_word(j - t + 1, 0, 0), j - t + 1);  // E^{j-t+1} v
    for (long t = 0; t <= j; ++t) put(L0 + int(t), apply_word(0, i + 1 + t, 0), 0);        // F^{i+1+t} v
    for (long t = 0; t <= i; ++t) put(S0 + int(t), apply_word(0, t + 1, 1), 1);            // F^{t+1} E v
    return Morphism<B>(X, M, std::move(m));
}

// The map S_i (x) C^H_{kr} -> M sending the highest vector to v (which must
// satisfy Ev = 0 and F^{i+1} v = 0); all words are F powers, so no signs.
template <class B>
Morphism<B> hom_from_simple(const ModP<B>& X, const ModP<B>& M,
                            const std::vector<std::pair<int, typename B::S>>& v) {
    using S = typename B::S;
    if (X->prov.kind != "S" || !X->prov.canonical)
        throw PreconditionViolation("hom_from_simple: source must be a canonical S_i (x) C^H_{kr}");
    SpMat<S> m(M->dim, X->dim);
    std::vector<std::pair<int, S>> cur = v;
    for (int t = 0; t < X->dim; ++t) {
        for (auto& [row, val] : cur) m.set(row, t, val);
        cur = M->F.apply(cur);
    }
    return Morphism<B>(X, M, std::move(m));
}

// Canonical identification M -> M**: the pivot diag(q^{(1-r) w}) intertwines.
template <class B>
Morphism<B> double_dual_iso(const ModP<B>& M, const ModP<B>& Mss) {
    using S = typename B::S;
    SpMat<S> d(M->dim, M->dim);
    for (int a = 0; a < M->dim; ++a) d.set(a, a, B::qpow_w(M->f, M->wts[a], 1 - long(M->f->r)));
    return Morphism<B>(M, Mss, std::move(d));
}

// --- reading endomorphism coordinates ----------------------------------------

// x_i on P_i (x) C^H_{kr}: the action of C - c_i (sends v^H to v^S, kills the rest).
template <class B>
SpMat<typename B::S> x_nilpotent(const ModP<B>& P) {
    using S = typename B::S;
    if (P->prov.kind != "P" || !P->prov.canonical || P->prov.i == P->f->r - 1)
        throw PreconditionViolation("x_nilpotent: need a canonical P_i with i <= r-2");
    Field f = P->f;
    const long i = P->prov.i, j = f->r - 2 - i;
    SpMat<S> x(P->dim, P->dim);
    const int S0 = int(i + 2 * j + 3);
    for (long t = 0; t <= i; ++t) x.set(S0 + int(t), int(t), B::one(f));
    return x;
}

// f in End(P_i (x) C^H_{kr}) on the canonical basis is a Id + b x_i; the
// coefficients sit in the generator column.
template <class B>
std::pair<typename B::S, typename B::S> endo_coeffs(const ModP<B>& P, const SpMat<typename B::S>& fm,
                                                    double tol = 0.0) {
    using S = typename B::S;
    if (P->prov.kind != "P" || !P->prov.canonical)
        throw PreconditionViolation("endo_coeffs: module is not a canonical projective");
    Field f = P->f;
    const long i = P->prov.i;
    S a = B::zero(f), b = B::zero(f);
    if (const S* v = fm.find(0, 0)) a = *v;
    if (i == f->r - 1) {
        if (!(fm - P->id().scaled(a)).is_zero(tol))
            throw PreconditionViolation("endo_coeffs: matrix is not a multiple of Id on P_{r-1}");
        return {a, b};
    }
    int srow = int(2 * f->r - 1 - i);  // index of v^S_i
    if (const S* v = fm.find(srow, 0)) b = *v;
    SpMat<S> recon = P->id().scaled(a) + x_nilpotent<B>(P).scaled(b);
    if (!(recon - fm).is_zero(tol))
        throw PreconditionViolation("endo_coeffs: matrix is not of the form a Id + b x_i");
    return {a, b};
}

// --- span solving and submodules ---------------------------------------------

// Solves B x = t for t in the column span of B; the reduction of [B | I] is
// done once and reused.
template <class S>
class SpanSolver {
public:
    SpanSolver(const std::vector<std::vector<std::pair<int, S>>>& cols, int dim, const S& zero,
               const S& one, double tol = 0.0)
        : dim_(dim), s_(int(cols.size())), zero_(zero), tol_(tol) {
        red_.assign(dim_, std::vector<S>(s_ + dim_, zero));
        for (int j = 0; j < s_; ++j)
            for (auto& [i, v] : cols[j]) red_[i][j] = v;
        for (int i = 0; i < dim_; ++i) red_[i][s_ + i] = one;
        pivots_ = row_reduce_limited(red_, s_, tol);
    }

    int rank() const { return int(pivots_.size()); }

    std::optional<std::vector<S>> solve(const std::vector<std::pair<int, S>>& t) const {
        // E_op t, where E_op is the recorded row transform
        std::vector<S> rhs(dim_, zero_);
        for (int row = 0; row < dim_; ++row) {
            S acc = zero_;
            for (auto& [i, v] : t) acc = acc + red_[row][s_ + i] * v;
            rhs[row] = acc;
        }
        for (int row = rank(); row < dim_; ++row)
            if (!ST<S>::is_zero(rhs[row], tol_)) return std::nullopt;
        std::vector<S> x(s_, zero_);
        for (int k = 0; k < rank(); ++k) x[pivots_[k]] = rhs[k];
        return x;
    }

    const std::vector<int>& pivots() const { return pivots_; }

private:
    // row reduction with pivot search restricted to the first `limit` columns
    static std::vector<int> row_reduce_limited(std::vector<std::vector<S>>& m, int limit, double tol) {
        std::vector<int> pivots;
        int nr = int(m.size());
        if (nr == 0) return pivots;
        int nc = int(m[0].size());
        int row = 0;
        for (int col = 0; col < limit && row < nr; ++col) {
            int best = -1;
            double best_mag = tol;
            for (int i = row; i < nr; ++i) {
                if (ST<S>::is_zero(m[i][col], tol)) continue;
                double g = ST<S>::mag(m[i][col]);
                if (best == -1 || g > best_mag) {
                    best = i;
                    best_mag = g;
                }
                if (best != -1 && tol == 0.0) break;
            }
            if (best == -1) continue;
            std::swap(m[row], m[best]);
            S pinv = ST<S>::inv(m[row][col]);
            for (int j = 0; j < nc; ++j) m[row][j] = m[row][j] * pinv;
            for (int i = 0; i < nr; ++i) {
                if (i == row || ST<S>::is_zero(m[i][col], tol)) continue;
                S f = m[i][col];
                for (int j = 0; j < nc; ++j) m[i][j] = m[i][j] - f * m[row][j];
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int dim_, s_;
    S zero_;
    double tol_;
    std::vector<std::vector<S>> red_;
    std::vector<int> pivots_;
};

// The submodule spanned by the given vectors (must be E/F-stable).  Returns the
// restricted module together with the inclusion and a left-inverse projection
// of the inclusion (coordinates within the span).
template <class B>
struct SubmoduleData {
    ModP<B> sub;
    Morphism<B> inclusion;          // sub -> M
    SpMat<typename B::S> coords;    // left inverse: coords * inclusion = Id_sub
};

template <class B>
SubmoduleData<B> span_submodule(const ModP<B>& M, std::vector<std::vector<std::pair<int, typename B::S>>> gens,
                                double tol = 0.0) {
    using S = typename B::S;
    Field f = M->f;
    S zero = B::zero(f), one = B::one(f);
    // select an independent subset
    std::vector<std::vector<std::pair<int, S>>> basis;
    for (auto& g : gens) {
        if (g.empty()) continue;
        if (basis.empty()) {
            basis.push_back(g);
            continue;
        }
        SpanSolver<S> probe(basis, M->dim, zero, one, tol);
        if (!probe.solve(g).has_value()) basis.push_back(g);
    }
    int s = int(basis.size());
    SpanSolver<S> solver(basis, M->dim, zero, one, tol);
    if (solver.rank() != s) throw DomainError("span_submodule: dependent basis selection");

    auto m = std::make_shared<Module<B>>();
    m->f = f;
    m->dim = s;
    m->E = SpMat<S>(s, s);
    m->F = SpMat<S>(s, s);
    for (int j = 0; j < s; ++j) {
        // weight of the basis vector (must be homogeneous)
        m->wts.push_back(M->wts[basis[j][0].first]);
        auto img_e = M->E.apply(basis[j]);
        auto xe = solver.solve(img_e);
        auto img_f = M->F.apply(basis[j]);
        auto xf = solver.solve(img_f);
        if (!xe || !xf) throw DomainError("span_submodule: span is not E/F-stable");
        for (int i = 0; i < s; ++i) {
            if (!ST<S>::is_zero((*xe)[i], tol)) m->E.set(i, j, (*xe)[i]);
            if (!ST<S>::is_zero((*xf)[i], tol)) m->F.set(i, j, (*xf)[i]);
        }
    }
    m->label = M->label + "|sub";
    m->prov.kind = "sub";

    SpMat<S> inc(M->dim, s);
    for (int j = 0; j < s; ++j)
        for (auto& [i, v] : basis[j]) inc.set(i, j, v);
    // coords: solve inclusion x = e_i for each ambient basis vector in the span
    SpMat<S> coords(s, M->dim);
    for (int i = 0; i < M->dim; ++i) {
        auto x = solver.solve({{i, one}});
        if (!x) continue;  // outside the span: projection composed with (1-e) handles it
        for (int jj = 0; jj < s; ++jj)
            if (!ST<S>::is_zero((*x)[jj], tol)) coords.set(jj, i, (*x)[jj]);
    }
    return {m, Morphism<B>(m, M, std::move(inc)), std::move(coords)};
}

}  // namespace uqh
