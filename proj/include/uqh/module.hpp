#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uqh/character.hpp"
#include "uqh/matrix.hpp"

namespace uqh {

// Exact backend: integer weights, cyclotomic scalars.
struct ExactB {
    static constexpr const char* name = "exact";
    using S = Cyc;
    using W = long long;

    static S zero(Field f) { return Cyc::zero(f); }
    static S one(Field f) { return Cyc::one(f); }
    static S from_int(Field f, long v) { return Cyc(f, v); }
    // q^{c*w} for integer weight w
    static S qpow_w(Field f, W w, long c = 1) { return qpow2(f, 2 * long(w) * c); }
    // q^{u*v/2}
    static S qpow_half_prod(Field f, W u, W v) { return qpow2(f, long(u * v)); }
    // q^{-w^2/2}
    static S qpow_neg_half_sq(Field f, W w) { return qpow2(f, -long(w * w)); }
    static bool weq(W x, W y, double) { return x == y; }
    static bool w_even_diff(W x, W y) { return ((x - y) % 2) == 0; }
    static std::string wstr(W w) { return std::to_string(w); }
};

// Numeric backend: complex weights and scalars, tolerance comparisons.
struct NumB {
    static constexpr const char* name = "numeric";
    using S = CD;
    using W = CD;

    static S zero(Field) { return CD(0.0, 0.0); }
    static S one(Field) { return CD(1.0, 0.0); }
    static S from_int(Field, long v) { return CD(double(v), 0.0); }
    static S qpow_w(Field f, W w, long c = 1) { return qpow_c(f, w * double(c)); }
    static S qpow_half_prod(Field f, W u, W v) { return qpow_c(f, u * v / 2.0); }
    static S qpow_neg_half_sq(Field f, W w) { return qpow_c(f, -w * w / 2.0); }
    static bool weq(W x, W y, double tol) { return std::abs(x - y) <= tol; }
    static bool w_even_diff(W x, W y) {
        CD d = (x - y) / 2.0;
        return std::abs(d - CD(std::round(d.real()), 0.0)) <= 1e-9;
    }
    static std::string wstr(W w) {
        std::ostringstream os;
        os << w.real() << (w.imag() < 0 ? "-" : "+") << std::abs(w.imag()) << "i";
        return os.str();
    }
};

// Construction provenance; decomposition and trace code key off canonical
// constructor bases.
struct Prov {
    std::string kind = "other";  // S | V | C | sigma | P | tensor | dual | sum | sub | other
    long i = 0;                  // family index (S_i, P_i, V_i for integer alpha)
    long k = 0;                  // C^H_{kr} twist
    bool canonical = false;      // basis laid out exactly as the constructor defines
    bool typical = false;        // V_alpha with alpha in (C \ Z) u rZ
    CD alpha = CD(0, 0);         // numeric V_alpha parameter
};

template <class B>
struct Module {
    using S = typename B::S;
    using W = typename B::W;

    Field f = nullptr;
    int dim = 0;
    std::vector<W> wts;
    SpMat<S> E, F;
    std::string label;
    Prov prov;

    // K^c = diag(q^{c*weight}); K is always derived from H, never stored
    SpMat<S> K(long c = 1) const {
        SpMat<S> m(dim, dim);
        for (int i = 0; i < dim; ++i) m.set(i, i, B::qpow_w(f, wts[i], c));
        return m;
    }
    SpMat<S> Hmat() const {
        SpMat<S> m(dim, dim);
        for (int i = 0; i < dim; ++i) {
            if constexpr (std::is_same_v<B, ExactB>) m.set(i, i, Cyc(f, long(wts[i])));
            else
                m.set(i, i, wts[i]);
        }
        return m;
    }
    SpMat<S> id() const { return SpMat<S>::identity(dim, B::one(f)); }
};

template <class B>
using ModP = std::shared_ptr<const Module<B>>;

using ModE = ModP<ExactB>;
using ModN = ModP<NumB>;

// --- constructors -----------------------------------------------------------

// S_n: (n+1)-dimensional simple with h.w. n; F s_i = s_{i+1},
// E s_i = {i}{n+1-i}/{1}^2 s_{i-1}
template <class B>
ModP<B> simple_S(Field f, long n) {
    if (n < 0 || n > f->r - 1)
        throw InvalidParameter("simple_S: need 0 <= n <= r-1, got n=" + std::to_string(n));
    auto m = std::make_shared<Module<B>>();
    m->f = f;
    m->dim = int(n + 1);
    m->E = SpMat<typename B::S>(m->dim, m->dim);
    m->F = SpMat<typename B::S>(m->dim, m->dim);
    for (long i = 0; i <= n; ++i) {
        m->wts.push_back(typename B::W(n - 2 * i));
        if (i < n) m->F.set(int(i + 1), int(i), B::one(f));
        if (i > 0) {
            if constexpr (std::is_same_v<B, ExactB>) {
                m->E.set(int(i - 1), int(i), qint(f, i) * qint(f, n + 1 - i));
            } else {
                m->E.set(int(i - 1), int(i),
                         qnum_c(f, CD(double(i))) * qnum_c(f, CD(double(n + 1 - i))) /
                             (qnum_c(f, CD(1.0)) * qnum_c(f, CD(1.0))));
            }
        }
    }
    m->label = "S" + std::to_string(n);
    m->prov = {.kind = "S", .i = n, .k = 0, .canonical = true};
    return m;
}

// C^H_{kr}: one-dimensional, E = F = 0, H = kr
template <class B>
ModP<B> onedim_C(Field f, long k) {
    auto m = std::make_shared<Module<B>>();
    m->f = f;
    m->dim = 1;
    m->wts.push_back(typename B::W(k * f->r));
    m->E = SpMat<typename B::S>(1, 1);
    m->F = SpMat<typename B::S>(1, 1);
    m->label = "C" + std::to_string(k * f->r);
    m->prov = {.kind = "C", .i = 0, .k = k, .canonical = true};
    return m;
}

// sigma^k = C^H_{2 k r'}
template <class B>
ModP<B> sigma_power(Field f, long k) {
    long twist = 2 * k * f->r_prime / f->r;  // 2 k r' = twist * r exactly
    auto m = onedim_C<B>(f, twist);
    auto mm = std::make_shared<Module<B>>(*m);
    mm->label = "sigma^" + std::to_string(k);
    mm->prov.kind = "sigma";
    mm->prov.i = k;
    return mm;
}

inline bool typicality_exact(Field f, long alpha) { return alpha % f->r == 0; }
inline bool typicality_numeric(Field f, CD alpha, double tol = 1e-9) {
    double re = alpha.real(), im = alpha.imag();
    bool is_integer = std::abs(im) <= tol && std::abs(re - std::round(re)) <= tol;
    if (!is_integer) return true;
    long n = long(std::llround(re));
    return n % f->r == 0;
}

// V_alpha: r-dimensional h.w. module of highest weight alpha + r - 1
template <class B>
ModP<B> typical_V(Field f, typename B::W alpha) {
    auto m = std::make_shared<Module<B>>();
    m->f = f;
    m->dim = int(f->r);
    m->E = SpMat<typename B::S>(m->dim, m->dim);
    m->F = SpMat<typename B::S>(m->dim, m->dim);
    for (long i = 0; i < f->r; ++i) {
        m->wts.push_back(alpha + typename B::W(f->r - 1 - 2 * i));
        if (i < f->r - 1) m->F.set(int(i + 1), int(i), B::one(f));
        if (i > 0) {
            if constexpr (std::is_same_v<B, ExactB>) {
                m->E.set(int(i - 1), int(i), qnum(f, i) * qnum(f, i - long(alpha)) * qnum(f, 1).inverse() *
                                                 qnum(f, 1).inverse());
            } else {
                m->E.set(int(i - 1), int(i), qnum_c(f, CD(double(i))) * qnum_c(f, CD(double(i)) - alpha) /
                                                 (qnum_c(f, CD(1.0)) * qnum_c(f, CD(1.0))));
            }
        }
    }
    if constexpr (std::is_same_v<B, ExactB>) {
        m->label = "V" + std::to_string(long(alpha));
        m->prov = {.kind = "V", .i = long(alpha), .k = long(alpha) / f->r, .canonical = true,
                   .typical = typicality_exact(f, long(alpha))};
    } else {
        std::ostringstream os;
        os << "V(" << alpha.real() << (alpha.imag() < 0 ? "-" : "+") << std::abs(alpha.imag()) << "i)";
        m->label = os.str();
        m->prov = {.kind = "V", .i = 0, .k = 0, .canonical = true,
                   .typical = typicality_numeric(f, alpha), .alpha = alpha};
    }
    return m;
}

// P_i: the 2r-dimensional projective cover of S_i on the canonical basis
// (v^H_i..v^H_{-i}, v^R_{r+j}..v^R_{r-j}, v^L_{j-r}..v^L_{-j-r}, v^S_i..v^S_{-i}),
// j = r-2-i.  P_{r-1} is S_{r-1} = V_0.
template <class B>
ModP<B> projective_P(Field f, long i) {
    if (i < 0 || i > f->r - 1)
        throw InvalidParameter("projective_P: need 0 <= i <= r-1, got i=" + std::to_string(i));
    if (i == f->r - 1) {
        auto s = simple_S<B>(f, f->r - 1);
        auto m = std::make_shared<Module<B>>(*s);
        m->label = "P" + std::to_string(i);
        m->prov = {.kind = "P", .i = i, .k = 0, .canonical = true};
        return m;
    }
    const long r = f->r, j = r - 2 - i;
    auto m = std::make_shared<Module<B>>();
    m->f = f;
    m->dim = int(2 * r);
    m->E = SpMat<typename B::S>(m->dim, m->dim);
    m->F = SpMat<typename B::S>(m->dim, m->dim);

    const int H0 = 0, R0 = int(i + 1), L0 = int(i + j + 2), S0 = int(i + 2 * j + 3);
    for (long k = 0; k <= i; ++k) m->wts.push_back(typename B::W(i - 2 * k));          // v^H
    for (long k = 0; k <= j; ++k) m->wts.push_back(typename B::W(r + j - 2 * k));      // v^R
    for (long k = 0; k <= j; ++k) m->wts.push_back(typename B::W(j - r - 2 * k));      // v^L
    for (long k = 0; k <= i; ++k) m->wts.push_back(typename B::W(i - 2 * k));          // v^S

    auto gam = [&](long n, long k) {
        if constexpr (std::is_same_v<B, ExactB>) return gamma_nk(f, n, k);
        else
            return qnum_c(f, CD(double(k))) * qnum_c(f, CD(double(n - k + 1))) /
                   (qnum_c(f, CD(1.0)) * qnum_c(f, CD(1.0)));
    };
    auto one = B::one(f);

    // H block
    for (long k = 0; k <= i; ++k) {
        if (k < i) m->F.set(int(H0 + k + 1), int(H0 + k), one);
        else
            m->F.set(L0, int(H0 + i), one);  // F v^H_{-i} = v^L_{j-r}
        if (k > 0) {
            m->E.set(int(H0 + k - 1), int(H0 + k), gam(i, k));
            m->E.set(int(S0 + k - 1), int(H0 + k), one);
        } else {
            m->E.set(int(R0 + j), H0, one);  // E v^H_i = v^R_{r-j}
        }
    }
    // R block (stored by descending weight: R_k = v^R_{r+j-2k})
    for (long k = 0; k <= j; ++k) {
        if (k > 0) m->E.set(int(R0 + k - 1), int(R0 + k), one);
        if (k < j) m->F.set(int(R0 + k + 1), int(R0 + k), -gam(j, j - k));
        else
            m->F.set(S0, int(R0 + j), one);  // F v^R_{r-j} = v^S_i
    }
    // L block (L_k = v^L_{j-r-2k})
    for (long k = 0; k <= j; ++k) {
        if (k < j) m->F.set(int(L0 + k + 1), int(L0 + k), one);
        if (k > 0) m->E.set(int(L0 + k - 1), int(L0 + k), -gam(j, k));
        else
            m->E.set(int(S0 + i), L0, one);  // E v^L_{j-r} = v^S_{-i}
    }
    // S block
    for (long k = 0; k <= i; ++k) {
        if (k < i) m->F.set(int(S0 + k + 1), int(S0 + k), one);
        if (k > 0) m->E.set(int(S0 + k - 1), int(S0 + k), gam(i, k));
    }

    m->label = "P" + std::to_string(i);
    m->prov = {.kind = "P", .i = i, .k = 0, .canonical = true};
    return m;
}

// --- derived modules --------------------------------------------------------

template <class B>
ModP<B> tensor(const ModP<B>& a, const ModP<B>& b) {
    if (a->f != b->f) throw InvalidPair("tensor: factors live over different field contexts");
    auto m = std::make_shared<Module<B>>();
    m->f = a->f;
    m->dim = a->dim * b->dim;
    m->wts.reserve(m->dim);
    for (int p = 0; p < a->dim; ++p)
        for (int q = 0; q < b->dim; ++q) m->wts.push_back(a->wts[p] + b->wts[q]);
    // coproduct: E -> 1 (x) E + E (x) K,  F -> K^{-1} (x) F + F (x) 1
    m->E = kron(a->id(), b->E) + kron(a->E, b->K(1));
    m->F = kron(a->K(-1), b->F) + kron(a->F, b->id());
    m->label = a->label + "*" + b->label;
    m->prov.kind = "tensor";
    // a canonical indecomposable twisted by a one-dimensional module keeps its
    // canonical basis layout
    if ((a->prov.kind == "P" || a->prov.kind == "S") && a->prov.canonical && b->prov.kind == "C") {
        m->prov = a->prov;
        m->prov.k += b->prov.k;
    }
    return m;
}

template <class B>
ModP<B> dual(const ModP<B>& a) {
    auto m = std::make_shared<Module<B>>();
    m->f = a->f;
    m->dim = a->dim;
    for (int p = 0; p < a->dim; ++p) m->wts.push_back(-a->wts[p]);
    // antipode transposes: S(E) = -E K^{-1}, S(F) = -K F
    m->E = (-(a->E * a->K(-1))).transposed();
    m->F = (-(a->K(1) * a->F)).transposed();
    m->label = a->label + "^*";
    m->prov.kind = "dual";
    return m;
}

template <class B>
ModP<B> direct_sum(const ModP<B>& a, const ModP<B>& b) {
    if (a->f != b->f) throw InvalidPair("direct_sum: different field contexts");
    auto m = std::make_shared<Module<B>>();
    m->f = a->f;
    m->dim = a->dim + b->dim;
    m->wts = a->wts;
    m->wts.insert(m->wts.end(), b->wts.begin(), b->wts.end());
    m->E = SpMat<typename B::S>(m->dim, m->dim);
    m->F = SpMat<typename B::S>(m->dim, m->dim);
    for (int j = 0; j < a->dim; ++j) {
        for (auto& [i, v] : a->E.col(j)) m->E.set(i, j, v);
        for (auto& [i, v] : a->F.col(j)) m->F.set(i, j, v);
    }
    for (int j = 0; j < b->dim; ++j) {
        for (auto& [i, v] : b->E.col(j)) m->E.set(a->dim + i, a->dim + j, v);
        for (auto& [i, v] : b->F.col(j)) m->F.set(a->dim + i, a->dim + j, v);
    }
    m->label = a->label + "+" + b->label;
    m->prov.kind = "sum";
    return m;
}

inline ModN to_numeric(const ModE& a) {
    auto m = std::make_shared<Module<NumB>>();
    m->f = a->f;
    m->dim = a->dim;
    for (auto w : a->wts) m->wts.push_back(CD(double(w), 0.0));
    m->E = SpMat<CD>(a->dim, a->dim);
    m->F = SpMat<CD>(a->dim, a->dim);
    for (int j = 0; j < a->dim; ++j) {
        for (auto& [i, v] : a->E.col(j)) m->E.set(i, j, v.to_complex());
        for (auto& [i, v] : a->F.col(j)) m->F.set(i, j, v.to_complex());
    }
    m->label = a->label;
    m->prov = a->prov;
    return m;
}

// --- characters and axioms --------------------------------------------------

inline Character character(const ModE& a) {
    Character chi;
    for (auto w : a->wts) chi.add(Weight{w, 0, 0});
    return chi;
}

struct AxiomsReport {
    struct Item {
        std::string relation;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;
    bool pass = true;
    void add(const std::string& rel, bool ok, const std::string& detail = "") {
        items.push_back({rel, ok, detail});
        pass = pass && ok;
    }
};

// Verifies the defining relations as matrix identities: weight grading of E/F,
// K E K^{-1} = q^2 E, K F K^{-1} = q^{-2} F, [E,F] = (K - K^{-1})/{1},
// E^r = F^r = 0, and the single C/2Z degree.
template <class B>
AxiomsReport check_module_axioms(const ModP<B>& m, double tol = 0.0) {
    AxiomsReport rep;
    Field f = m->f;
    auto K = m->K(1), Kinv = m->K(-1);

    auto graded = [&](const SpMat<typename B::S>& M, long shift) {
        for (int j = 0; j < m->dim; ++j)
            for (auto& [i, v] : M.col(j)) {
                (void)v;
                if (!B::weq(m->wts[i], m->wts[j] + typename B::W(shift), 1e-9)) return false;
            }
        return true;
    };
    rep.add("[H,E]=2E", graded(m->E, 2));
    rep.add("[H,F]=-2F", graded(m->F, -2));

    typename B::S q2 = B::qpow_w(f, typename B::W(1), 2);
    rep.add("KEK^{-1}=q^2E", ((K * m->E * Kinv) - m->E.scaled(q2)).is_zero(tol));
    typename B::S qm2 = B::qpow_w(f, typename B::W(1), -2);
    rep.add("KFK^{-1}=q^{-2}F", ((K * m->F * Kinv) - m->F.scaled(qm2)).is_zero(tol));

    typename B::S brace1_inv;
    if constexpr (std::is_same_v<B, ExactB>) brace1_inv = qnum(f, 1).inverse();
    else
        brace1_inv = CD(1.0, 0.0) / qnum_c(f, CD(1.0));
    auto rhs = (K - Kinv).scaled(brace1_inv);
    rep.add("[E,F]=(K-K^{-1})/{1}", ((m->E * m->F - m->F * m->E) - rhs).is_zero(tol));

    SpMat<typename B::S> Epow = m->id(), Fpow = m->id();
    for (long k = 0; k < f->r; ++k) {
        Epow = Epow * m->E;
        Fpow = Fpow * m->F;
    }
    rep.add("E^r=0", Epow.is_zero(tol));
    rep.add("F^r=0", Fpow.is_zero(tol));

    bool even = true;
    for (int i = 1; i < m->dim; ++i) even = even && B::w_even_diff(m->wts[i], m->wts[0]);
    rep.add("weights differ by even integers", even);
    return rep;
}

}  // namespace uqh
