#pragma once

#include <cassert>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "uqh/field.hpp"

namespace uqh {

// Exact element of Q(zeta_{4r}): integer numerator vector in the power basis
// over one positive denominator.  Kept normalized (content coprime to den).
class Cyc {
public:
    Cyc() : f_(nullptr) {}
    explicit Cyc(Field f) : f_(f), nu_(f->deg, 0), de_(1) {}
    Cyc(Field f, long value) : Cyc(f) { nu_[0] = value; }
    Cyc(Field f, const QQ& value) : Cyc(f) {
        nu_[0] = value.get_num();
        de_ = value.get_den();
    }

    Field field() const { return f_; }
    bool attached() const { return f_ != nullptr; }

    static Cyc zero(Field f) { return Cyc(f); }
    static Cyc one(Field f) { return Cyc(f, 1); }

    // zeta_{4r}^k
    static Cyc zeta(Field f, long k) {
        Cyc out(f);
        long m = ((k % f->N) + f->N) % f->N;
        out.nu_ = f->zeta_pow[m];
        return out;
    }

    bool is_zero() const {
        for (const auto& c : nu_)
            if (c != 0) return false;
        return true;
    }
    bool is_one() const {
        if (de_ != 1 || nu_[0] != 1) return false;
        for (size_t i = 1; i < nu_.size(); ++i)
            if (nu_[i] != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < nu_.size(); ++i)
            if (nu_[i] != 0) return false;
        return true;
    }
    QQ rational_part() const {
        QQ v(nu_[0], de_);
        v.canonicalize();
        return v;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        assert(a.f_ == b.f_);
        Cyc out(a.f_);
        out.de_ = a.de_ * b.de_;
        for (long i = 0; i < a.f_->deg; ++i) out.nu_[i] = a.nu_[i] * b.de_ + b.nu_[i] * a.de_;
        out.normalize();
        return out;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        assert(a.f_ == b.f_);
        Cyc out(a.f_);
        out.de_ = a.de_ * b.de_;
        for (long i = 0; i < a.f_->deg; ++i) out.nu_[i] = a.nu_[i] * b.de_ - b.nu_[i] * a.de_;
        out.normalize();
        return out;
    }
    Cyc operator-() const {
        Cyc out = *this;
        for (auto& c : out.nu_) c = -c;
        return out;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        assert(a.f_ == b.f_);
        const long d = a.f_->deg;
        std::vector<ZZ> conv(2 * d - 1);
        for (long i = 0; i < d; ++i) {
            if (a.nu_[i] == 0) continue;
            for (long j = 0; j < d; ++j) {
                if (b.nu_[j] == 0) continue;
                mpz_addmul(conv[i + j].get_mpz_t(), a.nu_[i].get_mpz_t(), b.nu_[j].get_mpz_t());
            }
        }
        Cyc out(a.f_);
        // fold zeta^k for k >= deg back into the basis
        for (long k = 2 * d - 2; k >= d; --k) {
            if (conv[k] == 0) continue;
            const auto& row = a.f_->zeta_pow[k % a.f_->N];  // k < 2 deg <= N
            for (long i = 0; i < d; ++i)
                if (row[i] != 0) mpz_addmul(conv[i].get_mpz_t(), conv[k].get_mpz_t(), row[i].get_mpz_t());
        }
        for (long i = 0; i < d; ++i) out.nu_[i] = conv[i];
        out.de_ = a.de_ * b.de_;
        out.normalize();
        return out;
    }
    Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
    Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
    Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

    // in-place fused accumulate: *this += s * t  (the inner-loop operation)
    void addmul(const Cyc& s, const Cyc& t) {
        assert(f_ == s.f_ && f_ == t.f_);
        Cyc p = s * t;
        if (p.is_zero()) return;
        if (is_zero()) {
            *this = p;
            return;
        }
        *this = *this + p;
    }

    Cyc inverse() const {
        if (is_zero()) throw DomainError("Cyc: division by zero");
        // extended Euclid over Q[x] against the minimal polynomial
        using Poly = std::vector<QQ>;
        auto deg_of = [](const Poly& p) {
            for (long i = long(p.size()) - 1; i >= 0; --i)
                if (p[i] != 0) return i;
            return -1L;
        };
        Poly a(f_->minpoly.size()), b(f_->deg);
        for (size_t i = 0; i < f_->minpoly.size(); ++i) a[i] = QQ(f_->minpoly[i]);
        for (long i = 0; i < f_->deg; ++i) {
            b[i] = QQ(nu_[i], de_);
            b[i].canonicalize();
        }
        Poly s0(1, QQ(0)), s1(1, QQ(1));  // multipliers of b
        long db = deg_of(b);
        while (true) {
            long da = deg_of(a);
            if (db < 0) throw DomainError("Cyc: inverse of zero divisor");
            if (db == 0) break;
            // a = a - lead(a)/lead(b) x^{da-db} b, repeatedly; full poly remainder
            Poly q(da - db + 1, QQ(0));
            while (da >= db) {
                QQ c = a[da] / b[db];
                q[da - db] = c;
                for (long i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
                a[da] = 0;
                da = deg_of(a);
            }
            // (a, b) <- (b, a mod b); s-multipliers track b-coefficients
            Poly s2(std::max(s0.size(), q.size() + s1.size() - 1), QQ(0));
            for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            std::swap(a, b);
            s0 = std::move(s1);
            s1 = std::move(s2);
            db = deg_of(b);
        }
        // now b is a nonzero constant: inverse = s1 / b[0] reduced
        Cyc out(f_);
        ZZ den_lcm = 1;
        for (auto& c : s1) {
            c /= b[0];
            c.canonicalize();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        out.de_ = den_lcm;
        for (size_t i = 0; i < s1.size() && i < size_t(f_->deg); ++i)
            out.nu_[i] = s1[i].get_num() * (den_lcm / s1[i].get_den());
        out.normalize();
        return out;
    }
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        assert(a.f_ == b.f_);
        return a.de_ == b.de_ && a.nu_ == b.nu_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    CD to_complex() const {
        CD acc(0.0, 0.0);
        for (long i = f_->deg - 1; i >= 0; --i) acc = acc * zeta_complex(f_, 1) + CD(nu_[i].get_d(), 0.0);
        return acc / de_.get_d();
    }

    // power-basis coordinate as an exact rational
    QQ coord(long i) const {
        QQ v(nu_[i], de_);
        v.canonicalize();
        return v;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (long i = 0; i < f_->deg; ++i) {
            if (nu_[i] == 0) continue;
            QQ c = coord(i);
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            QQ ac = abs(c);
            if (i == 0 || ac != 1) os << ac.get_str();
            if (i > 0) {
                if (ac != 1) os << "*";
                os << "z";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void normalize() {
        if (de_ < 0) {
            de_ = -de_;
            for (auto& c : nu_) c = -c;
        }
        ZZ g = de_;
        for (const auto& c : nu_) {
            if (g == 1) break;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        if (g > 1) {
            de_ /= g;
            for (auto& c : nu_) c /= g;
        }
    }

    Field f_;
    std::vector<ZZ> nu_;
    ZZ de_;
};

// --- q-combinatorics -------------------------------------------------------

// q^e with e = te/2 a half-integer (te is twice the exponent).
// q = zeta^2, so q^{te/2} = zeta^{te}.
inline Cyc qpow2(Field f, long te) { return Cyc::zeta(f, te); }
inline Cyc qpow(Field f, long e) { return Cyc::zeta(f, 2 * e); }

// {x} = q^x - q^{-x}, half-integer x given as tx = 2x
inline Cyc qnum2(Field f, long tx) { return qpow2(f, tx) - qpow2(f, -tx); }
inline Cyc qnum(Field f, long x) { return qnum2(f, 2 * x); }

// [x] = {x}/{1}
inline Cyc qint2(Field f, long tx) { return qnum2(f, tx) * qnum(f, 1).inverse(); }
inline Cyc qint(Field f, long x) { return qint2(f, 2 * x); }

// {n}! and [n]!
inline Cyc qfact(Field f, long n) {
    if (n < 0) throw InvalidParameter("qfact: n must be nonnegative");
    Cyc out = Cyc::one(f);
    for (long k = 1; k <= n; ++k) out *= qnum(f, k);
    return out;
}
inline Cyc qintfact(Field f, long n) {
    if (n < 0) throw InvalidParameter("qintfact: n must be nonnegative");
    Cyc out = Cyc::one(f);
    for (long k = 1; k <= n; ++k) out *= qint(f, k);
    return out;
}

// gamma_{n,k} = [k][n-k+1] from the dominant-vector relations
inline Cyc gamma_nk(Field f, long n, long k) { return qint(f, k) * qint(f, n - k + 1); }

// Chebyshev T_m by the recurrence T_0 = 1, T_1 = X, T_{k+1} = 2 X T_k - T_{k-1};
// works for any type with ring ops and a multiplicative unit passed in.
template <class T>
T cheb_T(long m, const T& x, const T& unit) {
    if (m < 0) throw InvalidParameter("cheb_T: negative degree");
    if (m == 0) return unit;
    T prev = unit, cur = x;
    for (long k = 1; k < m; ++k) {
        T next = x * cur;
        next = next + next;  // 2 X T_k
        next = next - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline Cyc cheb_T(Field f, long m, const Cyc& x) { return cheb_T<Cyc>(m, x, Cyc::one(f)); }
inline CD cheb_T_c(long m, CD x) { return cheb_T<CD>(m, x, CD(1.0, 0.0)); }

// --- numeric-backend expression support ------------------------------------

// Exponent polynomial c0 + ca*A + cb*B + caa*A^2 + cab*A*B + cbb*B^2 in the
// formal symbols A ("alpha") and B ("beta"); used by the generic-weight
// numeric backend.
struct QExpr {
    QQ c0, ca, cb, caa, cab, cbb;

    bool uses_alpha() const { return ca != 0 || caa != 0 || cab != 0; }
    bool uses_beta() const { return cb != 0 || cbb != 0 || cab != 0; }

    CD eval(const CD* alpha, const CD* beta) const {
        if (uses_alpha() && alpha == nullptr) throw MissingAssignment("numeric_eval: symbol alpha unassigned");
        if (uses_beta() && beta == nullptr) throw MissingAssignment("numeric_eval: symbol beta unassigned");
        CD a = alpha ? *alpha : CD(0), b = beta ? *beta : CD(0);
        auto d = [](const QQ& q) { return q.get_d(); };
        return d(c0) + d(ca) * a + d(cb) * b + d(caa) * a * a + d(cab) * a * b + d(cbb) * b * b;
    }
};

// q^{expr} at the given assignments
inline CD numeric_eval(Field f, const QExpr& e, const CD* alpha, const CD* beta) {
    return qpow_c(f, e.eval(alpha, beta));
}

}  // namespace uqh
