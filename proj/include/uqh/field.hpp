#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "uqh/errors.hpp"

namespace uqh {

using ZZ = mpz_class;
using QQ = mpq_class;
using CD = std::complex<double>;

// Arithmetic context for Q(zeta_N), N = 4r, zeta_N = exp(2*pi*i/N).
// q = zeta_N^2 = exp(i*pi/r), so q^r = -1 and half-integer powers of q
// stay inside the field.  Elements are held in the power basis
// 1, zeta, ..., zeta^{deg-1} with deg = phi(N).
struct FieldData {
    long r = 0;
    long N = 0;        // 4r
    long deg = 0;      // phi(N)
    long r_prime = 0;  // r odd: r, else r/2

    std::vector<ZZ> minpoly;  // monic, length deg+1, integer coefficients

    // zeta^k in the power basis for k = 0..N-1 (integer coordinates)
    std::vector<std::vector<ZZ>> zeta_pow;

    FieldData() = default;
    FieldData(const FieldData&) = delete;
};

using Field = const FieldData*;

namespace detail {

// Quotient of integer polynomials, exact division assumed (monic divisor).
inline std::vector<ZZ> poly_div_exact(std::vector<ZZ> num, const std::vector<ZZ>& den) {
    std::vector<ZZ> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
    while (num.size() >= den.size()) {
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.size() < den.size()) break;
        ZZ c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    }
    return q;
}

inline std::vector<ZZ> cyclotomic_poly(long n) {
    // Phi_n via (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<ZZ> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_div_exact(std::move(num), cyclotomic_poly(d));
    }
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    return num;
}

}  // namespace detail

// Contexts are interned for the lifetime of the process so scalars can keep
// plain pointers.
inline Field make_field(long r) {
    if (r < 2) throw InvalidParameter("make_field: need r >= 2, got " + std::to_string(r));
    static std::mutex mu;
    static std::map<long, std::unique_ptr<FieldData>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(r);
    if (it != registry.end()) return it->second.get();

    auto fd = std::make_unique<FieldData>();
    fd->r = r;
    fd->N = 4 * r;
    fd->r_prime = (r % 2 == 0) ? r / 2 : r;
    fd->minpoly = detail::cyclotomic_poly(fd->N);
    fd->deg = static_cast<long>(fd->minpoly.size()) - 1;

    // zeta^k reduced mod Phi_N, integer coordinates (Phi_N is monic)
    fd->zeta_pow.assign(fd->N, {});
    std::vector<ZZ> cur(fd->deg, 0);
    cur[0] = 1;
    for (long k = 0; k < fd->N; ++k) {
        fd->zeta_pow[k] = cur;
        // multiply by zeta
        ZZ top = cur[fd->deg - 1];
        for (long i = fd->deg - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < fd->deg; ++i) cur[i] -= top * fd->minpoly[i];
    }

    Field out = fd.get();
    registry.emplace(r, std::move(fd));
    return out;
}

inline CD zeta_complex(Field f, long k) {
    const double two_pi = 6.283185307179586476925286766559;
    long m = ((k % f->N) + f->N) % f->N;
    return std::polar(1.0, two_pi * double(m) / double(f->N));
}

// q^e for arbitrary complex e, q = exp(i*pi/r)
inline CD qpow_c(Field f, CD e) {
    const double pi = 3.141592653589793238462643383279;
    return std::exp(CD(0.0, 1.0) * pi * e / double(f->r));
}

inline CD qnum_c(Field f, CD x) { return qpow_c(f, x) - qpow_c(f, -x); }

}  // namespace uqh
