#pragma once

#include <map>
#include <sstream>
#include <string>

#include "uqh/field.hpp"

namespace uqh {

// Affine weight n + a*alpha + b*beta on up to two formal symbols; modules in
// the exact backend only ever carry pure integers (a = b = 0), the symbols
// exist for formal character identities.
struct Weight {
    long long n = 0;
    long long a = 0;
    long long b = 0;

    friend Weight operator+(Weight x, Weight y) { return {x.n + y.n, x.a + y.a, x.b + y.b}; }
    friend Weight operator-(Weight x, Weight y) { return {x.n - y.n, x.a - y.a, x.b - y.b}; }
    Weight operator-() const { return {-n, -a, -b}; }
    friend bool operator==(const Weight& x, const Weight& y) = default;
    // descending order on weights: symbols first so formal families group together
    friend bool operator<(const Weight& x, const Weight& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.n < y.n;
    }
    bool pure() const { return a == 0 && b == 0; }

    std::string str() const {
        std::ostringstream os;
        bool lead = true;
        auto term = [&](long long c, const char* s) {
            if (c == 0) return;
            if (!lead && c > 0) os << "+";
            if (c == -1) os << "-";
            else if (c != 1)
                os << c;
            os << s;
            lead = false;
        };
        term(a, "alpha");
        term(b, "beta");
        if (n != 0 || lead) {
            if (!lead && n > 0) os << "+";
            os << n;
        }
        return os.str();
    }
};

// Finitely supported multiset of weights; the character of a weight module.
class Character {
public:
    Character() = default;

    void add(Weight w, long mult = 1) {
        if (mult == 0) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) terms_[w] = mult;
        else {
            it->second += mult;
            if (it->second == 0) terms_.erase(it);
        }
    }
    long mult(Weight w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }
    const std::map<Weight, long>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    long total() const {
        long t = 0;
        for (auto& [w, m] : terms_) t += m;
        return t;
    }
    bool nonnegative() const {
        for (auto& [w, m] : terms_)
            if (m < 0) return false;
        return true;
    }
    Weight top() const {
        if (terms_.empty()) throw DomainError("Character: empty");
        return terms_.rbegin()->first;
    }

    friend Character operator+(const Character& x, const Character& y) {
        Character out = x;
        for (auto& [w, m] : y.terms_) out.add(w, m);
        return out;
    }
    friend Character operator-(const Character& x, const Character& y) {
        Character out = x;
        for (auto& [w, m] : y.terms_) out.add(w, -m);
        return out;
    }
    // product in the group ring (tensor product of modules)
    friend Character operator*(const Character& x, const Character& y) {
        Character out;
        for (auto& [w1, m1] : x.terms_)
            for (auto& [w2, m2] : y.terms_) out.add(w1 + w2, m1 * m2);
        return out;
    }
    Character scaled(long c) const {
        Character out;
        for (auto& [w, m] : terms_) out.add(w, c * m);
        return out;
    }
    Character dualized() const {
        Character out;
        for (auto& [w, m] : terms_) out.add(-w, m);
        return out;
    }
    friend bool operator==(const Character& x, const Character& y) { return x.terms_ == y.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            if (it->second != 1) os << it->second << "*";
            os << "X^(" << it->first.str() << ")";
            first = false;
        }
        return os.str();
    }

private:
    std::map<Weight, long> terms_;
};

// [k]_X = X^{k-1} + X^{k-3} + ... + X^{-(k-1)}
inline Character qint_X(long k) {
    Character out;
    for (long t = 0; t < k; ++t) out.add(Weight{k - 1 - 2 * t, 0, 0});
    return out;
}

inline Character x_power(Weight w) {
    Character out;
    out.add(w);
    return out;
}

}  // namespace uqh
