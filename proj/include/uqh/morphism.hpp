#pragma once

#include "uqh/structure.hpp"

namespace uqh {

template <class B>
struct Morphism {
    using S = typename B::S;
    ModP<B> src, tgt;
    SpMat<S> m;

    Morphism() = default;
    Morphism(ModP<B> s, ModP<B> t, SpMat<S> mat) : src(std::move(s)), tgt(std::move(t)), m(std::move(mat)) {
        if (m.rows() != tgt->dim || m.cols() != src->dim)
            throw ShapeError("Morphism: matrix shape does not match source/target");
    }

    static Morphism identity(const ModP<B>& v) { return Morphism(v, v, v->id()); }

    // intertwines E, F and the weight grading
    bool is_intertwiner(double tol = 0.0) const {
        if (!(m * src->E - tgt->E * m).is_zero(tol)) return false;
        if (!(m * src->F - tgt->F * m).is_zero(tol)) return false;
        for (int j = 0; j < src->dim; ++j)
            for (auto& [i, v] : m.col(j)) {
                (void)v;
                if (!B::weq(tgt->wts[i], src->wts[j], 1e-9)) return false;
            }
        return true;
    }

    friend Morphism operator*(const Morphism& f, const Morphism& g) {  // f after g
        if (f.src->dim != g.tgt->dim) throw ShapeError("Morphism composition: dimension mismatch");
        return Morphism(g.src, f.tgt, f.m * g.m);
    }
    friend Morphism operator+(const Morphism& f, const Morphism& g) {
        return Morphism(f.src, f.tgt, f.m + g.m);
    }
    friend Morphism operator-(const Morphism& f, const Morphism& g) {
        return Morphism(f.src, f.tgt, f.m - g.m);
    }
    Morphism scaled(const S& s) const { return Morphism(src, tgt, m.scaled(s)); }
    bool is_zero(double tol = 0.0) const { return m.is_zero(tol); }
};

template <class B>
Morphism<B> tensor_mor(const Morphism<B>& f, const Morphism<B>& g) {
    return Morphism<B>(tensor(f.src, g.src), tensor(f.tgt, g.tgt), kron(f.m, g.m));
}

}  // namespace uqh
