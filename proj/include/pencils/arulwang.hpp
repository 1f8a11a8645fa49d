#pragma once

#include "pencils/pencil.hpp"

namespace pencils {

// The standard soluble pencil on L = k[t]/(f) in the power basis
// {1, beta, ..., beta^{2n+1}}: Q1(a,b) reads off the top coefficient of
// beta^{a+b} mod f, Q2 the same for beta^{a+b+1}, and T0 is multiplication
// by beta (the companion matrix of f).
template <class F>
struct ArulWangPencil {
    Poly<F> f;
    Pencil<F> pencil;
    Mat<F> t0;
    Subspace<F> witness;  // span{1, beta, ..., beta^{n-1}}
};

template <class F>
Mat<F> companion_matrix(const Poly<F>& f) {
    const F& k = f.field();
    if (!f.is_monic()) throw std::invalid_argument("companion matrix needs a monic polynomial");
    const int d = f.deg();
    Mat<F> t0(k, d, d);
    for (int i = 0; i + 1 < d; ++i) t0.at(i + 1, i) = k.one();
    for (int i = 0; i < d; ++i) t0.at(i, d - 1) = k.neg(f.coeff(i));
    return t0;
}

template <class F>
ArulWangPencil<F> arul_wang_build(const Poly<F>& f) {
    const F& k = f.field();
    const int d = f.deg();
    if (!f.is_monic()) throw std::invalid_argument("Arul-Wang pencil needs a monic polynomial");
    if (d < 4 || d % 2 != 0)
        throw std::invalid_argument("Arul-Wang pencil needs even degree >= 4");
    if (!poly_squarefree(f)) throw std::invalid_argument("Arul-Wang pencil needs squarefree f");
    const int n = d / 2 - 1;

    // beta^j mod f for j = 0 .. 2d-1
    std::vector<Poly<F>> pows;
    pows.reserve(2 * d);
    pows.push_back(Poly<F>::one(k));
    Poly<F> x = Poly<F>::x(k);
    for (int j = 1; j < 2 * d; ++j) pows.push_back((pows.back() * x) % f);

    Mat<F> g1(k, d, d), g2(k, d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            g1.at(a, b) = pows[a + b].coeff(d - 1);
            g2.at(a, b) = pows[a + b + 1].coeff(d - 1);
        }

    Pencil<F> p(n, QuadraticForm<F>(std::move(g1)), QuadraticForm<F>(std::move(g2)));
    Mat<F> t0 = companion_matrix(f);

    Mat<F> wit(k, n, d);
    for (int i = 0; i < n; ++i) wit.at(i, i) = k.one();

    return ArulWangPencil<F>{f, std::move(p), std::move(t0), Subspace<F>(std::move(wit))};
}

// s_j = sum_i lambda_i^j / f'(lambda_i) over the roots of a monic squarefree
// f, computed without the roots as the residue of t^j/f(t) at infinity. In
// the split diagonal model these are exactly the Gram entries of Q1^0.
template <class F>
std::vector<typename F::Elem> power_trace_residues(const Poly<F>& f, int count) {
    const F& k = f.field();
    if (!f.is_monic()) throw std::invalid_argument("residues need a monic polynomial");
    const int d = f.deg();
    // 1/(1 + a_{d-1} u + ... + a_0 u^d) as a power series in u = 1/t
    std::vector<typename F::Elem> b{k.one()};
    for (int m = 1; m < count; ++m) {
        typename F::Elem acc = k.zero();
        for (int i = 1; i <= std::min(m, d); ++i)
            acc = k.add(acc, k.mul(f.coeff(d - i), b[m - i]));
        b.push_back(k.neg(acc));
    }
    std::vector<typename F::Elem> s(count, k.zero());
    for (int j = 0; j < count; ++j) {
        if (j < d - 1) continue;  // s_j = 0 below degree d-1
        s[j] = b[j - (d - 1)];
    }
    return s;
}

}  // namespace pencils
