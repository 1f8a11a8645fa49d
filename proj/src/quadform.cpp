#include "pencils/quadform.hpp"

namespace pencils {

namespace {

// solutions of a x^2 + b y^2 = c over F_q, c arbitrary; returns (x, y)
std::optional<std::pair<FqElem, FqElem>> solve_binary(const Fq& f, const FqElem& a,
                                                      const FqElem& b, const FqElem& c,
                                                      uint64_t seed) {
    // scan x deterministically while the field is small, then sample
    auto try_x = [&](const FqElem& x) -> std::optional<std::pair<FqElem, FqElem>> {
        // y^2 = (c - a x^2) / b
        FqElem rhs = f.div(f.sub(c, f.mul(a, f.mul(x, x))), b);
        auto r = f.sqrt(rhs);
        if (r) return std::make_pair(x, *r);
        return std::nullopt;
    };
    auto qsz = f.size();
    if (qsz && *qsz <= (1u << 20)) {
        for (uint64_t i = 0; i < *qsz; ++i) {
            if (auto s = try_x(f.elem_at(i))) return s;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    for (int tries = 0; tries < 4096; ++tries) {
        if (auto s = try_x(f.rand_elem(rng))) return s;
    }
    throw std::runtime_error("randomized isotropic search failed to converge");
}

}  // namespace

std::optional<Vec<Fq>> isotropic_vector(const QuadraticForm<Fq>& q, uint64_t seed) {
    const Fq& f = q.field();
    const int n = q.dim();
    if (n == 0) return std::nullopt;
    auto diag = diagonalize_congruence(q);
    // a zero diagonal entry exposes a radical vector
    for (int i = 0; i < n; ++i)
        if (f.is_zero(diag.entries[i])) return diag.basis.col(i);
    if (n == 1) return std::nullopt;
    if (n == 2) {
        // a x^2 + b y^2 = 0 solvable iff -b/a is a square
        auto r = f.sqrt(f.neg(f.div(diag.entries[1], diag.entries[0])));
        if (!r) return std::nullopt;
        Vec<Fq> v(n, f.zero());
        v[0] = *r;
        v[1] = f.one();
        return diag.basis.apply(v);
    }
    // n >= 3: a x^2 + b y^2 = -c z^2 with z = 1 always has a solution over F_q
    auto s = solve_binary(f, diag.entries[0], diag.entries[1], f.neg(diag.entries[2]), seed);
    if (!s) throw std::logic_error("ternary form over F_q must be isotropic");
    Vec<Fq> v(n, f.zero());
    v[0] = s->first;
    v[1] = s->second;
    v[2] = f.one();
    return diag.basis.apply(v);
}

int witt_index(const QuadraticForm<Fq>& q, uint64_t seed) {
    const Fq& f = q.field();
    if (f.is_zero(q.gram().det())) throw std::invalid_argument("witt_index requires a nonsingular form");
    QuadraticForm<Fq> cur = q;
    int index = 0;
    while (cur.dim() >= 2) {
        auto v = isotropic_vector(cur, seed + index);
        if (!v) break;
        // find w with b(v, w) != 0 (exists by nonsingularity)
        auto gv = cur.gram().apply(*v);
        int wi = -1;
        for (int i = 0; i < cur.dim(); ++i)
            if (!f.is_zero(gv[i])) {
                wi = i;
                break;
            }
        if (wi < 0) throw std::logic_error("isotropic vector in the radical of a nonsingular form");
        Vec<Fq> w(cur.dim(), f.zero());
        w[wi] = f.inv(gv[wi]);  // b(v, w) = 1
        // make w isotropic: w -= (Q(w)/2) v
        auto qw = cur.evaluate(w);
        auto c = f.div(qw, f.from_int(2));
        for (int i = 0; i < cur.dim(); ++i) w[i] = f.sub(w[i], f.mul(c, (*v)[i]));
        // restrict to the orthogonal complement of span(v, w)
        Mat<Fq> constraints(f, 2, cur.dim());
        auto gw = cur.gram().apply(w);
        for (int j = 0; j < cur.dim(); ++j) {
            constraints.at(0, j) = gv[j];
            constraints.at(1, j) = gw[j];
        }
        Mat<Fq> basis = constraints.kernel();  // rows span the complement
        Mat<Fq> restricted = basis * cur.gram() * basis.transpose();
        cur = QuadraticForm<Fq>(std::move(restricted));
        ++index;
    }
    return index;
}

bool is_hyperbolic(const QuadraticForm<Fq>& q, uint64_t seed) {
    if (q.dim() % 2 != 0) return false;
    return witt_index(q, seed) == q.dim() / 2;
}

Signature signature_r(const QuadraticForm<QQ>& q) {
    auto diag = diagonalize_congruence(q);
    Signature s;
    for (const Rat& d : diag.entries) {
        int sg = sgn(d);
        if (sg > 0)
            ++s.positives;
        else if (sg < 0)
            ++s.negatives;
        else
            ++s.radical_dim;
    }
    return s;
}

}  // namespace pencils
