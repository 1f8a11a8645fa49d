#include "pencils/pencil.hpp"

#include <algorithm>
#include <map>

namespace pencils {

namespace {

Mat<Fq> embed_matrix(const FqEmbedding& ext, const Mat<Fq>& m) {
    Mat<Fq> out(ext.top(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = ext.embed(m.at(i, j));
    return out;
}

}  // namespace

SplittingData simultaneous_diagonalize(const Pencil<Fq>& p, uint64_t seed) {
    const Fq& base = p.field();
    auto f = disc_poly(p);
    if (f.deg() != p.dim() || !poly_squarefree(f))
        throw std::invalid_argument("simultaneous diagonalization needs a nonsingular pencil");
    auto sf = splitting_field(f, seed);
    const Fq& top = sf.ext.top();
    const int d = p.dim();

    Mat<Fq> g1 = embed_matrix(sf.ext, p.q1().gram());
    Mat<Fq> g2 = embed_matrix(sf.ext, p.q2().gram());

    Mat<Fq> basis(top, d, d);
    std::vector<FqElem> dvals;
    for (int i = 0; i < d; ++i) {
        Mat<Fq> member = g1.scale(sf.roots[i]) - g2;
        Mat<Fq> ker = member.kernel();
        if (ker.rows() != 1)
            throw std::logic_error("singular member of a nonsingular pencil must have a line radical");
        Vec<Fq> v = ker.row(0);
        for (int r = 0; r < d; ++r) basis.at(r, i) = v[r];
        // d_i = v^T Q1 v
        auto g1v = g1.apply(v);
        FqElem di = top.zero();
        for (int r = 0; r < d; ++r) di = top.add(di, top.mul(v[r], g1v[r]));
        if (top.is_zero(di)) throw std::logic_error("radical vector with Q1(v) = 0");
        dvals.push_back(di);
    }

    // exact certificate: the v_i are orthogonal for both forms
    QuadraticForm<Fq> q1t(g1), q2t(g2);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (!top.is_zero(q1t.pair(basis.col(i), basis.col(j))) ||
                !top.is_zero(q2t.pair(basis.col(i), basis.col(j))))
                throw std::logic_error("radical vectors of distinct roots must be orthogonal");
        }

    std::vector<int> frob(d, -1);
    for (int i = 0; i < d; ++i) {
        FqElem img = sf.ext.rel_frobenius(sf.roots[i]);
        for (int j = 0; j < d; ++j)
            if (sf.roots[j] == img) {
                frob[i] = j;
                break;
            }
        if (frob[i] < 0) throw std::logic_error("Frobenius does not permute the roots");
    }

    Mat<Fq> basis_inv = basis.inverse();
    return SplittingData{sf.ext,          std::move(sf.roots), std::move(basis), std::move(basis_inv),
                         std::move(dvals), std::move(frob),     std::move(g1),    std::move(g2)};
}

QSplittingData simultaneous_diagonalize_q(const Pencil<QQ>& p) {
    QQ f;
    auto disc = disc_poly(p);
    if (disc.deg() != p.dim() || !poly_squarefree(disc))
        throw std::invalid_argument("simultaneous diagonalization needs a nonsingular pencil");
    // rational roots by divisor enumeration on the primitivized polynomial
    Int den(1);
    for (auto& c : disc.coeffs()) {
        Int cd(c.get_den());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
    }
    std::vector<Int> ic;
    for (auto& c : disc.coeffs()) ic.push_back(Int(c * Rat(den)));
    std::vector<Rat> roots;
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    Int a0 = ic[low], ad = ic.back();
    auto divisors = [](Int n) {
        std::vector<Int> out;
        if (n < 0) n = -n;
        for (Int d = 1; d * d <= n; ++d)
            if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
                out.push_back(d);
                out.push_back(n / d);
            }
        return out;
    };
    for (const Int& pn : divisors(a0))
        for (const Int& qd : divisors(ad))
            for (int sign : {1, -1}) {
                Rat cand(sign * pn, qd);
                cand.canonicalize();
                if (disc.eval(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    if (static_cast<int>(roots.size()) != p.dim())
        throw std::invalid_argument("disc polynomial does not split over Q");
    std::sort(roots.begin(), roots.end());

    const int d = p.dim();
    Mat<QQ> basis(f, d, d);
    std::vector<Rat> dvals;
    for (int i = 0; i < d; ++i) {
        Mat<QQ> member = p.q1().gram().scale(roots[i]) - p.q2().gram();
        Mat<QQ> ker = member.kernel();
        if (ker.rows() != 1) throw std::logic_error("expected a line radical");
        for (int r = 0; r < d; ++r) basis.at(r, i) = ker.at(0, r);
        dvals.push_back(p.q1().evaluate(ker.row(0)));
        if (dvals.back() == 0) throw std::logic_error("radical vector with Q1(v) = 0");
    }
    return QSplittingData{std::move(roots), std::move(basis), std::move(dvals)};
}

std::vector<int> canonical_subset(std::vector<int> subset, int dim) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (!subset.empty() && (subset.front() < 0 || subset.back() >= dim))
        throw std::invalid_argument("subset index out of range");
    if (subset.size() % 2 != 0) throw std::invalid_argument("subset must have even cardinality");
    if (!subset.empty() && subset.back() == dim - 1) {
        std::vector<int> comp;
        std::vector<bool> in(dim, false);
        for (int i : subset) in[i] = true;
        for (int i = 0; i < dim; ++i)
            if (!in[i]) comp.push_back(i);
        return comp;
    }
    return subset;
}

AutElement make_aut_element(const SplittingData& sd, const std::vector<int>& subset_in) {
    const Fq& top = sd.ext.top();
    const int d = sd.dim();
    auto subset = canonical_subset(subset_in, d);
    // lift = V diag(eps) V^{-1}, eps_i = -1 on the subset
    Mat<Fq> diag(top, d, d);
    std::vector<bool> in(d, false);
    for (int i : subset) in[i] = true;
    for (int i = 0; i < d; ++i) diag.at(i, i) = in[i] ? top.neg(top.one()) : top.one();
    Mat<Fq> lift = sd.basis * diag * sd.basis_inv;
    bool rational = true;
    for (int i = 0; i < d && rational; ++i)
        for (int j = 0; j < d && rational; ++j) rational = sd.ext.in_base(lift.at(i, j));
    return AutElement{std::move(subset), rational, std::move(lift)};
}

AutElement aut_mul(const SplittingData& sd, const AutElement& a, const AutElement& b) {
    std::vector<int> sym;
    std::set_symmetric_difference(a.subset.begin(), a.subset.end(), b.subset.begin(),
                                  b.subset.end(), std::back_inserter(sym));
    return make_aut_element(sd, sym);
}

namespace {

std::vector<int> apply_perm_subset(const std::vector<int>& perm, const std::vector<int>& s) {
    std::vector<int> out;
    out.reserve(s.size());
    for (int i : s) out.push_back(perm[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<AutElement> aut_plus(const Pencil<Fq>& p, const SplittingData& sd) {
    (void)p;
    const int d = sd.dim();
    std::vector<AutElement> out;
    // canonical representatives: even subsets of {0..d-2}
    for (uint32_t mask = 0; mask < (1u << (d - 1)); ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        std::vector<int> s;
        for (int i = 0; i < d - 1; ++i)
            if (mask & (1u << i)) s.push_back(i);
        auto img = apply_perm_subset(sd.frob, s);
        // Galois-stable modulo complementation
        bool stable = (img == s);
        if (!stable) {
            auto comp = canonical_subset(img, d);
            stable = (comp == s);
        }
        if (stable) out.push_back(make_aut_element(sd, s));
    }
    std::sort(out.begin(), out.end(),
              [](const AutElement& a, const AutElement& b) { return a.subset < b.subset; });
    return out;
}

AutElement theta_q(const SplittingData& sd, const std::vector<int>& two_torsion_class,
                   const std::vector<int>* alignment) {
    std::vector<int> s = two_torsion_class;
    if (alignment) {
        if (static_cast<int>(alignment->size()) != sd.dim())
            throw std::invalid_argument("alignment must cover all roots");
        s = apply_perm_subset(*alignment, s);
    }
    return make_aut_element(sd, s);
}

uint64_t sim_plus_count_via_etale(const Pencil<Fq>& p, uint64_t seed) {
    const Fq& base = p.field();
    auto f = disc_poly(p);
    auto factors = factor_over_fq(f, seed);
    std::vector<int> degs;
    for (auto& [g, e] : factors) {
        if (e != 1) throw std::invalid_argument("etale count needs a nonsingular pencil");
        degs.push_back(g.deg());
    }
    const int ncomp = static_cast<int>(degs.size());
    auto qsz = base.size();
    if (!qsz) throw std::invalid_argument("base field too large for the etale count");

    // component fields as abstract extensions F_{q^{d_j}}
    std::vector<FqEmbedding> comps;
    for (int dj : degs) comps.push_back(extend_field(base, dj));

    mpz_class q(static_cast<long>(*qsz));
    uint64_t total = 0;
    for (uint64_t li = 1; li < *qsz; ++li) {
        FqElem lambda = base.elem_at(li);
        // per component: square roots of lambda and their norms
        std::vector<std::vector<FqElem>> roots_norms(ncomp);
        bool feasible = true;
        for (int j = 0; j < ncomp && feasible; ++j) {
            const Fq& ej = comps[j].top();
            auto lam_j = comps[j].embed(lambda);
            auto r = ej.sqrt(lam_j);
            if (!r) {
                feasible = false;
                break;
            }
            // norm to F_q: x^{(q^{d}-1)/(q-1)}
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(degs[j]));
            mpz_class e = (qd - 1) / (q - 1);
            auto norm_of = [&](const FqElem& x) {
                FqElem acc = ej.one();
                FqElem b = x;
                mpz_class ee = e;
                while (ee > 0) {
                    if (mpz_odd_p(ee.get_mpz_t())) acc = ej.mul(acc, b);
                    b = ej.mul(b, b);
                    ee >>= 1;
                }
                return comps[j].restrict_to_base(acc);
            };
            roots_norms[j].push_back(norm_of(*r));
            roots_norms[j].push_back(norm_of(ej.neg(*r)));
        }
        if (!feasible) continue;
        // lambda^{n+1}
        FqElem target = base.one();
        for (int i = 0; i <= p.n(); ++i) target = base.mul(target, lambda);
        // all sign assignments
        for (uint32_t mask = 0; mask < (1u << ncomp); ++mask) {
            FqElem prod = base.one();
            for (int j = 0; j < ncomp; ++j)
                prod = base.mul(prod, roots_norms[j][(mask >> j) & 1]);
            if (prod == target) ++total;
        }
    }
    if (total % (*qsz - 1) != 0)
        throw std::logic_error("etale count must be divisible by |F_q^*|");
    return total / (*qsz - 1);
}

std::optional<PencilEquivalence> pencils_equivalent(const Pencil<Fq>& p, const Pencil<Fq>& p2,
                                                    uint64_t seed) {
    const Fq& base = p.field();
    if (!(base == p2.field()) || p.n() != p2.n())
        throw std::invalid_argument("pencils must live over the same field and dimension");
    if (!base.size()) throw std::invalid_argument("base field too large for equivalence search");
    auto sd = simultaneous_diagonalize(p, seed);
    auto sd2 = simultaneous_diagonalize(p2, seed);
    if (!(sd.ext.top() == sd2.ext.top())) return std::nullopt;
    if (sd.roots != sd2.roots) return std::nullopt;  // distinct singular parameters

    const int d = p.dim();
    // work in a quadratic extension of the splitting field so that all the
    // needed square roots exist
    FqEmbedding big = extend_field(sd.ext.top(), 2);
    FqEmbedding base_to_big(base, big.top(),
                            big.embed(sd.ext.embed(base.deg() >= 2 ? base.gen() : base.zero())));
    const Fq& E = big.top();

    Mat<Fq> v1(E, d, d), v2inv(E, d, d);
    {
        Mat<Fq> v2(E, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                v1.at(i, j) = big.embed(sd.basis.at(i, j));
                v2.at(i, j) = big.embed(sd2.basis.at(i, j));
            }
        v2inv = v2.inverse();
    }

    // candidate scalars: 1 and a canonical nonsquare of the base field
    std::vector<FqElem> lambdas{base.one()};
    for (uint64_t i = 1; i < *base.size(); ++i) {
        auto cand = base.elem_at(i);
        if (base.legendre(cand) == -1) {
            lambdas.push_back(cand);
            break;
        }
    }

    for (const FqElem& lambda : lambdas) {
        FqElem lam_big = big.embed(sd.ext.embed(lambda));
        // c_i^2 = lambda d'_i / d_i
        std::vector<FqElem> c0(d);
        bool ok = true;
        for (int i = 0; i < d; ++i) {
            FqElem t = E.mul(lam_big, E.div(big.embed(sd2.dvals[i]), big.embed(sd.dvals[i])));
            auto r = E.sqrt(t);
            if (!r) {
                ok = false;
                break;
            }
            c0[i] = *r;
        }
        if (!ok) continue;
        for (uint32_t mask = 0; mask < (1u << d); ++mask) {
            Mat<Fq> diag(E, d, d);
            for (int i = 0; i < d; ++i)
                diag.at(i, i) = (mask >> i) & 1 ? E.neg(c0[i]) : c0[i];
            Mat<Fq> m = v1 * diag * v2inv;
            bool rational = true;
            for (int i = 0; i < d && rational; ++i)
                for (int j = 0; j < d && rational; ++j)
                    rational = base_to_big.in_base(m.at(i, j));
            if (!rational) continue;
            Mat<Fq> mb(base, d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    mb.at(i, j) = base_to_big.restrict_to_base(m.at(i, j));
            // exact verification over the base field
            Mat<Fq> lhs1 = mb.transpose() * p.q1().gram() * mb;
            Mat<Fq> lhs2 = mb.transpose() * p.q2().gram() * mb;
            if (lhs1 == p2.q1().gram().scale(lambda) && lhs2 == p2.q2().gram().scale(lambda))
                return PencilEquivalence{std::move(mb), lambda};
        }
    }
    return std::nullopt;
}

}  // namespace pencils
