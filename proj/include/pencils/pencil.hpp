#pragma once

#include <algorithm>
#include <optional>

#include "pencils/factor.hpp"
#include "pencils/matrix.hpp"
#include "pencils/poly.hpp"
#include "pencils/quadform.hpp"

namespace pencils {

// Nonsingular Q1 is required so the disc polynomial has full degree 2n+2;
// callers with a singular first form must change coordinates first.
struct SingularQ1Error : std::invalid_argument {
    SingularQ1Error() : std::invalid_argument("det(Q1) = 0: change coordinates so Q1 is nonsingular") {}
};

// A pencil t*Q1 - Q2 of quadratic forms in dimension 2n+2.
template <class F>
class Pencil {
  public:
    Pencil(int n, QuadraticForm<F> q1, QuadraticForm<F> q2)
        : n_(n), q1_(std::move(q1)), q2_(std::move(q2)) {
        const int d = 2 * n_ + 2;
        if (n_ < 1) throw std::invalid_argument("pencil needs n >= 1");
        if (q1_.dim() != d || q2_.dim() != d)
            throw std::invalid_argument("pencil forms must have dimension 2n+2");
        if (field().is_zero(q1_.gram().det())) throw SingularQ1Error();
    }

    int n() const { return n_; }
    int dim() const { return 2 * n_ + 2; }
    const QuadraticForm<F>& q1() const { return q1_; }
    const QuadraticForm<F>& q2() const { return q2_; }
    const F& field() const { return q1_.field(); }

    // member t*Q1 - Q2 at a parameter value
    QuadraticForm<F> member(const typename F::Elem& t) const {
        return QuadraticForm<F>(q1_.gram().scale(t) - q2_.gram());
    }

  private:
    int n_;
    QuadraticForm<F> q1_, q2_;
};

// Determinant of a matrix with degree-<=1 polynomial entries by Leibniz
// expansion; dimensions up to 8.
template <class F>
Poly<F> linear_pencil_det(const Mat<F>& a, const Mat<F>& b);

// f(t) = (-1)^{n+1} det(t Q1 - Q2), exact, degree 2n+2.
template <class F>
Poly<F> disc_poly(const Pencil<F>& p);

template <class F>
bool is_nonsingular(const Pencil<F>& p) {
    auto f = disc_poly(p);
    return f.deg() == p.dim() && poly_squarefree(f);
}

// Simultaneous orthogonal data over the splitting field: roots lambda_i, the
// radical vectors v_i of lambda_i Q1 - Q2 as columns, and d_i = Q1(v_i).
// In the v-basis, Q1 = diag(d_i) and Q2 = diag(d_i lambda_i).
struct SplittingData {
    FqEmbedding ext;                  // base field -> splitting field
    std::vector<FqElem> roots;        // sorted canonically, size 2n+2
    Mat<Fq> basis;                    // columns are the v_i, over ext.top()
    Mat<Fq> basis_inv;
    std::vector<FqElem> dvals;        // d_i = v_i^T Q1 v_i, nonzero
    std::vector<int> frob;            // root permutation: roots[frob[i]] = roots[i]^q
    Mat<Fq> q1_top, q2_top;           // Gram matrices embedded into the splitting field

    int dim() const { return static_cast<int>(roots.size()); }
};

SplittingData simultaneous_diagonalize(const Pencil<Fq>& p, uint64_t seed = 0);

// Rational variant, available when disc splits over Q.
struct QSplittingData {
    std::vector<Rat> roots;
    Mat<QQ> basis;
    std::vector<Rat> dvals;
};
QSplittingData simultaneous_diagonalize_q(const Pencil<QQ>& p);

// An element of Aut^+_Q: an even subset of root indices modulo
// complementation (canonical representative omits the last index), with its
// determinant-1 sign lift over the splitting field.
struct AutElement {
    std::vector<int> subset;  // sorted, even size, last root index excluded
    bool rational;            // lift entries lie in the base field
    Mat<Fq> lift;             // over the splitting field; identity-similitude sign lift

    bool operator==(const AutElement& o) const { return subset == o.subset; }
};

// canonical representative of {S, complement}
std::vector<int> canonical_subset(std::vector<int> subset, int dim);

AutElement make_aut_element(const SplittingData& sd, const std::vector<int>& subset);

// group law: symmetric difference modulo complementation
AutElement aut_mul(const SplittingData& sd, const AutElement& a, const AutElement& b);

// All Galois-stable elements of Aut^+_Q over the base field.
std::vector<AutElement> aut_plus(const Pencil<Fq>& p, const SplittingData& sd);

// Prop-7.3 isomorphism from 2-torsion classes (even Weierstrass index subsets
// mod complementation) to Aut^+_Q. `alignment[i]` maps curve root index i to
// pencil root index; identity by default.
AutElement theta_q(const SplittingData& sd, const std::vector<int>& two_torsion_class,
                   const std::vector<int>* alignment = nullptr);

template <class F>
struct EtaleModel {
    Mat<F> u;           // Q2 Q1^{-1}
    Poly<F> charpoly;   // det(t I - u), proportional to disc
};

template <class F>
EtaleModel<F> etale_model(const Pencil<F>& p);

// |Sim^+_Q(F_q)/scalars| computed from the etale algebra k[u]: counts
// alpha in prod F_{q^{d_j}} with alpha^2 = lambda in F_q^* and
// norm(alpha) = lambda^{n+1}, modulo F_q^*.
uint64_t sim_plus_count_via_etale(const Pencil<Fq>& p, uint64_t seed = 0);

struct PencilEquivalence {
    Mat<Fq> transform;  // M with M^T Q1 M = lambda Q1', M^T Q2 M = lambda Q2'
    FqElem lambda;
};

// Search for an equivalence over the base field. Roots must coincide exactly;
// alignment is by equal root values, candidates are diagonal rescalings.
std::optional<PencilEquivalence> pencils_equivalent(const Pencil<Fq>& p, const Pencil<Fq>& p2,
                                                    uint64_t seed = 0);

// ---- template implementations ----

template <class F>
Poly<F> linear_pencil_det(const Mat<F>& a, const Mat<F>& b) {
    const F& f = a.field();
    const int d = a.rows();
    if (d > 8) throw std::invalid_argument("Leibniz expansion capped at dimension 8");
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    Poly<F> det = Poly<F>::zero(f);
    do {
        int inversions = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly<F> term = Poly<F>::one(f);
        for (int i = 0; i < d; ++i) {
            Poly<F> entry(f, {f.neg(b.at(i, perm[i])), a.at(i, perm[i])});
            term = term * entry;
        }
        det = (inversions % 2 == 0) ? det + term : det - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

template <class F>
Poly<F> disc_poly(const Pencil<F>& p) {
    auto det = linear_pencil_det(p.q1().gram(), p.q2().gram());
    if (p.n() % 2 == 0) {  // (-1)^{n+1} = -1
        return -det;
    }
    return det;
}

template <class F>
EtaleModel<F> etale_model(const Pencil<F>& p) {
    const F& f = p.field();
    Mat<F> u = p.q2().gram() * p.q1().gram().inverse();
    auto charpoly = linear_pencil_det(Mat<F>::identity(f, p.dim()), u);
    return {std::move(u), std::move(charpoly)};
}

}  // namespace pencils
