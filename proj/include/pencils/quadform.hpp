#pragma once

#include <optional>
#include <random>

#include "pencils/fq.hpp"
#include "pencils/matrix.hpp"
#include "pencils/rational.hpp"

namespace pencils {

// A quadratic form as a symmetric Gram matrix; q(v) = v^T G v.
template <class F>
class QuadraticForm {
  public:
    explicit QuadraticForm(Mat<F> gram) : g_(std::move(gram)) {
        if (!g_.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
    }
    static QuadraticForm diagonal(F f, const std::vector<typename F::Elem>& entries) {
        Mat<F> m(f, static_cast<int>(entries.size()), static_cast<int>(entries.size()));
        for (size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = entries[i];
        return QuadraticForm(std::move(m));
    }

    const Mat<F>& gram() const { return g_; }
    const F& field() const { return g_.field(); }
    int dim() const { return g_.rows(); }

    typename F::Elem evaluate(const Vec<F>& v) const {
        if (static_cast<int>(v.size()) != dim())
            throw std::invalid_argument("vector dimension mismatch");
        const F& f = field();
        auto gv = g_.apply(v);
        typename F::Elem r = f.zero();
        for (int i = 0; i < dim(); ++i) r = f.add(r, f.mul(v[i], gv[i]));
        return r;
    }
    // symmetric bilinear pairing u^T G v
    typename F::Elem pair(const Vec<F>& u, const Vec<F>& v) const {
        const F& f = field();
        auto gv = g_.apply(v);
        typename F::Elem r = f.zero();
        for (int i = 0; i < dim(); ++i) r = f.add(r, f.mul(u[i], gv[i]));
        return r;
    }

    bool operator==(const QuadraticForm& o) const { return g_ == o.g_; }

  private:
    Mat<F> g_;
};

// A linear subspace in canonical form: basis rows in reduced row echelon
// form, one representative per subspace.
template <class F>
class Subspace {
  public:
    // rows span the subspace; canonicalized by RREF
    explicit Subspace(Mat<F> rows) : b_(std::move(rows)) {
        auto piv = b_.rref();
        Mat<F> compact(b_.field(), static_cast<int>(piv.size()), b_.cols());
        for (int i = 0; i < static_cast<int>(piv.size()); ++i)
            for (int j = 0; j < b_.cols(); ++j) compact.at(i, j) = b_.at(i, j);
        b_ = std::move(compact);
    }
    static Subspace zero(F f, int ambient) { return Subspace(Mat<F>(std::move(f), 0, ambient)); }

    const Mat<F>& basis() const { return b_; }
    int dim() const { return b_.rows(); }
    int ambient_dim() const { return b_.cols(); }

    bool contains(const Vec<F>& v) const {
        Mat<F> m(b_.field(), b_.rows() + 1, b_.cols());
        for (int i = 0; i < b_.rows(); ++i)
            for (int j = 0; j < b_.cols(); ++j) m.at(i, j) = b_.at(i, j);
        for (int j = 0; j < b_.cols(); ++j) m.at(b_.rows(), j) = v[j];
        return m.rank() == b_.rows();
    }

    bool operator==(const Subspace& o) const { return b_ == o.b_; }

  private:
    Mat<F> b_;
};

template <class F>
struct Diagonalization {
    Mat<F> basis;                           // columns are the new basis: basis^T G basis = diag
    std::vector<typename F::Elem> entries;  // diagonal values (zeros allowed)
};

// Congruence diagonalization by symmetric Gaussian elimination (char != 2):
// returns P invertible with P^T G P diagonal.
template <class F>
Diagonalization<F> diagonalize_congruence(const QuadraticForm<F>& q) {
    const F& f = q.field();
    const int n = q.dim();
    Mat<F> g = q.gram();
    Mat<F> p = Mat<F>::identity(f, n);
    for (int k = 0; k < n; ++k) {
        // ensure a nonzero entry at (k,k)
        if (f.is_zero(g.at(k, k))) {
            int swap_i = -1;
            for (int i = k + 1; i < n; ++i)
                if (!f.is_zero(g.at(i, i))) {
                    swap_i = i;
                    break;
                }
            if (swap_i >= 0) {
                // swap basis vectors k and swap_i
                for (int j = 0; j < n; ++j) {
                    std::swap(g.at(k, j), g.at(swap_i, j));
                }
                for (int i = 0; i < n; ++i) {
                    std::swap(g.at(i, k), g.at(i, swap_i));
                    std::swap(p.at(i, k), p.at(i, swap_i));
                }
            } else {
                // all remaining diagonal entries zero: use an off-diagonal one
                int a = -1, b = -1;
                for (int i = k; i < n && a < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (!f.is_zero(g.at(i, j))) {
                            a = i;
                            b = j;
                            break;
                        }
                if (a < 0) break;  // remaining block is zero
                // e_a += e_b gives Q(e_a) = 2 g_ab != 0
                for (int j = 0; j < n; ++j) g.at(a, j) = f.add(g.at(a, j), g.at(b, j));
                for (int i = 0; i < n; ++i) {
                    g.at(i, a) = f.add(g.at(i, a), g.at(i, b));
                    p.at(i, a) = f.add(p.at(i, a), p.at(i, b));
                }
                --k;
                continue;
            }
        }
        auto pivot_inv = f.inv(g.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (f.is_zero(g.at(i, k))) continue;
            auto c = f.mul(g.at(i, k), pivot_inv);
            // row/col clear: e_i -= c e_k
            for (int j = 0; j < n; ++j) g.at(i, j) = f.sub(g.at(i, j), f.mul(c, g.at(k, j)));
            for (int j = 0; j < n; ++j) g.at(j, i) = f.sub(g.at(j, i), f.mul(c, g.at(j, k)));
            for (int j = 0; j < n; ++j) p.at(j, i) = f.sub(p.at(j, i), f.mul(c, p.at(j, k)));
        }
    }
    std::vector<typename F::Elem> d;
    d.reserve(n);
    for (int i = 0; i < n; ++i) d.push_back(g.at(i, i));
    return {std::move(p), std::move(d)};
}

// kernel of the Gram matrix as a canonical subspace
template <class F>
Subspace<F> radical(const QuadraticForm<F>& q) {
    return Subspace<F>(q.gram().kernel());
}

// ---- finite-field operations ----

// One isotropic vector of a nonsingular form over F_q, if any. Deterministic
// two-set scan for small fields, seeded randomized search above that.
std::optional<Vec<Fq>> isotropic_vector(const QuadraticForm<Fq>& q, uint64_t seed = 0);

// Dimension of a maximal totally isotropic subspace, computed by splitting
// off hyperbolic planes. Requires a nonsingular form.
int witt_index(const QuadraticForm<Fq>& q, uint64_t seed = 0);

bool is_hyperbolic(const QuadraticForm<Fq>& q, uint64_t seed = 0);

// ---- rational operations ----

struct Signature {
    int positives = 0;
    int negatives = 0;
    int radical_dim = 0;
};

// Exact real signature of a rational form; a singular form has its radical
// split off first and reported separately.
Signature signature_r(const QuadraticForm<QQ>& q);

}  // namespace pencils
