#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace pencils {

template <class F>
using Vec = std::vector<typename F::Elem>;

// Dense matrix over a field object F, row-major.
template <class F>
class Mat {
  public:
    using K = typename F::Elem;

    Mat(F f, int rows, int cols)
        : f_(std::move(f)), r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, f_.zero()) {}

    static Mat identity(F f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }
    static Mat from_rows(F f, const std::vector<Vec<F>>& rows) {
        if (rows.empty()) return Mat(f, 0, 0);
        Mat m(std::move(f), static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols())
                throw std::invalid_argument("ragged rows");
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return f_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    K& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const K& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec<F> row(int i) const {
        Vec<F> v(c_, f_.zero());
        for (int j = 0; j < c_; ++j) v[j] = at(i, j);
        return v;
    }
    Vec<F> col(int j) const {
        Vec<F> v(r_, f_.zero());
        for (int i = 0; i < r_; ++i) v[i] = at(i, j);
        return v;
    }

    bool operator==(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!f_.eq(a_[i], o.a_[i])) return false;
        return true;
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat m = *this;
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.add(m.a_[i], o.a_[i]);
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat m = *this;
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.sub(m.a_[i], o.a_[i]);
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
        Mat m(f_, r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const K& aik = at(i, k);
                if (f_.is_zero(aik)) continue;
                for (int j = 0; j < o.c_; ++j)
                    m.at(i, j) = f_.add(m.at(i, j), f_.mul(aik, o.at(k, j)));
            }
        return m;
    }
    Mat scale(const K& s) const {
        Mat m = *this;
        for (auto& v : m.a_) v = f_.mul(v, s);
        return m;
    }
    Mat transpose() const {
        Mat m(f_, c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Vec<F> apply(const Vec<F>& v) const {
        if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("apply shape mismatch");
        Vec<F> r(r_, f_.zero());
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r[i] = f_.add(r[i], f_.mul(at(i, j), v[j]));
        return r;
    }

    bool is_symmetric() const {
        if (r_ != c_) return false;
        for (int i = 0; i < r_; ++i)
            for (int j = i + 1; j < c_; ++j)
                if (!f_.eq(at(i, j), at(j, i))) return false;
        return true;
    }

    // in-place reduced row echelon form; returns pivot columns
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int sel = -1;
            for (int i = row; i < r_; ++i)
                if (!f_.is_zero(at(i, col))) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
            K li = f_.inv(at(row, col));
            for (int j = 0; j < c_; ++j) at(row, j) = f_.mul(at(row, j), li);
            for (int i = 0; i < r_; ++i) {
                if (i == row || f_.is_zero(at(i, col))) continue;
                K c = at(i, col);
                for (int j = 0; j < c_; ++j) at(i, j) = f_.sub(at(i, j), f_.mul(c, at(row, j)));
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Mat m = *this;
        return static_cast<int>(m.rref().size());
    }

    K det() const {
        if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
        Mat m = *this;
        K d = f_.one();
        for (int col = 0; col < c_; ++col) {
            int sel = -1;
            for (int i = col; i < r_; ++i)
                if (!f_.is_zero(m.at(i, col))) {
                    sel = i;
                    break;
                }
            if (sel < 0) return f_.zero();
            if (sel != col) {
                for (int j = 0; j < c_; ++j) std::swap(m.at(sel, j), m.at(col, j));
                d = f_.neg(d);
            }
            d = f_.mul(d, m.at(col, col));
            K li = f_.inv(m.at(col, col));
            for (int i = col + 1; i < r_; ++i) {
                if (f_.is_zero(m.at(i, col))) continue;
                K c = f_.mul(m.at(i, col), li);
                for (int j = col; j < c_; ++j)
                    m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(col, j)));
            }
        }
        return d;
    }

    Mat inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        Mat aug(f_, r_, 2 * c_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_ + i) = f_.one();
        }
        auto piv = aug.rref();
        if (static_cast<int>(piv.size()) != r_ || piv.back() >= c_)
            throw std::domain_error("matrix not invertible");
        Mat inv(f_, r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
        return inv;
    }

    // basis of the right kernel, rows of the result; canonical w.r.t. rref
    Mat kernel() const {
        Mat m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (int p : piv) is_piv[p] = true;
        int nk = c_ - static_cast<int>(piv.size());
        Mat ker(f_, nk, c_);
        int kr = 0;
        for (int col = 0; col < c_; ++col) {
            if (is_piv[col]) continue;
            ker.at(kr, col) = f_.one();
            for (size_t i = 0; i < piv.size(); ++i)
                ker.at(kr, piv[i]) = f_.neg(m.at(static_cast<int>(i), col));
            ++kr;
        }
        return ker;
    }

    // one solution of A x = b, or nothing when inconsistent
    std::optional<Vec<F>> solve(const Vec<F>& b) const {
        if (static_cast<int>(b.size()) != r_) throw std::invalid_argument("solve shape mismatch");
        Mat aug(f_, r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, c_) = b[i];
        }
        auto piv = aug.rref();
        if (!piv.empty() && piv.back() == c_) return std::nullopt;
        Vec<F> x(c_, f_.zero());
        for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(static_cast<int>(i), c_);
        return x;
    }

  private:
    F f_;
    int r_, c_;
    std::vector<K> a_;

    void check_same_shape(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }
};

}  // namespace pencils
