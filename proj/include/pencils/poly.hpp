#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace pencils {

// Univariate polynomial over a field object F (QQ or Fq). Coefficients are
// stored low-to-high with no trailing zeros; the zero polynomial has an empty
// coefficient vector and degree -1.
template <class F>
class Poly {
  public:
    using K = typename F::Elem;

    explicit Poly(F f) : f_(std::move(f)) {}
    Poly(F f, std::vector<K> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { normalize(); }

    static Poly zero(F f) { return Poly(std::move(f)); }
    static Poly one(F f) {
        Poly r(f);
        r.c_ = {f.one()};
        return r;
    }
    static Poly x(F f) {
        Poly r(f);
        r.c_ = {f.zero(), f.one()};
        return r;
    }
    static Poly constant(F f, K v) {
        Poly r(f);
        r.c_ = {std::move(v)};
        r.normalize();
        return r;
    }

    const F& field() const { return f_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return f_.zero();
        return c_[i];
    }
    K lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && f_.eq(c_.back(), f_.one()); }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!f_.eq(c_[i], o.c_[i])) return false;
        return true;
    }

    Poly operator+(const Poly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), f_.zero());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = f_.add(r[i], o.c_[i]);
        return Poly(f_, std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), f_.zero());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = f_.sub(r[i], o.c_[i]);
        return Poly(f_, std::move(r));
    }
    Poly operator-() const {
        std::vector<K> r = c_;
        for (auto& v : r) v = f_.neg(v);
        return Poly(f_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return zero(f_);
        std::vector<K> r(c_.size() + o.c_.size() - 1, f_.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (f_.is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = f_.add(r[i + j], f_.mul(c_[i], o.c_[j]));
        }
        return Poly(f_, std::move(r));
    }
    Poly scale(const K& s) const {
        std::vector<K> r = c_;
        for (auto& v : r) v = f_.mul(v, s);
        return Poly(f_, std::move(r));
    }

    // division with remainder; divisor nonzero
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly q(f_), r = *this;
        q.c_.assign(deg() >= d.deg() ? deg() - d.deg() + 1 : 0, f_.zero());
        K li = f_.inv(d.lead());
        while (!r.is_zero() && r.deg() >= d.deg()) {
            K c = f_.mul(r.lead(), li);
            int shift = r.deg() - d.deg();
            q.c_[shift] = c;
            for (int i = 0; i <= d.deg(); ++i)
                r.c_[shift + i] = f_.sub(r.c_[shift + i], f_.mul(c, d.c_[i]));
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scale(f_.inv(lead()));
    }

    Poly derivative() const {
        if (deg() < 1) return zero(f_);
        std::vector<K> r(c_.size() - 1, f_.zero());
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = f_.mul(c_[i], f_.from_int(static_cast<long>(i)));
        return Poly(f_, std::move(r));
    }

    K eval(const K& x) const {
        K r = f_.zero();
        for (int i = deg(); i >= 0; --i) r = f_.add(f_.mul(r, x), c_[i]);
        return r;
    }

    // this(x)^e mod m
    Poly pow_mod(mpz_class e, const Poly& m) const {
        Poly r = one(f_) % m;
        Poly b = *this % m;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
            b = (b * b) % m;
            e >>= 1;
        }
        return r;
    }

    // substitute x -> g(x)
    Poly compose(const Poly& g) const {
        Poly r = zero(f_);
        for (int i = deg(); i >= 0; --i) r = r * g + constant(f_, c_[i]);
        return r;
    }

  private:
    F f_;
    std::vector<K> c_;

    void normalize() {
        while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
    }
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return a.monic();
}

// g = gcd(a,b) monic, with g = u a + v b
template <class F>
struct XgcdResult {
    Poly<F> g, u, v;
};

template <class F>
XgcdResult<F> poly_xgcd(const Poly<F>& a, const Poly<F>& b) {
    const F& f = a.field();
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::one(f), s1 = Poly<F>::zero(f);
    Poly<F> t0 = Poly<F>::zero(f), t1 = Poly<F>::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1;
        r1 = r;
        Poly<F> s = s0 - q * s1;
        s0 = s1;
        s1 = s;
        Poly<F> t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = f.inv(r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

// true iff gcd(f, f') is constant; rejects the zero polynomial
template <class F>
bool poly_squarefree(const Poly<F>& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree test on zero polynomial");
    if (f.deg() == 0) return true;
    auto g = poly_gcd(f, f.derivative());
    return g.deg() == 0;
}

// Resultant via the Euclidean remainder sequence.
template <class F>
typename F::Elem poly_resultant(Poly<F> a, Poly<F> b) {
    const F& f = a.field();
    if (a.is_zero() || b.is_zero()) return f.zero();
    typename F::Elem acc = f.one();
    bool negate = false;
    while (b.deg() > 0) {
        auto r = a % b;
        if (r.is_zero()) {
            if (a.deg() > 0) return f.zero();
            break;
        }
        // res(a,b) = (-1)^{deg a deg b} lead(b)^{deg a - deg r} res(b, r)
        if ((a.deg() & 1) && (b.deg() & 1)) negate = !negate;
        typename F::Elem lb = b.lead();
        for (int i = 0; i < a.deg() - r.deg(); ++i) acc = f.mul(acc, lb);
        a = b;
        b = r;
    }
    if (b.deg() == 0) {
        typename F::Elem lb = b.lead();
        for (int i = 0; i < a.deg(); ++i) acc = f.mul(acc, lb);
    }
    return negate ? f.neg(acc) : acc;
}

}  // namespace pencils
