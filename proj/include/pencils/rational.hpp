#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pencils {

using Int = mpz_class;
using Rat = mpq_class;

// The rationals as a field object. Stateless: all instances denote the same
// field. Field objects of this shape (see also Fq) parameterize the generic
// polynomial/matrix templates.
struct QQ {
    using Elem = Rat;

    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_int(long v) const { return Rat(v); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return Rat(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    std::string to_string(const Elem& a) const { return a.get_str(); }
    Elem parse(const std::string& s) const {
        Rat r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
        r.canonicalize();
        return r;
    }

    bool operator==(const QQ&) const { return true; }
};

inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// ---- integer helpers ----

inline bool int_is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int int_sqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool rat_is_square(const Rat& x) {
    if (x < 0) return false;
    return int_is_square(x.get_num()) && int_is_square(x.get_den());
}

inline std::optional<Rat> rat_sqrt(const Rat& x) {
    if (!rat_is_square(x)) return std::nullopt;
    Rat r(int_sqrt(x.get_num()), int_sqrt(x.get_den()));
    r.canonicalize();
    return r;
}

// p-adic valuation of a nonzero rational.
inline long rat_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation of zero");
    Int num = x.get_num(), den = x.get_den();
    long v = 0;
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    return v;
}

// x / p^{v_p(x)}
inline Rat rat_unit_part(const Rat& x, const Int& p) {
    long v = rat_valuation(x, p);
    Rat pw(1);
    Int pp;
    mpz_pow_ui(pp.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v >= 0 ? v : -v));
    if (v >= 0)
        return x / Rat(pp);
    return x * Rat(pp);
}

// Distinct prime divisors of |n| by trial division. Intended for the small
// integers that show up in Hilbert-symbol and bad-prime computations.
inline std::vector<Int> prime_divisors(Int n) {
    std::vector<Int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline int legendre_symbol(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

}  // namespace pencils
