#include "pencils/fq.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pencils {

namespace {

// Raw polynomial arithmetic over F_p on coefficient vectors (low-to-high,
// not normalized). Used for modulus checks and element arithmetic.

int64_t modp(int64_t v, int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

void trim(std::vector<int64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<int64_t> mul_raw(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                             int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

int64_t inv_mod_p(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = modp(a, p);
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return modp(t, p);
}

// a mod m, m monic
std::vector<int64_t> rem_raw(std::vector<int64_t> a, const std::vector<int64_t>& m, int64_t p) {
    trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        int64_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (size_t i = 0; i < m.size(); ++i)
                a[shift + i] = modp(a[shift + i] - lead * m[i] % p, p);
        }
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

std::vector<int64_t> mulmod_raw(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                                const std::vector<int64_t>& m, int64_t p) {
    return rem_raw(mul_raw(a, b, p), m, p);
}

std::vector<int64_t> powmod_raw(std::vector<int64_t> base, mpz_class e,
                                const std::vector<int64_t>& m, int64_t p) {
    std::vector<int64_t> r{1};
    base = rem_raw(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulmod_raw(r, base, m, p);
        base = mulmod_raw(base, base, m, p);
        e >>= 1;
    }
    return r;
}

std::vector<int64_t> gcd_raw(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // reduce a mod b: make b monic first
        int64_t li = inv_mod_p(b.back(), p);
        for (auto& x : b) x = modp(x * li % p, p);
        a = rem_raw(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        int64_t li = inv_mod_p(a.back(), p);
        for (auto& x : a) x = modp(x * li % p, p);
    }
    return a;
}

}  // namespace

bool is_irreducible_mod_p(int64_t p, const std::vector<int64_t>& poly) {
    std::vector<int64_t> f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const int n = static_cast<int>(f.size()) - 1;
    if (f.back() != 1) return false;  // callers pass monic
    if (n == 1) return true;
    // Rabin: x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for prime l | n
    std::vector<int64_t> x{0, 1};
    mpz_class pz(static_cast<long>(p));
    mpz_class pn;
    mpz_pow_ui(pn.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n));
    auto xq = powmod_raw(x, pn, f, p);
    auto xr = rem_raw(x, f, p);
    if (xq != xr) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) lprime = false;
        if (!lprime) continue;
        mpz_class pm;
        mpz_pow_ui(pm.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n / l));
        auto xm = powmod_raw(x, pm, f, p);
        // gcd(x^{p^{n/l}} - x, f)
        std::vector<int64_t> diff = xm;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = modp(diff[1] - 1, p);
        trim(diff);
        auto g = gcd_raw(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<int64_t> first_irreducible(int64_t p, int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    if (degree == 1) return {0, 1};
    // odometer over the low coefficients, low coefficient varies fastest
    std::vector<int64_t> f(degree + 1, 0);
    f[degree] = 1;
    while (true) {
        if (is_irreducible_mod_p(p, f)) return f;
        int i = 0;
        while (i < degree && ++f[i] == p) f[i++] = 0;
        if (i == degree) throw std::logic_error("no irreducible found");  // unreachable
    }
}

Fq::Fq(int64_t p) : p_(p), k_(1), mod_{0, 1} {
    if (p < 3) throw std::invalid_argument("characteristic must be an odd prime");
    if (p % 2 == 0) throw std::invalid_argument("characteristic 2 is not supported");
    mpz_class pz(static_cast<long>(p));
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 30)) throw std::invalid_argument("p is not prime");
}

Fq::Fq(int64_t p, std::vector<int64_t> modulus) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("characteristic must be an odd prime");
    mpz_class pz(static_cast<long>(p));
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 30)) throw std::invalid_argument("p is not prime");
    for (auto& c : modulus) c = modp(c, p);
    trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    k_ = static_cast<int>(modulus.size()) - 1;
    mod_ = std::move(modulus);
    if (k_ > 1 && !is_irreducible_mod_p(p_, mod_))
        throw std::invalid_argument("modulus is reducible over F_p");
}

std::optional<uint64_t> Fq::size() const {
    uint64_t s = 1;
    for (int i = 0; i < k_; ++i) {
        if (s > UINT64_MAX / static_cast<uint64_t>(p_)) return std::nullopt;
        s *= static_cast<uint64_t>(p_);
    }
    return s;
}

FqElem Fq::from_int(int64_t v) const {
    std::vector<int64_t> c(k_, 0);
    c[0] = red(v);
    return Elem{std::move(c)};
}

FqElem Fq::gen() const {
    if (k_ < 2) throw std::logic_error("prime field has no generator element x");
    std::vector<int64_t> c(k_, 0);
    c[1] = 1;
    return Elem{std::move(c)};
}

FqElem Fq::make(std::vector<int64_t> coeffs) const {
    for (auto& c : coeffs) c = red(c);
    if (static_cast<int>(coeffs.size()) > k_) {
        auto r = rem_raw(std::move(coeffs), mod_, p_);
        r.resize(k_, 0);
        return Elem{std::move(r)};
    }
    coeffs.resize(k_, 0);
    return Elem{std::move(coeffs)};
}

bool Fq::is_zero(const Elem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](int64_t v) { return v == 0; });
}

FqElem Fq::add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (int i = 0; i < k_; ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= p_) r.c[i] -= p_;
    }
    return r;
}

FqElem Fq::sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (int i = 0; i < k_; ++i) {
        r.c[i] -= b.c[i];
        if (r.c[i] < 0) r.c[i] += p_;
    }
    return r;
}

FqElem Fq::neg(const Elem& a) const {
    Elem r = a;
    for (int i = 0; i < k_; ++i)
        if (r.c[i] != 0) r.c[i] = p_ - r.c[i];
    return r;
}

FqElem Fq::mul(const Elem& a, const Elem& b) const {
    if (k_ == 1) return Elem{{a.c[0] * b.c[0] % p_}};
    auto r = mulmod_raw(a.c, b.c, mod_, p_);
    r.resize(k_, 0);
    return Elem{std::move(r)};
}

FqElem Fq::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero in F_q");
    if (k_ == 1) return Elem{{inv_mod_p(a.c[0], p_)}};
    // extended Euclid in F_p[x] against the modulus
    std::vector<int64_t> r0 = mod_, r1 = a.c;
    trim(r1);
    std::vector<int64_t> t0, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<int64_t> q;
        std::vector<int64_t> rem = r0;
        trim(rem);
        int64_t li = inv_mod_p(r1.back(), p_);
        while (rem.size() >= r1.size() && !rem.empty()) {
            int64_t c = rem.back() * li % p_;
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = modp(rem[shift + i] - c * r1[i] % p_, p_);
            trim(rem);
        }
        // (r0, r1) = (r1, rem); (t0, t1) = (t1, t0 - q t1)
        auto qt1 = mul_raw(q, t1, p_);
        std::vector<int64_t> nt = t0;
        if (nt.size() < qt1.size()) nt.resize(qt1.size(), 0);
        for (size_t i = 0; i < qt1.size(); ++i) nt[i] = modp(nt[i] - qt1[i], p_);
        trim(nt);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = nt;
    }
    // r0 is gcd (degree 0 since modulus irreducible); scale t0 by r0^{-1}
    if (r0.size() != 1) throw std::domain_error("element not invertible");
    int64_t s = inv_mod_p(r0[0], p_);
    for (auto& c : t0) c = c * s % p_;
    t0 = rem_raw(std::move(t0), mod_, p_);
    t0.resize(k_, 0);
    return Elem{std::move(t0)};
}

FqElem Fq::pow(const Elem& a, uint64_t e) const {
    Elem r = one(), base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FqElem Fq::frobenius_power(const Elem& a, long e) const {
    if (k_ == 1) return a;
    e %= k_;
    if (e < 0) e += k_;
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), mpz_class(static_cast<long>(p_)).get_mpz_t(),
               static_cast<unsigned long>(e));
    auto r = powmod_raw(a.c, pe, mod_, p_);
    r.resize(k_, 0);
    return Elem{std::move(r)};
}

int Fq::legendre(const Elem& a) const {
    if (is_zero(a)) return 0;
    // a^{(q-1)/2}
    mpz_class q(1);
    for (int i = 0; i < k_; ++i) q *= static_cast<long>(p_);
    mpz_class e = (q - 1) / 2;
    auto r = powmod_raw(a.c, e, mod_, p_);
    r.resize(k_, 0);
    if (r == one().c) return 1;
    return -1;
}

std::optional<FqElem> Fq::sqrt(const Elem& a) const {
    if (is_zero(a)) return zero();
    if (legendre(a) != 1) return std::nullopt;
    mpz_class q(1);
    for (int i = 0; i < k_; ++i) q *= static_cast<long>(p_);
    if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 3) {
        mpz_class e = (q + 1) / 4;
        auto r = powmod_raw(a.c, e, mod_, p_);
        r.resize(k_, 0);
        return Elem{std::move(r)};
    }
    // Tonelli–Shanks; q = 1 mod 4
    mpz_class s = q - 1;
    unsigned long e2 = 0;
    while (mpz_even_p(s.get_mpz_t())) {
        s /= 2;
        ++e2;
    }
    // find a nonsquare in deterministic element order
    Elem z = zero();
    {
        uint64_t idx = 1;
        while (true) {
            std::vector<int64_t> c(k_, 0);
            uint64_t v = idx++;
            for (int i = 0; i < k_ && v; ++i) {
                c[i] = static_cast<int64_t>(v % static_cast<uint64_t>(p_));
                v /= static_cast<uint64_t>(p_);
            }
            Elem cand{c};
            if (legendre(cand) == -1) {
                z = cand;
                break;
            }
        }
    }
    auto powz = [&](const Elem& b, mpz_class e) {
        auto r = powmod_raw(b.c, e, mod_, p_);
        r.resize(k_, 0);
        return Elem{std::move(r)};
    };
    Elem m = powz(z, s);
    Elem c = powz(a, s);
    Elem r = powz(a, (s + 1) / 2);
    unsigned long t = e2;
    while (!eq(c, one())) {
        Elem d = c;
        unsigned long i = 0;
        while (!eq(d, one())) {
            d = mul(d, d);
            ++i;
        }
        Elem b = m;
        for (unsigned long j = 0; j + i + 1 < t; ++j) b = mul(b, b);
        m = mul(b, b);
        c = mul(c, m);
        r = mul(r, b);
        t = i;
    }
    return r;
}

FqElem Fq::elem_at(uint64_t idx) const {
    std::vector<int64_t> c(k_, 0);
    for (int i = 0; i < k_; ++i) {
        c[i] = static_cast<int64_t>(idx % static_cast<uint64_t>(p_));
        idx /= static_cast<uint64_t>(p_);
    }
    if (idx != 0) throw std::out_of_range("element index out of range");
    return Elem{std::move(c)};
}

uint64_t Fq::index_of(const Elem& a) const {
    uint64_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i)
        idx = idx * static_cast<uint64_t>(p_) + static_cast<uint64_t>(a.c[i]);
    return idx;
}

FqElem Fq::rand_elem(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int64_t> dist(0, p_ - 1);
    std::vector<int64_t> c(k_);
    for (auto& v : c) v = dist(rng);
    return Elem{std::move(c)};
}

std::string Fq::to_string(const Elem& a) const {
    std::string s = "[";
    for (int i = 0; i < k_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + "]";
}

}  // namespace pencils
