#include "pencils/padic.hpp"

namespace pencils {

Padic::Padic(Int p, long prec) : p_(std::move(p)), prec_(prec), zero_(true), val_(0), u_(0) {
    if (prec_ < 1) throw std::invalid_argument("p-adic precision must be >= 1");
    if (p_ < 2) throw std::invalid_argument("p must be prime");
}

Padic::Padic(Int p, long prec, const Rat& value) : Padic(std::move(p), prec) {
    if (value == 0) return;
    long v = rat_valuation(value, p_);
    if (v >= prec_) return;  // indistinguishable from zero at this precision
    Rat u = rat_unit_part(value, p_);
    // u = a/b with both prime to p; unit = a * b^{-1} mod p^{prec - v}
    Int mod = 1;
    mpz_pow_ui(mod.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(prec_ - v));
    Int binv;
    if (mpz_invert(binv.get_mpz_t(), u.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("denominator not invertible");
    Int uu = (u.get_num() % mod) * binv % mod;
    if (uu < 0) uu += mod;
    zero_ = false;
    val_ = v;
    u_ = uu;
}

Padic::Padic(Int p, long prec, long val, Int u)
    : p_(std::move(p)), prec_(prec), zero_(false), val_(val), u_(std::move(u)) {
    reduce();
}

Int Padic::ppow(long e) const {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

void Padic::reduce() {
    if (zero_) return;
    if (val_ >= prec_) {
        zero_ = true;
        u_ = 0;
        val_ = 0;
        return;
    }
    while (u_ != 0 && mpz_divisible_p(u_.get_mpz_t(), p_.get_mpz_t())) {
        u_ /= p_;
        ++val_;
        if (val_ >= prec_) {
            zero_ = true;
            u_ = 0;
            val_ = 0;
            return;
        }
    }
    Int mod = ppow(prec_ - val_);
    u_ %= mod;
    if (u_ < 0) u_ += mod;
    if (u_ == 0) {
        zero_ = true;
        val_ = 0;
    }
}

long Padic::valuation() const {
    if (zero_) throw std::domain_error("valuation of zero (to precision)");
    return val_;
}

Padic Padic::add(const Padic& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed p-adic primes");
    long prec = std::min(prec_, o.prec_);
    if (zero_) {
        Padic r = o;
        r.prec_ = prec;
        r.reduce();
        return r;
    }
    if (o.zero_) {
        Padic r = *this;
        r.prec_ = prec;
        r.reduce();
        return r;
    }
    long v = std::min(val_, o.val_);
    Int a = u_ * ppow(val_ - v);
    Int b = o.u_ * o.ppow(o.val_ - v);
    return Padic(p_, prec, v, a + b);
}

Padic Padic::neg() const {
    if (zero_) return *this;
    return Padic(p_, prec_, val_, ppow(prec_ - val_) - u_);
}

Padic Padic::sub(const Padic& o) const { return add(o.neg()); }

Padic Padic::mul(const Padic& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed p-adic primes");
    long prec = std::min(prec_, o.prec_);
    if (zero_ || o.zero_) return Padic(p_, prec);
    // relative precisions: prec-val each; result unit known to the min
    long rel = std::min(prec_ - val_, o.prec_ - o.val_);
    long v = val_ + o.val_;
    return Padic(p_, std::min(prec, v + rel), v, u_ * o.u_);
}

Padic Padic::div(const Padic& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed p-adic primes");
    if (o.zero_) throw std::domain_error("division by p-adic zero (to precision)");
    if (zero_) {
        long prec = std::min(prec_, o.prec_) - o.val_;
        return Padic(p_, prec < 1 ? 1 : prec);
    }
    long rel = std::min(prec_ - val_, o.prec_ - o.val_);
    Int mod = ppow(rel);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), o.u_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("unit not invertible");
    long v = val_ - o.val_;
    return Padic(p_, v + rel, v, (u_ % mod) * inv);
}

std::optional<Padic> Padic::sqrt() const {
    if (zero_) return Padic(p_, (prec_ + 1) / 2);
    if (val_ % 2 != 0) return std::nullopt;
    long rel = prec_ - val_;
    if (p_ == 2) {
        // units: square iff u = 1 mod 8 (for rel >= 3)
        if (rel < 3) return std::nullopt;  // cannot certify at this precision
        if (u_ % 8 != 1) return std::nullopt;
    } else {
        if (legendre_symbol(u_ % p_, p_) != 1) return std::nullopt;
    }
    // Hensel lift a root of x^2 = u
    long outrel = p_ == 2 ? rel - 1 : rel;
    Int x;
    if (p_ == 2) {
        x = 1;
        // lift mod 2^k: if x^2 != u mod 2^{k+1}, adjust by 2^{k-1}
        for (long k = 3; k < outrel + 1; ++k) {
            Int mod = ppow(k + 1);
            if ((x * x - u_) % mod != 0) x += ppow(k - 1);
        }
        x %= ppow(outrel);
    } else {
        // x mod p, then Newton
        Int r = u_ % p_;
        Int xx = 0;
        for (Int t = 0; t < p_; ++t)
            if ((t * t - r) % p_ == 0) {
                xx = t;
                break;
            }
        x = xx;
        long k = 1;
        while (k < outrel) {
            k = std::min(2 * k, outrel);
            Int mod = ppow(k);
            Int inv2x;
            if (mpz_invert(inv2x.get_mpz_t(), Int(2 * x).get_mpz_t(), mod.get_mpz_t()) == 0)
                throw std::logic_error("Hensel step failed");
            x = (x - (x * x - u_) % mod * inv2x) % mod;
            if (x < 0) x += mod;
        }
    }
    return Padic(p_, val_ / 2 + outrel, val_ / 2, x);
}

}  // namespace pencils
