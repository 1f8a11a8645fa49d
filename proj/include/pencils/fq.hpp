#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pencils {

// Element of F_{p^k}: coefficient vector of length k against the owning
// field's modulus, entries reduced into [0, p). Elements do not carry their
// field; all arithmetic goes through an Fq instance.
struct FqElem {
    std::vector<int64_t> c;

    bool operator==(const FqElem&) const = default;
    auto operator<=>(const FqElem&) const = default;
};

// A finite field F_{p^k} of odd characteristic, presented as F_p[x]/(modulus)
// with a stored monic irreducible modulus. Towers are always flattened to a
// single extension of F_p (see FqEmbedding in factor.hpp).
class Fq {
  public:
    using Elem = FqElem;

    // F_p
    explicit Fq(int64_t p);
    // F_{p^k}, modulus coefficients low-to-high of length k+1, monic,
    // irreducible over F_p. Irreducibility is checked at construction.
    Fq(int64_t p, std::vector<int64_t> modulus);

    int64_t p() const { return p_; }
    int deg() const { return k_; }
    const std::vector<int64_t>& modulus() const { return mod_; }
    // p^k when it fits in uint64
    std::optional<uint64_t> size() const;

    Elem zero() const { return Elem{std::vector<int64_t>(k_, 0)}; }
    Elem one() const { return from_int(1); }
    Elem from_int(int64_t v) const;
    // class of x (requires k >= 2)
    Elem gen() const;
    // reduce arbitrary integer coefficients mod p; pads/validates length <= k
    Elem make(std::vector<int64_t> coeffs) const;

    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a.c == b.c; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pow(const Elem& a, uint64_t e) const;

    // x -> x^{p^e}
    Elem frobenius_power(const Elem& a, long e) const;
    // x -> x^p
    Elem frobenius(const Elem& a) const { return frobenius_power(a, 1); }

    // 1 for nonzero squares, -1 for nonsquares, 0 for zero
    int legendre(const Elem& a) const;
    std::optional<Elem> sqrt(const Elem& a) const;

    // radix-p packing: index = sum c_i p^i; requires size()
    Elem elem_at(uint64_t idx) const;
    uint64_t index_of(const Elem& a) const;

    Elem rand_elem(std::mt19937_64& rng) const;

    std::string to_string(const Elem& a) const;

    bool operator==(const Fq& o) const { return p_ == o.p_ && mod_ == o.mod_; }

  private:
    int64_t p_;
    int k_;
    std::vector<int64_t> mod_;  // length k_+1, monic

    int64_t red(int64_t v) const {
        v %= p_;
        return v < 0 ? v + p_ : v;
    }
};

// Deterministic lexicographically-first monic irreducible of given degree
// over F_p (degree >= 1; degree 1 returns x).
std::vector<int64_t> first_irreducible(int64_t p, int degree);

bool is_irreducible_mod_p(int64_t p, const std::vector<int64_t>& poly);

}  // namespace pencils
