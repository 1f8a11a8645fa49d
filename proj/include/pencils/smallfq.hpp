#pragma once

#include <cstdint>
#include <vector>

#include "pencils/fq.hpp"

namespace pencils {

inline constexpr uint64_t kSmallFieldCap = 4096;

// Flat index-based arithmetic for a small finite field, used by the
// enumeration kernels. Elements are the radix-p packing indices of Fq, so 0
// and 1 are the additive and multiplicative identities. Prime fields compute
// directly; extensions use precomputed tables.
class SmallFq {
  public:
    explicit SmallFq(const Fq& field);

    uint32_t q() const { return q_; }
    const Fq& big() const { return big_; }

    int32_t add(int32_t a, int32_t b) const {
        if (prime_) {
            int32_t s = a + b;
            return s >= static_cast<int32_t>(q_) ? s - static_cast<int32_t>(q_) : s;
        }
        return add_[static_cast<size_t>(a) * q_ + b];
    }
    int32_t sub(int32_t a, int32_t b) const {
        if (prime_) {
            int32_t s = a - b;
            return s < 0 ? s + static_cast<int32_t>(q_) : s;
        }
        return add_[static_cast<size_t>(a) * q_ + neg_[b]];
    }
    int32_t neg(int32_t a) const {
        if (prime_) return a == 0 ? 0 : static_cast<int32_t>(q_) - a;
        return neg_[a];
    }
    int32_t mul(int32_t a, int32_t b) const {
        if (prime_) return static_cast<int32_t>((static_cast<int64_t>(a) * b) % q_);
        return mul_[static_cast<size_t>(a) * q_ + b];
    }
    int32_t inv(int32_t a) const;

    FqElem to_elem(int32_t a) const { return big_.elem_at(static_cast<uint64_t>(a)); }
    int32_t from_elem(const FqElem& e) const { return static_cast<int32_t>(big_.index_of(e)); }

  private:
    Fq big_;
    uint32_t q_;
    bool prime_;
    std::vector<int32_t> add_, mul_, neg_, inv_;
};

}  // namespace pencils
