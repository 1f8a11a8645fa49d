#include "pencils/smallfq.hpp"

#include <stdexcept>

namespace pencils {

SmallFq::SmallFq(const Fq& field) : big_(field) {
    auto sz = field.size();
    if (!sz || *sz > kSmallFieldCap)
        throw std::invalid_argument("field too large for the small-field kernel");
    q_ = static_cast<uint32_t>(*sz);
    prime_ = field.deg() == 1;
    if (prime_) return;
    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    std::vector<FqElem> elems;
    elems.reserve(q_);
    for (uint32_t i = 0; i < q_; ++i) elems.push_back(big_.elem_at(i));
    for (uint32_t i = 0; i < q_; ++i) {
        neg_[i] = static_cast<int32_t>(big_.index_of(big_.neg(elems[i])));
        if (i) inv_[i] = static_cast<int32_t>(big_.index_of(big_.inv(elems[i])));
        for (uint32_t j = 0; j < q_; ++j) {
            add_[static_cast<size_t>(i) * q_ + j] =
                static_cast<int32_t>(big_.index_of(big_.add(elems[i], elems[j])));
            mul_[static_cast<size_t>(i) * q_ + j] =
                static_cast<int32_t>(big_.index_of(big_.mul(elems[i], elems[j])));
        }
    }
}

int32_t SmallFq::inv(int32_t a) const {
    if (a == 0) throw std::domain_error("division by zero in kernel field");
    if (!prime_) return inv_[a];
    // extended Euclid on machine words
    int64_t t = 0, nt = 1, r = q_, nr = a;
    while (nr != 0) {
        int64_t qq = r / nr;
        int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += q_;
    return static_cast<int32_t>(t);
}

}  // namespace pencils
