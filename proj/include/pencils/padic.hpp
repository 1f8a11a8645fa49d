#pragma once

#include <optional>
#include <stdexcept>

#include "pencils/rational.hpp"

namespace pencils {

// Elements of Q_p known to an absolute precision: x = u * p^val with the unit
// u known modulo p^{prec - val}. Arithmetic tracks precision pessimistically,
// so a "zero" answer always means "zero to the stated precision".
class Padic {
  public:
    // exact zero at absolute precision prec
    Padic(Int p, long prec);
    Padic(Int p, long prec, const Rat& value);

    const Int& p() const { return p_; }
    long abs_precision() const { return prec_; }
    bool is_zero() const { return zero_; }  // zero to precision
    long valuation() const;                 // throws on (apparent) zero
    Int unit() const { return u_; }         // unit part modulo p^{prec - val}

    Padic add(const Padic& o) const;
    Padic sub(const Padic& o) const;
    Padic mul(const Padic& o) const;
    Padic div(const Padic& o) const;
    Padic neg() const;

    // square root by Hensel lifting when it exists at this precision
    std::optional<Padic> sqrt() const;

    bool is_unit() const { return !zero_ && val_ == 0; }

  private:
    Int p_;
    long prec_;   // absolute precision: value known mod p^prec
    bool zero_;   // no digits known to be nonzero below p^prec
    long val_;    // valuation when !zero_
    Int u_;       // unit, reduced mod p^{prec - val}

    Padic(Int p, long prec, long val, Int u);
    void reduce();
    Int ppow(long e) const;
};

}  // namespace pencils
