#pragma once

#include <optional>

#include "pencils/factor.hpp"
#include "pencils/poly.hpp"
#include "pencils/rational.hpp"

namespace pencils {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// y^2 = f(t) with f monic squarefree of even degree 2g+2. The model being
// monic, the smooth projective curve has two rational points at infinity.
class HyperellipticCurve {
  public:
    explicit HyperellipticCurve(FqPoly f) : f_(std::move(f)) {
        if (f_.deg() < 4 || f_.deg() % 2 != 0)
            throw std::invalid_argument("curve needs even degree >= 4 (translate odd models first)");
        if (!f_.is_monic()) throw std::invalid_argument("curve model must be monic");
        if (!poly_squarefree(f_)) throw std::invalid_argument("curve model must be squarefree");
        g_ = f_.deg() / 2 - 1;
    }

    const FqPoly& f() const { return f_; }
    int genus() const { return g_; }
    const Fq& field() const { return f_.field(); }

  private:
    FqPoly f_;
    int g_;
};

inline constexpr uint64_t kEnumerationBound = 10'000'000;

// #C(F_{q^m}) by affine enumeration plus the two points at infinity.
uint64_t count_points(const HyperellipticCurve& c, int m, int workers = 1);

// Zeta numerator P(T) = prod (1 - alpha_i T): integer coefficients c_0..c_2g,
// c_0 = 1, from point counts over F_q, ..., F_{q^g} (g <= 3).
std::vector<Int> zeta_numerator(const HyperellipticCurve& c, int workers = 1);

// |Jac(C)(F_q)| = P(1).
Int jacobian_order(const HyperellipticCurve& c, int workers = 1);

// exact check of (sqrt(q)-1)^{2g} <= n <= (sqrt(q)+1)^{2g}
bool in_weil_interval(const Int& n, const Int& q, int g);

// Rational 2-torsion of Jac(C): even-cardinality Frobenius-stable subsets of
// the Weierstrass roots modulo complementation, group law symmetric
// difference. Root indices refer to the canonical splitting-field order.
struct TwoTorsionGroup {
    SplittingField splitting;
    std::vector<std::vector<int>> classes;  // canonical reps, sorted; identity first
};
TwoTorsionGroup two_torsion(const HyperellipticCurve& c, uint64_t seed = 0);

// Mumford pair on an odd-degree model: u monic, deg v < deg u, u | v^2 - h.
struct MumfordDivisor {
    FqPoly u, v;
    bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
};

// Degree-(2g+1) model of a genus-2 curve at a rational Weierstrass point,
// with classical Cantor composition/reduction. The Jacobian is untouched by
// the change of model, so this is an independent counting oracle.
class OddModel {
  public:
    static OddModel from_curve(const HyperellipticCurve& c, uint64_t seed = 0);

    const FqPoly& h() const { return h_; }
    const Fq& field() const { return h_.field(); }
    int genus() const { return g_; }

    MumfordDivisor identity() const;
    bool is_valid(const MumfordDivisor& d) const;
    MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
    MumfordDivisor negate(const MumfordDivisor& d) const;

    // every reduced divisor; requires q^2 within the enumeration bound
    std::vector<MumfordDivisor> enumerate_group() const;

  private:
    OddModel(FqPoly h, int g) : h_(std::move(h)), g_(g) {}
    FqPoly h_;
    int g_;
};

// count of reduced divisors D with 2D = 0 by full enumeration (genus 2)
uint64_t brute_two_torsion_count(const HyperellipticCurve& c, uint64_t seed = 0);

}  // namespace pencils
