#pragma once

#include <optional>
#include <vector>

#include "pencils/quadform.hpp"
#include "pencils/rational.hpp"

namespace pencils {

// A place of Q: a finite prime or the real place.
struct Place {
    bool real = false;
    Int p = 0;

    static Place infinite() { return Place{true, Int(0)}; }
    static Place prime(Int q) { return Place{false, std::move(q)}; }

    bool operator==(const Place& o) const { return real == o.real && p == o.p; }
    std::string str() const { return real ? "real" : p.get_str(); }
};

// Hilbert symbol (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// Hasse invariant of a diagonal form: product of (a_i, a_j)_v over i < j.
// Entries must be nonzero.
int hasse_invariant(const std::vector<Rat>& diag, const Place& v);

bool is_square_in_qp(const Rat& x, const Place& v);

// Places where a diagonal form can fail to be isotropic: the real place, 2,
// and odd primes dividing a numerator or denominator of an entry.
std::vector<Place> relevant_places(const std::vector<Rat>& diag);

// Local isotropy of a nonsingular rational form by the classical
// dimension-by-dimension criteria.
bool isotropic_over_qp(const QuadraticForm<QQ>& q, const Place& v);
bool isotropic_local_diag(const std::vector<Rat>& diag, const Place& v);

struct QIsotropyResult {
    bool isotropic = false;
    // failing place when anisotropic
    std::optional<Place> obstruction;
};

// Hasse–Minkowski: isotropic over Q iff isotropic at every relevant place.
QIsotropyResult isotropic_over_q(const QuadraticForm<QQ>& q);

// Small exact search for a nontrivial rational zero, by increasing max-norm
// of primitive integer vectors. Returns the first zero in scan order.
std::optional<Vec<QQ>> find_rational_zero(const QuadraticForm<QQ>& q, long height_cap);

}  // namespace pencils
