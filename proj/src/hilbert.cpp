#include "pencils/hilbert.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace pencils {

namespace {

// residue of a p-unit rational mod m (m a power of an odd prime or of 2)
Int unit_residue(const Rat& u, const Int& m) {
    Int n = u.get_num() % m, d = u.get_den() % m;
    if (n < 0) n += m;
    if (d < 0) d += m;
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("denominator shares a factor with the modulus");
    return n * dinv % m;
}

int legendre_of_unit(const Rat& u, const Int& p) {
    int s = legendre_symbol(u.get_num(), p) * legendre_symbol(u.get_den(), p);
    if (s == 0) throw std::logic_error("unit expected");
    return s;
}

// (u-1)/2 mod 2 for a 2-adic unit
int eps2(const Rat& u) { return unit_residue(u, Int(4)) == 1 ? 0 : 1; }
// (u^2-1)/8 mod 2 for a 2-adic unit
int omega2(const Rat& u) {
    Int r = unit_residue(u, Int(8));
    return (r == 1 || r == 7) ? 0 : 1;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
    if (v.real) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = v.p;
    long alpha = rat_valuation(a, p), beta = rat_valuation(b, p);
    Rat u = rat_unit_part(a, p), w = rat_unit_part(b, p);
    if (p == 2) {
        int e = eps2(u) * eps2(w) + static_cast<int>(alpha) * omega2(w) +
                static_cast<int>(beta) * omega2(u);
        return (e % 2 + 2) % 2 == 0 ? 1 : -1;
    }
    int sign = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 != 0 && legendre_of_unit(u, p) == -1) sign = -sign;
    if (alpha % 2 != 0 && legendre_of_unit(w, p) == -1) sign = -sign;
    return sign;
}

int hasse_invariant(const std::vector<Rat>& diag, const Place& v) {
    for (const Rat& d : diag)
        if (d == 0) throw std::invalid_argument("Hasse invariant needs nonzero entries");
    int s = 1;
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) s *= hilbert_symbol(diag[i], diag[j], v);
    return s;
}

bool is_square_in_qp(const Rat& x, const Place& v) {
    if (x == 0) return true;
    if (v.real) return x > 0;
    long val = rat_valuation(x, v.p);
    if (val % 2 != 0) return false;
    Rat u = rat_unit_part(x, v.p);
    if (v.p == 2) return unit_residue(u, Int(8)) == 1;
    return legendre_of_unit(u, v.p) == 1;
}

std::vector<Place> relevant_places(const std::vector<Rat>& diag) {
    std::vector<Place> out{Place::infinite(), Place::prime(Int(2))};
    std::vector<Int> primes;
    for (const Rat& d : diag) {
        if (d == 0) continue;
        for (const Int& p : prime_divisors(d.get_num())) primes.push_back(p);
        for (const Int& p : prime_divisors(d.get_den())) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes)
        if (p != 2) out.push_back(Place::prime(p));
    return out;
}

bool isotropic_local_diag(const std::vector<Rat>& diag, const Place& v) {
    const int n = static_cast<int>(diag.size());
    if (n <= 1) return false;
    if (v.real) {
        bool pos = false, neg = false;
        for (const Rat& d : diag) {
            if (d > 0) pos = true;
            if (d < 0) neg = true;
        }
        return pos && neg;
    }
    if (n >= 5) return true;
    Rat disc(1);
    for (const Rat& d : diag) disc *= d;
    if (n == 2) return is_square_in_qp(-disc, v);
    int eps = hasse_invariant(diag, v);
    int m11 = hilbert_symbol(Rat(-1), Rat(-1), v);
    if (n == 3) return eps == hilbert_symbol(Rat(-1), -disc, v);
    // n == 4: anisotropic iff disc is a square and eps = -(-1,-1)_v
    return !(is_square_in_qp(disc, v) && eps == -m11);
}

bool isotropic_over_qp(const QuadraticForm<QQ>& q, const Place& v) {
    auto diag = diagonalize_congruence(q).entries;
    for (const Rat& d : diag)
        if (d == 0) throw std::invalid_argument("local isotropy needs a nonsingular form");
    return isotropic_local_diag(diag, v);
}

QIsotropyResult isotropic_over_q(const QuadraticForm<QQ>& q) {
    auto diag = diagonalize_congruence(q).entries;
    for (const Rat& d : diag)
        if (d == 0) throw std::invalid_argument("isotropy over Q needs a nonsingular form");
    for (const Place& v : relevant_places(diag)) {
        if (!isotropic_local_diag(diag, v)) return {false, v};
    }
    return {true, std::nullopt};
}

std::optional<Vec<QQ>> find_rational_zero(const QuadraticForm<QQ>& q, long height_cap) {
    const int n = q.dim();
    QQ f;
    std::vector<long> x(n, 0);
    // shells of exact max-norm h, lexicographic within a shell
    for (long h = 1; h <= height_cap; ++h) {
        std::fill(x.begin(), x.end(), -h);
        while (true) {
            bool on_shell = false;
            for (long v : x) on_shell |= (v == h || v == -h);
            if (on_shell) {
                // primitive vectors only
                long g = 0;
                for (long v : x) g = std::gcd(g, std::abs(v));
                if (g == 1) {
                    Vec<QQ> vv;
                    vv.reserve(n);
                    for (long v : x) vv.push_back(Rat(v));
                    if (f.is_zero(q.evaluate(vv))) return vv;
                }
            }
            int i = n - 1;
            while (i >= 0 && x[i] == h) x[i--] = -h;
            if (i < 0) break;
            ++x[i];
        }
    }
    return std::nullopt;
}

}  // namespace pencils
