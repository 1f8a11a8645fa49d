#include "pencils/realroots.hpp"

#include <algorithm>

namespace pencils {

namespace {

std::vector<Poly<QQ>> sturm_chain(const Poly<QQ>& f) {
    std::vector<Poly<QQ>> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().deg() > 0) {
        auto rem = chain[chain.size() - 2] % chain.back();
        chain.push_back(-rem);
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

int sign_variations(const std::vector<Poly<QQ>>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& g : chain) {
        int s = sgn(g.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

Rat cauchy_bound(const Poly<QQ>& f) {
    Rat m(0);
    for (int i = 0; i < f.deg(); ++i) {
        Rat a = abs(f.coeff(i) / f.lead());
        if (a > m) m = a;
    }
    return m + 1;
}

}  // namespace

int sturm_count(const Poly<QQ>& f, const Rat& a, const Rat& b) {
    auto chain = sturm_chain(f);
    return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly<QQ>& f) {
    if (f.deg() < 1) return {};
    auto chain = sturm_chain(f);
    Rat bound = cauchy_bound(f);
    auto count = [&](const Rat& a, const Rat& b) {
        return sign_variations(chain, a) - sign_variations(chain, b);
    };
    std::vector<std::pair<Rat, Rat>> work{{-bound, bound}}, done;
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = count(a, b);
        if (n == 0) continue;
        if (n == 1) {
            done.push_back({a, b});
            continue;
        }
        Rat mid = (a + b) / 2;
        // nudge off a root of the chain head
        while (f.eval(mid) == 0) mid = (a + mid) / 2;
        work.push_back({a, mid});
        work.push_back({mid, b});
    }
    std::sort(done.begin(), done.end());
    // bisection cells are disjoint (they may share endpoints), and no
    // endpoint is a root by the nudging above
    return done;
}

std::vector<Rat> interval_samples(const Poly<QQ>& f) {
    auto roots = isolate_real_roots(f);
    Rat bound = cauchy_bound(f);
    std::vector<Rat> samples;
    samples.push_back(-bound - 1);
    for (size_t i = 0; i + 1 < roots.size(); ++i) {
        // interval endpoints are never roots, so the midpoint of the gap
        // [r_i, l_{i+1}] lies strictly between consecutive real roots
        samples.push_back((roots[i].second + roots[i + 1].first) / 2);
    }
    samples.push_back(bound + 1);
    return samples;
}

}  // namespace pencils
