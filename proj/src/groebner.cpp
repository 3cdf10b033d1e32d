#include "unhinge/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace unhinge {
namespace {

// S-polynomial with cross-multiplied (integer-friendly) coefficients:
// lc(g)·x^(l/lm(f))·f − lc(f)·x^(l/lm(g))·g, leading terms cancelling.
Poly spoly(const Poly& f, const Poly& g) {
    Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    return f.times_monomial(quotient(l, f.leading_monomial()),
                            g.leading_coeff()) -
           g.times_monomial(quotient(l, g.leading_monomial()),
                            f.leading_coeff());
}

struct SPair {
    int i, j;
    Monomial l;
};

// Minimal leading monomials, inter-reduced, monic, sorted ascending.
std::vector<Poly> reduce_basis(std::vector<Poly> g) {
    if (g.empty()) return g;
    int nv = g.front().nvars();
    MonOrder ord = g.front().order();
    // Minimalize: drop any element whose leading monomial is divisible by
    // another surviving element's leading monomial.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& mi = g[i].leading_monomial();
            const Monomial& mj = g[j].leading_monomial();
            if (mj.divides(mi) && (mi != mj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    // Inter-reduce: replace each element by its normal form against the
    // others, repeating until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> rest;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) rest.push_back(minimal[j]);
            Poly r = normal_form(minimal[i], rest);
            if (r != minimal[i]) {
                changed = true;
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() +
                                  static_cast<std::ptrdiff_t>(i));
                    --i;
                } else {
                    minimal[i] = r.primitive_part();
                }
            }
        }
    }
    for (Poly& p : minimal) p = p.monic();
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return compare(a.leading_monomial(), b.leading_monomial(), nv, ord) < 0;
    });
    return minimal;
}

}  // namespace

Poly normal_form(const Poly& p, const std::vector<Poly>& basis) {
    if (basis.empty()) return p;
    for (const Poly& g : basis) {
        p.check_compatible(g);
        if (g.is_zero())
            throw std::invalid_argument("normal_form: zero divisor in basis");
    }
    Poly w = p;
    std::vector<Term> remainder;
    while (!w.is_zero()) {
        const Term& lt = w.leading_term();
        bool reduced = false;
        for (const Poly& g : basis) {
            if (g.leading_monomial().divides(lt.m)) {
                w -= g.times_monomial(quotient(lt.m, g.leading_monomial()),
                                      lt.c / g.leading_coeff());
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            // Leading terms migrate in strictly descending order.
            remainder.push_back(lt);
            w -= Poly::from_terms(w.registry(), w.order(), {lt});
        }
    }
    return Poly::from_terms(p.registry(), p.order(), std::move(remainder));
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens) {
    std::vector<Poly> g;
    for (const Poly& p : gens)
        if (!p.is_zero()) g.push_back(p.primitive_part());
    if (g.empty()) return g;
    for (const Poly& p : g) g.front().check_compatible(p);
    int nv = g.front().nvars();
    MonOrder ord = g.front().order();

    std::vector<SPair> pending;
    std::set<std::pair<int, int>> pending_set;
    auto push_pair = [&](int i, int j) {
        pending.push_back(
            {i, j, lcm(g[i].leading_monomial(), g[j].leading_monomial())});
        pending_set.insert({i, j});
    };
    for (int j = 1; j < static_cast<int>(g.size()); ++j)
        for (int i = 0; i < j; ++i) push_pair(i, j);

    while (!pending.empty()) {
        // Normal strategy: smallest lcm first, ties by index pair.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            int c = compare(pending[k].l, pending[best].l, nv, ord);
            if (c < 0 || (c == 0 && std::make_pair(pending[k].i, pending[k].j) <
                                        std::make_pair(pending[best].i,
                                                       pending[best].j)))
                best = k;
        }
        SPair pr = pending[best];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        pending_set.erase({pr.i, pr.j});

        const Monomial& mi = g[pr.i].leading_monomial();
        const Monomial& mj = g[pr.j].leading_monomial();
        // Product criterion: coprime leading monomials reduce to zero.
        if (pr.l.total == mi.total + mj.total) continue;
        // Chain criterion: a third element divides the lcm and both
        // companion pairs have already been handled.
        bool skip = false;
        for (int k = 0; k < static_cast<int>(g.size()) && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!g[k].leading_monomial().divides(pr.l)) continue;
            auto a = std::minmax(pr.i, k);
            auto b = std::minmax(pr.j, k);
            if (!pending_set.count({a.first, a.second}) &&
                !pending_set.count({b.first, b.second}))
                skip = true;
        }
        if (skip) continue;

        Poly r = normal_form(spoly(g[pr.i], g[pr.j]), g);
        if (r.is_zero()) continue;
        g.push_back(r.primitive_part());
        int n = static_cast<int>(g.size()) - 1;
        for (int i = 0; i < n; ++i) push_pair(i, n);
    }
    return reduce_basis(std::move(g));
}

bool in_ideal(const Poly& p, const std::vector<Poly>& gb) {
    return normal_form(p, gb).is_zero();
}

bool is_groebner(const std::vector<Poly>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!normal_form(spoly(basis[i], basis[j]), basis).is_zero())
                return false;
    return true;
}

}  // namespace unhinge
