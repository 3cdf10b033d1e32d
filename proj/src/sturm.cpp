#include "unhinge/sturm.hpp"

#include <stdexcept>

namespace unhinge {
namespace {

// Dense univariate polynomial, coeff[k] multiplying x^k, no trailing zeros.
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly derivative(const UniPoly& p) {
    UniPoly d;
    for (std::size_t k = 1; k < p.size(); ++k)
        d.push_back(p[k] * Rational(static_cast<long>(k)));
    trim(d);
    return d;
}

Rational eval(const UniPoly& p, const Rational& x) {
    Rational r(0);
    for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
    return r;
}

// Remainder of a by b (b nonzero).
UniPoly remainder(UniPoly a, const UniPoly& b) {
    while (degree(a) >= degree(b)) {
        Rational q = a.back() / b.back();
        int shift = degree(a) - degree(b);
        for (std::size_t k = 0; k < b.size(); ++k)
            a[k + static_cast<std::size_t>(shift)] -= q * b[k];
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

// Scale by a positive constant so coefficients are integers with gcd 1;
// positive scaling preserves every sign in the Sturm chain.
void normalize_positive(UniPoly& p) {
    if (p.empty()) return;
    Rational g(0);
    for (const Rational& c : p)
        if (!c.is_zero()) g = g.is_zero() ? c.abs() : gcd(g, c.abs());
    if (g.is_zero() || g.is_one()) return;
    for (Rational& c : p) c = c / g;
}

UniPoly gcd_poly(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
        normalize_positive(b);
    }
    return a;
}

// Exact quotient for the squarefree part (g divides p by construction).
UniPoly quotient(UniPoly a, const UniPoly& b) {
    UniPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (degree(a) >= degree(b) && !a.empty()) {
        Rational c = a.back() / b.back();
        int shift = degree(a) - degree(b);
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t k = 0; k < b.size(); ++k)
            a[k + static_cast<std::size_t>(shift)] -= c * b[k];
        trim(a);
    }
    return q;
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, derivative(p)};
    trim(chain[1]);
    while (!chain.back().empty() && degree(chain.back()) >= 0) {
        UniPoly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rational& c : r) c = -c;
        normalize_positive(r);
        chain.push_back(std::move(r));
        if (degree(chain.back()) == 0) break;
    }
    return chain;
}

int variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int v = 0;
    int prev = 0;
    for (const UniPoly& p : chain) {
        if (p.empty()) continue;
        int s = eval(p, x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

struct Context {
    std::vector<UniPoly> chain;
    int count(const Rational& lo, const Rational& hi) const {
        return variations(chain, lo) - variations(chain, hi);
    }
};

void isolate(const Context& ctx, const Rational& lo, const Rational& hi,
             int roots, const Rational& width, RootIsolation& out) {
    if (roots == 0) return;
    Rational span = hi - lo;
    if (roots == 1 && (span < width || span == width)) {
        out.intervals.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / Rational(2);
    int left = ctx.count(lo, mid);
    isolate(ctx, lo, mid, left, width, out);
    isolate(ctx, mid, hi, roots - left, width, out);
}

UniPoly to_dense(const Poly& p) {
    int var = -1;
    for (int v = 0; v < p.nvars(); ++v) {
        if (p.degree_in(v) > 0) {
            if (var >= 0)
                throw std::invalid_argument("sturm_roots: multivariate input");
            var = v;
        }
    }
    UniPoly d(static_cast<std::size_t>(p.total_degree()) + 1, Rational(0));
    for (const Term& t : p.terms())
        d[t.m[var < 0 ? 0 : var]] = t.c;
    trim(d);
    return d;
}

Context make_context(const Poly& p) {
    if (p.is_zero())
        throw std::invalid_argument("sturm_roots: zero polynomial");
    UniPoly u = to_dense(p);
    // Squarefree part: distinct roots only, and valid variation counts even
    // at multiple roots of the original.
    UniPoly g = gcd_poly(u, derivative(u));
    if (degree(g) > 0) u = quotient(u, g);
    normalize_positive(u);
    return Context{sturm_chain(u)};
}

}  // namespace

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("sturm_count: empty interval");
    Context ctx = make_context(p);
    if (degree(ctx.chain.front()) < 1) return 0;
    return ctx.count(lo, hi);
}

RootIsolation sturm_roots(const Poly& p, const Rational& lo, const Rational& hi,
                          const Rational& width) {
    if (!(lo < hi)) throw std::invalid_argument("sturm_roots: empty interval");
    if (width.sign() <= 0)
        throw std::invalid_argument("sturm_roots: width must be positive");
    Context ctx = make_context(p);
    RootIsolation out;
    if (degree(ctx.chain.front()) < 1) return out;
    out.count = ctx.count(lo, hi);
    isolate(ctx, lo, hi, out.count, width, out);
    return out;
}

}  // namespace unhinge
