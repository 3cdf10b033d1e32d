#include "unhinge/positivity.hpp"

#include <stdexcept>

namespace unhinge {

void PositivityContext::declare_positive(int var) {
    if (var < 0 || var >= static_cast<int>(reg_->size()))
        throw std::out_of_range("declare_positive: bad variable index");
    positive_[static_cast<size_t>(var)] = true;
}

void PositivityContext::declare_positive(const std::string& name) {
    int idx = reg_->index_of(name);
    if (idx < 0)
        throw std::out_of_range("declare_positive: unknown variable '" + name +
                                "'");
    declare_positive(idx);
}

void PositivityContext::assume_nonzero(const Poly& p) {
    if (p.is_zero())
        throw std::invalid_argument("assume_nonzero: zero polynomial");
    nonzero_hypotheses_.push_back(p);
}

bool PositivityContext::is_positive_var(int var) const {
    return var >= 0 && var < static_cast<int>(reg_->size()) &&
           positive_[static_cast<size_t>(var)];
}

int PositivityContext::sign(const Poly& p) const {
    if (p.is_zero()) return 0;
    size_t nv = reg_->size();
    int s = p.terms().front().c.sign();
    for (const Term& t : p.terms()) {
        if (t.c.sign() != s) return 0;
        for (size_t v = 0; v < nv; ++v)
            if (t.m.e[v] > 0 && !positive_[v]) return 0;
    }
    return s;
}

bool PositivityContext::certified_nonzero(const Poly& p) const {
    if (p.is_zero()) return false;
    if (sign(p) != 0) return true;
    for (const Poly& h : nonzero_hypotheses_) {
        // Scalar multiples of a hypothesis share its zero set.
        auto q = p.divide_exact(h);
        if (q && q->total_degree() == 0) return true;
    }
    return false;
}

Poly strip_positive_factors(const Poly& p, const PositivityContext& ctx,
                            const std::vector<Poly>& catalog) {
    for (const Poly& f : catalog) {
        if (!ctx.certified_nonzero(f))
            throw std::invalid_argument(
                "strip_positive_factors: catalog entry not certified nonzero: " +
                f.str());
    }
    if (p.is_zero()) return p;
    Poly r = p;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Poly& f : catalog) {
            if (f.total_degree() < 1) continue;  // constants are content, not factors
            for (;;) {
                auto q = r.divide_exact(f);
                if (!q) break;
                r = std::move(*q);
                changed = true;
            }
        }
    }
    return r;
}

}  // namespace unhinge
