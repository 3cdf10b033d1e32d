#include "unhinge/ratfunc.hpp"

#include <stdexcept>

namespace unhinge {
namespace {

Poly product(const RegistryPtr& reg, MonOrder order,
             const std::vector<Poly>& factors) {
    Poly r = Poly::constant(reg, order, Rational(1));
    for (const Poly& f : factors) r = r * f;
    return r;
}

}  // namespace

Poly RatFunc::den() const {
    return product(num_.registry(), num_.order(), den_);
}

CatalogPtr RatFunc::merge_catalog(const RatFunc& a, const RatFunc& b) {
    if (!a.catalog_) return b.catalog_;
    if (!b.catalog_ || a.catalog_ == b.catalog_) return a.catalog_;
    if (*a.catalog_ != *b.catalog_)
        throw std::invalid_argument("RatFunc: mismatched factor catalogs");
    return a.catalog_;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, catalog_); }

RatFunc RatFunc::scaled(const Rational& c) const {
    return RatFunc(num_.scaled(c), den_, catalog_).reduced();
}

RatFunc RatFunc::operator*(const Poly& p) const {
    return RatFunc(num_ * p, den_, catalog_).reduced();
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    std::vector<Poly> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return RatFunc(a.num_ * b.num_, std::move(den),
                   RatFunc::merge_catalog(a, b))
        .reduced();
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    // Common denominator by multiset union of the factor lists: match each
    // factor of b against an unused equal factor of a; unmatched factors on
    // either side scale the other side's numerator.
    std::vector<Poly> den = a.den_;
    std::vector<bool> matched(a.den_.size(), false);
    std::vector<Poly> extra_a;  // multiplies a's numerator
    for (const Poly& f : b.den_) {
        bool found = false;
        for (std::size_t i = 0; i < a.den_.size(); ++i) {
            if (!matched[i] && a.den_[i] == f) {
                matched[i] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            den.push_back(f);
            extra_a.push_back(f);
        }
    }
    std::vector<Poly> extra_b;  // multiplies b's numerator
    for (std::size_t i = 0; i < a.den_.size(); ++i)
        if (!matched[i]) extra_b.push_back(a.den_[i]);

    const RegistryPtr& reg = a.num_.registry() ? a.num_.registry()
                                               : b.num_.registry();
    MonOrder order = a.num_.registry() ? a.num_.order() : b.num_.order();
    Poly num = a.num_ * product(reg, order, extra_a) +
               b.num_ * product(reg, order, extra_b);
    return RatFunc(std::move(num), std::move(den),
                   RatFunc::merge_catalog(a, b))
        .reduced();
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc RatFunc::divided_by(const Poly& pivot) const {
    if (pivot.is_zero())
        throw std::invalid_argument("RatFunc: division by zero polynomial");
    std::vector<Poly> den = den_;
    Poly num = num_;
    if (catalog_) {
        Poly residual = pivot;
        for (const Poly& c : *catalog_) {
            if (c.total_degree() < 1) continue;
            for (;;) {
                auto q = residual.divide_exact(c);
                if (!q) break;
                residual = std::move(*q);
                den.push_back(c);
            }
        }
        if (!residual.is_constant())
            throw std::domain_error(
                "RatFunc: pivot does not factor over the catalog: " +
                pivot.str());
        num = num.scaled(residual.leading_coeff().inverse());
    } else if (pivot.is_constant()) {
        num = num.scaled(pivot.leading_coeff().inverse());
    } else {
        den.push_back(pivot);
    }
    return RatFunc(std::move(num), std::move(den), catalog_).reduced();
}

RatFunc RatFunc::reduced() const {
    RatFunc r = *this;
    if (r.num_.is_zero()) {
        r.den_.clear();
        return r;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < r.den_.size(); ++i) {
            auto q = r.num_.divide_exact(r.den_[i]);
            if (q) {
                r.num_ = std::move(*q);
                r.den_.erase(r.den_.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ * b.den() == b.num_ * a.den();
}

std::string RatFunc::str() const {
    if (den_.empty()) return num_.str();
    std::string s = "(" + num_.str() + ") / [";
    for (std::size_t i = 0; i < den_.size(); ++i) {
        if (i) s += " * ";
        s += "(" + den_[i].str() + ")";
    }
    return s + "]";
}

}  // namespace unhinge
