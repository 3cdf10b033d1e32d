// Rational functions with tracked denominators.  The denominator is never a
// free polynomial: it is stored as a list of provenance factors, each of
// which the surrounding derivation has asserted nonzero.  When a catalog is
// attached, division pivots must factor over it, so clearing denominators
// later is guaranteed to multiply only by known-nonzero quantities.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "unhinge/poly.hpp"

namespace unhinge {

using CatalogPtr = std::shared_ptr<const std::vector<Poly>>;

class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(Poly num, CatalogPtr catalog = nullptr)
        : num_(std::move(num)), catalog_(std::move(catalog)) {}

    static RatFunc zero(const RegistryPtr& reg, MonOrder order,
                        CatalogPtr catalog = nullptr) {
        return RatFunc(Poly::zero(reg, order), std::move(catalog));
    }

    const Poly& num() const { return num_; }
    const std::vector<Poly>& provenance() const { return den_; }
    Poly den() const;  // product of provenance factors (1 if none)
    const CatalogPtr& catalog() const { return catalog_; }

    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    RatFunc operator*(const Poly& p) const;
    RatFunc scaled(const Rational& c) const;

    // Divides by a pivot polynomial.  With a catalog attached the pivot must
    // equal a rational constant times a product of catalog entries; the
    // entries join the provenance and the constant is absorbed into the
    // numerator.  Without a catalog the pivot itself becomes a factor.
    RatFunc divided_by(const Poly& pivot) const;

    // Cancels provenance factors that divide the numerator exactly.
    RatFunc reduced() const;

    // Cross-multiplied equality: a.num * b.den == b.num * a.den.
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) {
        return !(a == b);
    }

    std::string str() const;

  private:
    RatFunc(Poly num, std::vector<Poly> den, CatalogPtr catalog)
        : num_(std::move(num)),
          den_(std::move(den)),
          catalog_(std::move(catalog)) {}

    static CatalogPtr merge_catalog(const RatFunc& a, const RatFunc& b);

    Poly num_;
    std::vector<Poly> den_;  // denominator = product of these factors
    CatalogPtr catalog_;
};

}  // namespace unhinge
