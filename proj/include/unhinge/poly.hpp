// poly.hpp -- sparse multivariate polynomials over Rational.
//
// Terms are kept sorted in strictly descending monomial order with no zero
// coefficients, so equal polynomials have identical representations and the
// canonical string of a polynomial is unique.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "unhinge/rational.hpp"
#include "unhinge/registry.hpp"

namespace unhinge {

struct Term {
    Monomial m;
    Rational c;
};

class Poly {
public:
    Poly() = default;
    Poly(RegistryPtr reg, MonOrder order) : reg_(std::move(reg)), order_(order) {}

    static Poly zero(RegistryPtr reg, MonOrder order) { return Poly(std::move(reg), order); }
    static Poly constant(RegistryPtr reg, MonOrder order, const Rational& c);
    static Poly variable(RegistryPtr reg, MonOrder order, const std::string& name, unsigned e = 1);
    // Takes an arbitrary (monomial, coefficient) list, combines and sorts it.
    static Poly from_terms(RegistryPtr reg, MonOrder order, std::vector<Term> terms);

    const RegistryPtr& registry() const { return reg_; }
    MonOrder order() const { return order_; }
    int nvars() const { return reg_ ? reg_->size() : 0; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_constant()); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    const Term& leading_term() const;
    const Monomial& leading_monomial() const { return leading_term().m; }
    const Rational& leading_coeff() const { return leading_term().c; }

    // Total degree; -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int var) const;
    bool uses_var(int var) const { return degree_in(var) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Monomial& m, const Rational& c) const;
    Poly pow(unsigned e) const;

    // Simultaneous substitution  var index -> polynomial.
    Poly substitute(const std::map<int, Poly>& bindings) const;

    // Exact division: returns q with *this == q * d, or nullopt.
    std::optional<Poly> divide_exact(const Poly& d) const;

    // gcd of all coefficients (positive), matching sign of the leading term.
    Rational content() const;
    // this / content(): integer coefficients, gcd 1, positive leading coefficient.
    Poly primitive_part() const;
    Poly monic() const;

    // Coefficient of var^e as a polynomial (var removed from the exponents but
    // kept in the registry).
    Poly coefficient_of(int var, int e) const;
    // Exponents of var that occur with a nonzero coefficient, ascending.
    std::vector<int> support_in(int var) const;

    // Rebuilds the polynomial over another registry, matching variables by
    // name. Throws if a used variable is missing from the target registry.
    Poly map_to(const RegistryPtr& reg, MonOrder order) const;

    // Evaluates at a full rational point (one value per registry variable).
    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    std::string str() const;

    void check_compatible(const Poly& o) const;

private:
    RegistryPtr reg_;
    MonOrder order_ = MonOrder::degrevlex;
    std::vector<Term> terms_;  // strictly descending, no zero coefficients

    void normalize_sorted();  // combines equal monomials of a sorted list
    friend class PolyBuilder;
};

// Hash-map accumulator for products and long sums.
class PolyBuilder {
public:
    PolyBuilder(RegistryPtr reg, MonOrder order) : reg_(std::move(reg)), order_(order) {}
    void add(const Monomial& m, const Rational& c);
    void add_product(const Poly& a, const Poly& b);        // += a*b
    void add_scaled(const Poly& p, const Rational& c);     // += c*p
    Poly build();

private:
    struct MonHash {
        std::size_t operator()(const Monomial& m) const { return m.hash(); }
    };
    RegistryPtr reg_;
    MonOrder order_;
    std::unordered_map<Monomial, Rational, MonHash> acc_;
};

// Determinant of a small square matrix of polynomials (Laplace expansion).
Poly poly_det(const std::vector<std::vector<Poly>>& m);

}  // namespace unhinge
