// Sign reasoning over the positive orthant.  A PositivityContext records
// which variables are assumed strictly positive and which auxiliary
// polynomials a case hypothesis asserts nonzero; the only derived rule is
// the sound one: a nonzero polynomial whose terms all carry coefficients of
// one sign, in positive variables only, cannot vanish on the orthant.
#pragma once

#include <vector>

#include "unhinge/poly.hpp"

namespace unhinge {

class PositivityContext {
  public:
    explicit PositivityContext(RegistryPtr reg) : reg_(std::move(reg)) {}

    void declare_positive(int var);
    void declare_positive(const std::string& name);
    // Case hypothesis: `p` is asserted nonzero on the branch under study
    // (e.g. x^3 - k13^3 away from the equal-distance locus).
    void assume_nonzero(const Poly& p);

    bool is_positive_var(int var) const;

    // +1 if p is strictly positive on the positive orthant, -1 if strictly
    // negative, 0 if this context cannot decide.  Never unsound: 0 is the
    // answer for anything sign-indefinite or involving undeclared variables.
    int sign(const Poly& p) const;

    // True when sign(p) != 0 or p is (a scalar multiple of) an assumed
    // nonzero hypothesis.
    bool certified_nonzero(const Poly& p) const;

    const RegistryPtr& registry() const { return reg_; }

  private:
    RegistryPtr reg_;
    std::vector<bool> positive_ = std::vector<bool>(kMaxVars, false);
    std::vector<Poly> nonzero_hypotheses_;
};

// Divides catalog factors out of p for as long as exact division succeeds.
// Every catalog entry must be certified nonzero by the context, so the zero
// set of the result on the admissible region equals that of p.  The result
// has no remaining catalog factor.
Poly strip_positive_factors(const Poly& p, const PositivityContext& ctx,
                            const std::vector<Poly>& catalog);

}  // namespace unhinge
