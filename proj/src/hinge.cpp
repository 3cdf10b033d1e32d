#include "unhinge/hinge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "unhinge/parse.hpp"

namespace unhinge {
namespace {

using SymMat = std::vector<std::vector<RatFunc>>;

SymMat mat_zero(int n, const RegistryPtr& reg, CatalogPtr catalog) {
    return SymMat(
        static_cast<std::size_t>(n),
        std::vector<RatFunc>(static_cast<std::size_t>(n),
                             RatFunc::zero(reg, MonOrder::degrevlex, catalog)));
}

SymMat mat_mul(const SymMat& a, const SymMat& b) {
    int n = static_cast<int>(a.size());
    SymMat r = a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFunc acc = a[i][0] * b[0][j];
            for (int k = 1; k < n; ++k) acc = acc + a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

SymMat mat_add(const SymMat& a, const SymMat& b) {
    SymMat r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

SymMat mat_sub(const SymMat& a, const SymMat& b) {
    SymMat r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

SymMat mat_transpose(const SymMat& a) {
    SymMat r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = a[j][i];
    return r;
}

// e_ij^T M e_ij
RatFunc bracket(const SymMat& m, int i, int j) {
    return m[i][i] - m[i][j] - m[j][i] + m[j][j];
}

// Interaction data for one problem: squared distances b_ij, the interaction
// matrix A with column sums zero, and dA/dg for the free pair at g = 1.
struct Tables {
    SymMat b, A, Adot;
};

Poly var(const RegistryPtr& reg, const std::string& name, unsigned e = 1) {
    return Poly::variable(reg, MonOrder::degrevlex, name, e);
}

Poly rat(const RegistryPtr& reg, const Rational& c) {
    return Poly::constant(reg, MonOrder::degrevlex, c);
}

// n = 3, distance convention: variables r12, r13, x (= r23) and masses
// m1 (internal only), m2, m3.
Tables tables3(const RegistryPtr& reg, const CatalogPtr& catalog) {
    auto dist = [&](int i, int j) -> std::string {
        if (i == 0 && j == 1) return "r12";
        if (i == 0 && j == 2) return "r13";
        return "x";
    };
    const char* mass[] = {"m1", "m2", "m3"};
    Tables t;
    t.b = mat_zero(3, reg, catalog);
    t.A = mat_zero(3, reg, catalog);
    t.Adot = mat_zero(3, reg, catalog);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::string d = dist(std::min(i, j), std::max(i, j));
            t.b[i][j] = RatFunc(var(reg, d, 2), catalog);
            t.A[i][j] =
                RatFunc(var(reg, mass[i]), catalog).divided_by(var(reg, d, 3));
        }
    for (int j = 0; j < 3; ++j) {
        RatFunc diag = RatFunc::zero(reg, MonOrder::degrevlex, catalog);
        for (int i = 0; i < 3; ++i)
            if (i != j) diag = diag - t.A[i][j];
        t.A[j][j] = diag;
    }
    // Free pair (2, 3) in 1-based labels: d/dt A_ij = -3 m_i g x^-5 there.
    Poly x5 = var(reg, "x", 5);
    RatFunc m2x = RatFunc(var(reg, "m2").scaled(Rational(3)), catalog)
                      .divided_by(x5);
    RatFunc m3x = RatFunc(var(reg, "m3").scaled(Rational(3)), catalog)
                      .divided_by(x5);
    t.Adot[1][2] = -m2x;
    t.Adot[2][1] = -m3x;
    t.Adot[1][1] = m3x;
    t.Adot[2][2] = m2x;
    return t;
}

// n = 4, reciprocal convention: k_ij = 1/r_ij with k12 = 1, x = 1/r34,
// m4 = 1.  A is polynomial; only the squared distances need denominators.
Tables tables4(const RegistryPtr& reg, const CatalogPtr& catalog) {
    auto recip = [&](int i, int j) -> std::string {
        if (i == 0 && j == 1) return "";  // k12 = 1
        if (i == 2 && j == 3) return "x";
        return "k" + std::to_string(i + 1) + std::to_string(j + 1);
    };
    auto mass = [&](int i) -> Poly {
        if (i == 3) return rat(reg, Rational(1));
        return var(reg, "m" + std::to_string(i + 1));
    };
    Tables t;
    t.b = mat_zero(4, reg, catalog);
    t.A = mat_zero(4, reg, catalog);
    t.Adot = mat_zero(4, reg, catalog);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            std::string k = recip(std::min(i, j), std::max(i, j));
            if (k.empty()) {
                t.b[i][j] = RatFunc(rat(reg, Rational(1)), catalog);
                t.A[i][j] = RatFunc(mass(i), catalog);
            } else {
                t.b[i][j] = RatFunc(rat(reg, Rational(1)), catalog)
                                .divided_by(var(reg, k, 2));
                t.A[i][j] = RatFunc(mass(i) * var(reg, k, 3), catalog);
            }
        }
    for (int j = 0; j < 4; ++j) {
        RatFunc diag = RatFunc::zero(reg, MonOrder::degrevlex, catalog);
        for (int i = 0; i < 4; ++i)
            if (i != j) diag = diag - t.A[i][j];
        t.A[j][j] = diag;
    }
    // Free pair (3, 4): 1/r34^5 = x^5.
    Poly x5 = var(reg, "x", 5);
    RatFunc m3x = RatFunc(var(reg, "m3").scaled(Rational(3)) * x5, catalog);
    RatFunc m4x = RatFunc(x5.scaled(Rational(3)), catalog);
    t.Adot[2][3] = -m3x;
    t.Adot[3][2] = -m4x;
    t.Adot[2][2] = m4x;
    t.Adot[3][3] = m3x;
    return t;
}

// Substitutes variables inside a rational function.  Every denominator
// factor must substitute to a nonzero constant or stay catalog-divisible.
RatFunc substitute_entry(const RatFunc& r, const std::map<int, Poly>& bind) {
    RatFunc out(r.num().substitute(bind), r.catalog());
    for (const Poly& f : r.provenance()) {
        Poly fs = f.substitute(bind);
        if (fs.is_zero())
            throw std::domain_error("substitution zeroes a denominator factor");
        out = out.divided_by(fs);
    }
    return out;
}

// Rebuilds a rational function over another registry (n = 3 drops the
// internal m1 after it cancels from every coefficient).
RatFunc map_entry(const RatFunc& r, const RegistryPtr& reg,
                  const CatalogPtr& catalog) {
    RatFunc out(r.num().map_to(reg, MonOrder::degrevlex), catalog);
    for (const Poly& f : r.provenance())
        out = out.divided_by(f.map_to(reg, MonOrder::degrevlex));
    return out;
}

std::vector<Poly> multiset_minus(const std::vector<Poly>& a,
                                 const std::vector<Poly>& b) {
    std::vector<Poly> r = a;
    for (const Poly& f : b) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] == f) {
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        }
    }
    return r;
}

std::vector<Poly> multiset_union(const std::vector<Poly>& a,
                                 const std::vector<Poly>& b) {
    std::vector<Poly> r = a;
    std::vector<Poly> extra = multiset_minus(b, a);
    r.insert(r.end(), extra.begin(), extra.end());
    return r;
}

Poly product(const RegistryPtr& reg, const std::vector<Poly>& factors) {
    Poly p = rat(reg, Rational(1));
    for (const Poly& f : factors) p = p * f;
    return p;
}

// Scales a set of rational functions onto their common denominator and
// returns the cleared numerators plus the common multiplier.
std::vector<Poly> clear_common(const std::vector<RatFunc>& entries,
                               const RegistryPtr& reg, Poly* multiplier) {
    std::vector<Poly> uni;
    for (const RatFunc& e : entries) uni = multiset_union(uni, e.provenance());
    std::vector<Poly> cleared;
    for (const RatFunc& e : entries)
        cleared.push_back(e.num() *
                          product(reg, multiset_minus(uni, e.provenance())));
    if (multiplier) *multiplier = product(reg, uni);
    return cleared;
}

PositivityContext context4(const HingeProblem& hp) {
    PositivityContext ctx(hp.reg);
    for (const char* v : {"k13", "k14", "k23", "k24", "m1", "m2", "m3", "x"})
        ctx.declare_positive(v);
    ctx.assume_nonzero(parse_poly("k13^3 - x^3", hp.reg));
    ctx.assume_nonzero(parse_poly("k23^3 - x^3", hp.reg));
    return ctx;
}

}  // namespace

HingeProblem make_hinge_problem(int n) {
    HingeProblem hp;
    hp.n = n;
    if (n == 3) {
        hp.free_i = 1;
        hp.free_j = 2;
        hp.fixed = {{0, 1}, {0, 2}};
        hp.reg = make_registry({"r12", "r13", "m2", "m3", "x"});
        auto catalog = std::make_shared<std::vector<Poly>>();
        for (const char* v : {"r12", "r13", "x", "m2", "m3"})
            catalog->push_back(var(hp.reg, v));
        hp.catalog = catalog;
        hp.unknowns = {"rho12", "g23"};
    } else if (n == 4) {
        hp.free_i = 2;
        hp.free_j = 3;
        hp.fixed = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
        hp.reg = make_registry(
            {"k13", "k14", "k23", "k24", "m1", "m2", "m3", "x"});
        hp.reg_params =
            make_registry({"k13", "k14", "k23", "k24", "m1", "m2", "m3"});
        auto catalog = std::make_shared<std::vector<Poly>>();
        for (const char* v :
             {"k13", "k14", "k23", "k24", "x", "m1", "m2", "m3"})
            catalog->push_back(var(hp.reg, v));
        catalog->push_back(parse_poly("k13^3 - x^3", hp.reg));
        catalog->push_back(parse_poly("k23^3 - x^3", hp.reg));
        hp.catalog = catalog;
        hp.unknowns = {"rho12", "rho13", "rho23", "g34"};
    } else {
        throw std::invalid_argument("hinge analysis supports n = 3 or 4 only");
    }
    return hp;
}

LinearSystem gddot_system(const HingeProblem& hp) {
    // n = 3 is built over an extended registry including m1; the mass m1
    // cancels from every coefficient and the final map below verifies that.
    RegistryPtr reg = hp.reg;
    CatalogPtr catalog = hp.catalog;
    if (hp.n == 3) {
        reg = make_registry({"r12", "r13", "m2", "m3", "x", "m1"});
        auto cat = std::make_shared<std::vector<Poly>>();
        for (const char* v : {"r12", "r13", "x", "m2", "m3"})
            cat->push_back(var(reg, v));
        catalog = cat;
    }
    Tables t = hp.n == 3 ? tables3(reg, catalog) : tables4(reg, catalog);
    int n = hp.n;

    SymMat At = mat_transpose(t.A);

    // Bhat: off-diagonal -1/2 b_ij, zero diagonal.
    SymMat bhat = mat_zero(n, reg, catalog);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) bhat[i][j] = t.b[i][j].scaled(Rational(-1, 2));

    // Ghat for the free pair at g = 1.
    SymMat ghat = mat_zero(n, reg, catalog);
    ghat[hp.free_i][hp.free_j] = RatFunc(rat(reg, Rational(-1, 2)), catalog);
    ghat[hp.free_j][hp.free_i] = ghat[hp.free_i][hp.free_j];

    // Coefficient of the free-pair g:  2 (Ghat A + A^T Ghat) brackets plus
    // 1/2 (Bhat Adot + Adot^T Bhat) brackets.
    SymMat mg = mat_add(mat_mul(ghat, t.A), mat_mul(At, ghat));
    SymMat ma = mat_add(mat_mul(bhat, t.Adot),
                        mat_mul(mat_transpose(t.Adot), bhat));

    // Coefficient matrices for each rho unknown.
    std::vector<SymMat> mrho;
    std::vector<std::pair<int, int>> rho_pairs;
    for (int a = 0; a + 1 < n; ++a)
        for (int b = a + 1; b + 1 < n; ++b) rho_pairs.push_back({a, b});
    for (auto [a, b] : rho_pairs) {
        SymMat rhat = mat_zero(n, reg, catalog);
        rhat[a][b] = RatFunc(rat(reg, Rational(1)), catalog);
        rhat[b][a] = RatFunc(rat(reg, Rational(-1)), catalog);
        mrho.push_back(mat_sub(mat_mul(At, rhat), mat_mul(rhat, t.A)));
    }

    LinearSystem sys;
    sys.row_scale = hp.n == 4 ? Rational(1, 2) : Rational(1);
    for (auto [i, j] : hp.fixed) {
        std::vector<RatFunc> row;
        for (const SymMat& m : mrho)
            row.push_back(bracket(m, i, j).scaled(sys.row_scale));
        RatFunc g = bracket(mg, i, j).scaled(Rational(2)) +
                    bracket(ma, i, j).scaled(Rational(1, 2));
        row.push_back(g.scaled(sys.row_scale));
        sys.rows.push_back(std::move(row));
        sys.row_labels.push_back("gddot_" + std::to_string(i + 1) +
                                 std::to_string(j + 1));
    }

    if (hp.n == 3) {
        for (auto& row : sys.rows)
            for (auto& entry : row) entry = map_entry(entry, hp.reg, hp.catalog);
    }
    return sys;
}

ThreeBodyReport three_body_determinant(const HingeProblem& hp,
                                       const LinearSystem& sys) {
    if (hp.n != 3) throw std::invalid_argument("three_body_determinant: n != 3");
    ThreeBodyReport rep;
    rep.clear_multiplier = parse_poly("x^5*r12^3*r13^3", hp.reg);
    for (const auto& row : sys.rows) {
        std::vector<Poly> cleared;
        for (const RatFunc& entry : row) {
            RatFunc scaled = entry * rep.clear_multiplier;
            if (!scaled.provenance().empty())
                throw std::logic_error("three-body clearing left a denominator");
            cleared.push_back(scaled.num());
        }
        rep.cleared.push_back(std::move(cleared));
    }
    rep.det = poly_det(rep.cleared);
    PositivityContext ctx(hp.reg);
    for (const char* v : {"r12", "r13", "m2", "m3", "x"})
        ctx.declare_positive(v);
    rep.det_stripped = strip_positive_factors(rep.det, ctx, *hp.catalog);
    return rep;
}

FourBodyElimination four_body_eliminate(const HingeProblem& hp,
                                        const LinearSystem& sys) {
    if (hp.n != 4) throw std::invalid_argument("four_body_eliminate: n != 4");
    // Row order: gddot_12, gddot_13, gddot_14, gddot_23, gddot_24.
    // Unknowns: rho12, rho13, rho23, g34.
    const auto& rows = sys.rows;
    if (!rows[2][2].is_zero() || !rows[4][1].is_zero())
        throw std::logic_error("expected structural zeros in pivot rows");
    const Poly pivot13 = rows[2][1].num();   // ~ m3 (x^3 - k13^3)
    const Poly pivot23 = rows[4][2].num();   // ~ m3 (x^3 - k23^3)
    if (!rows[2][1].provenance().empty() || !rows[4][2].provenance().empty())
        throw std::logic_error("pivot entries unexpectedly have denominators");

    // rho13 = alpha1 rho12 + beta1, rho23 = alpha2 rho12 + beta2  (g34 = 1).
    RatFunc alpha1 = (-rows[2][0]).divided_by(pivot13);
    RatFunc beta1 = (-rows[2][3]).divided_by(pivot13);
    RatFunc alpha2 = (-rows[4][0]).divided_by(pivot23);
    RatFunc beta2 = (-rows[4][3]).divided_by(pivot23);

    FourBodyElimination out;
    int remaining[3] = {0, 1, 3};
    for (int idx = 0; idx < 3; ++idx) {
        const auto& row = rows[static_cast<std::size_t>(remaining[idx])];
        out.a[static_cast<std::size_t>(idx)] =
            row[0] + row[1] * alpha1 + row[2] * alpha2;
        out.b[static_cast<std::size_t>(idx)] =
            -(row[3] + row[1] * beta1 + row[2] * beta2);
        std::vector<Poly> cleared = clear_common(
            {out.a[static_cast<std::size_t>(idx)],
             out.b[static_cast<std::size_t>(idx)]},
            hp.reg, &out.clear_multiplier[static_cast<std::size_t>(idx)]);
        out.a_cleared[static_cast<std::size_t>(idx)] = cleared[0];
        out.b_cleared[static_cast<std::size_t>(idx)] = cleared[1];
    }

    // The three determinant constraints are indexed by the equations they
    // pivot on: f_1 ~ gddot_12, f_2 ~ gddot_14, f_3 ~ gddot_24.  Each equals
    // (up to declared nonzero factors) the 4x4 minor of the cleared system
    // omitting that row; the a_i/b_i cross-determinants above reproduce the
    // minors omitting gddot_12, gddot_13, gddot_23 (checked in tests).
    std::vector<Poly> minors = four_body_minors(hp, sys);
    out.f_raw[0] = minors[0];
    out.f_raw[1] = minors[2];
    out.f_raw[2] = minors[4];

    PositivityContext ctx = context4(hp);
    int xvar = hp.reg->index_of("x");
    for (int i = 0; i < 3; ++i) {
        out.f[static_cast<std::size_t>(i)] = strip_positive_factors(
            out.f_raw[static_cast<std::size_t>(i)], ctx, *hp.catalog);
        for (int e :
             out.f[static_cast<std::size_t>(i)].support_in(xvar)) {
            bool seen = false;
            for (int s : out.support) seen = seen || s == e;
            if (!seen) out.support.push_back(e);
        }
    }
    std::sort(out.support.begin(), out.support.end());

    // A coefficient vanishes (for positive parameters) exactly when its
    // positive-factor-free part vanishes, so strip monomial content before
    // any ideal computations.
    PositivityContext ctx_params(hp.reg_params);
    std::vector<Poly> catalog_params;
    for (int v = 0; v < hp.reg_params->size(); ++v) {
        ctx_params.declare_positive(v);
        catalog_params.push_back(Poly::variable(
            hp.reg_params, MonOrder::degrevlex, hp.reg_params->name(v)));
    }
    auto pick = [&](int i, int e) {
        Poly c = out.f[static_cast<std::size_t>(i)]
                     .coefficient_of(xvar, e)
                     .map_to(hp.reg_params, MonOrder::degrevlex);
        if (c.is_zero()) return c;
        return strip_positive_factors(c, ctx_params, catalog_params)
            .primitive_part();
    };
    for (int i = 0; i < 3; ++i) {
        std::vector<Poly> ci;
        for (std::size_t e = 0; e < out.support.size(); ++e)
            ci.push_back(pick(i, out.support[e]));
        out.coeff.push_back(std::move(ci));
    }
    out.subset = {pick(0, 0), pick(0, 9), pick(1, 0),
                  pick(1, 6), pick(2, 6), pick(2, 9)};
    return out;
}

AllKOneReport special_case_all_k_one(const HingeProblem& hp,
                                     const LinearSystem& sys) {
    if (hp.n != 4) throw std::invalid_argument("all-k-one case needs n = 4");
    std::map<int, Poly> bind;
    for (const char* v : {"k13", "k14", "k23", "k24"})
        bind[hp.reg->index_of(v)] = rat(hp.reg, Rational(1));

    Poly xcubed_m1 = parse_poly("x^3 - 1", hp.reg);
    auto solve_row = [&](const std::vector<RatFunc>& row) -> RatFunc {
        std::vector<RatFunc> s;
        for (const RatFunc& entry : row)
            s.push_back(substitute_entry(entry, bind));
        if (!s[0].is_zero() || !s[2].is_zero())
            throw std::logic_error("all-k-one: unexpected nonzero coefficient");
        // c * rho13 + e = 0 with c = q * (x^3 - 1): rho13 (x^3 - 1) = -e / q.
        auto q = s[1].num().divide_exact(xcubed_m1);
        if (!q || !s[1].provenance().empty())
            throw std::logic_error("all-k-one: rho13 coefficient shape");
        return (-s[3]).divided_by(*q);
    };
    AllKOneReport rep;
    rep.side2 = solve_row(sys.rows[1]);
    rep.side3 = solve_row(sys.rows[2]);

    RatFunc diff = rep.side2 - rep.side3;
    if (!diff.provenance().empty())
        throw std::logic_error("all-k-one: constraint has a denominator");
    Poly constraint = diff.num().primitive_part();
    RegistryPtr regx = make_registry({"x"});
    rep.witness = constraint.map_to(regx, MonOrder::degrevlex);
    return rep;
}

std::vector<Poly> four_body_minors(const HingeProblem& hp,
                                   const LinearSystem& sys) {
    if (hp.n != 4) throw std::invalid_argument("four_body_minors: n != 4");
    std::vector<std::vector<Poly>> cleared;
    for (const auto& row : sys.rows)
        cleared.push_back(clear_common(row, hp.reg, nullptr));
    std::vector<Poly> minors;
    for (std::size_t omit = 0; omit < cleared.size(); ++omit) {
        std::vector<std::vector<Poly>> m;
        for (std::size_t r = 0; r < cleared.size(); ++r)
            if (r != omit) m.push_back(cleared[r]);
        minors.push_back(poly_det(m));
    }
    return minors;
}

std::vector<Poly> clear_row(const std::vector<RatFunc>& entries,
                            const RegistryPtr& reg, Poly* multiplier) {
    return clear_common(entries, reg, multiplier);
}

}  // namespace unhinge
