// certify.cpp -- builds the end-to-end nonexistence certificates.
#include "unhinge/certify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "unhinge/groebner.hpp"
#include "unhinge/hinge.hpp"
#include "unhinge/parse.hpp"
#include "unhinge/sturm.hpp"

namespace unhinge {
namespace {

using nlohmann::ordered_json;

constexpr MonOrder kOrd = MonOrder::degrevlex;

Poly negate(const Poly& p) {
    return Poly::constant(p.registry(), p.order(), Rational(-1)) * p;
}

bool same_up_to_sign(const Poly& a, const Poly& b) {
    return a == b || a == negate(b);
}

// One case-tree node under construction.  Children are sorted by hypothesis
// string before the JSON is assembled.
struct CaseNode {
    std::string hypothesis;
    std::vector<std::pair<std::string, std::string>> substitutions;
    std::vector<Poly> basis;
    std::vector<MembershipRecord> memberships;
    std::vector<std::string> notes;
    bool is_leaf = false;
    ordered_json leaf;
    std::vector<CaseNode> children;
};

// Groebner-side state for one variable-order convention: the x-free
// parameter registry, a context with every parameter positive, and the
// saturation catalog (variables plus the mass sums that appear as factors
// in the derivation).
struct ChainCtx {
    RegistryPtr rp;
    PositivityContext ctx;
    std::vector<Poly> catalog;

    explicit ChainCtx(RegistryPtr r) : rp(std::move(r)), ctx(rp) {
        for (int v = 0; v < rp->size(); ++v) {
            ctx.declare_positive(v);
            catalog.push_back(Poly::variable(rp, kOrd, rp->name(v)));
        }
        for (const char* s : {"m1+m2", "m1+m3", "m2+m3", "1+m1+m2+m3"})
            catalog.push_back(parse_poly(s, rp));
    }

    Poly parse(const std::string& s) const { return parse_poly(s, rp); }

    Poly strip(const Poly& p) const {
        if (p.is_zero()) return p;
        return strip_positive_factors(p, ctx, catalog).primitive_part();
    }

    // Reduced Groebner basis, iterated with positive-factor stripping of
    // every element until the stripped basis regenerates itself.
    std::vector<Poly> saturated_gb(std::vector<Poly> gens) const {
        for (int round = 0; round < 32; ++round) {
            std::vector<Poly> gb = groebner_basis(gens);
            bool changed = false;
            std::vector<Poly> next;
            for (const Poly& g : gb) {
                Poly s = strip(g);
                if (s != g.primitive_part()) changed = true;
                next.push_back(s);
            }
            if (!changed) return gb;
            gens = std::move(next);
        }
        throw std::runtime_error("saturated_gb: no fixed point in 32 rounds");
    }

    std::vector<Poly> substituted(const std::vector<Poly>& gens,
                                  const std::string& var,
                                  const Poly& value) const {
        std::map<int, Poly> bind{{rp->index_of(var), value}};
        std::vector<Poly> out;
        for (const Poly& g : gens) {
            Poly s = g.substitute(bind);
            if (!s.is_zero()) out.push_back(s.primitive_part());
        }
        return out;
    }

    MembershipRecord membership(const std::string& node,
                                const std::vector<Poly>& basis,
                                const Poly& target) const {
        MembershipRecord r;
        r.node = node;
        r.poly = target.str();
        Poly pw = target;
        for (int j = 1; j <= kMaxMembershipPower; ++j) {
            Poly nf = normal_form(pw, basis);
            if (nf.is_zero()) {
                r.power = j;
                r.normal_form = nf.str();
                r.ok = true;
                return r;
            }
            pw = pw * target;
        }
        r.power = -1;
        r.ok = false;
        r.normal_form = normal_form(target, basis).str();
        return r;
    }

    // Informational scan: does some basis element reduce to a power of the
    // forced relation once positive factors are removed?
    std::string forced_scan(const std::vector<Poly>& basis,
                            const Poly& relation) const {
        Poly pw = relation;
        for (int j = 1; j <= 4; ++j) {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (same_up_to_sign(strip(basis[i]), pw.primitive_part()))
                    return "basis[" + std::to_string(i) +
                           "] is, up to positive factors, (" + relation.str() +
                           ")^" + std::to_string(j);
            }
            pw = pw * relation;
        }
        return "no basis element reduces to a power of " + relation.str() +
               "; the forcing rests on the membership record";
    }

    // After a successful membership the target vanishes on the admissible
    // set.  Removing factors certified nonzero (positive catalog entries
    // and branch hypotheses) and dividing by the expected linear relation
    // must leave a sign-definite cofactor; only then is the forced
    // substitution recorded as sound.
    bool force_relation(const Poly& target,
                        const std::vector<Poly>& branch_nonzero,
                        const Poly& relation, const std::string& consequence,
                        std::vector<std::string>* notes) const {
        Poly r = strip(target);
        int removed = 0;
        for (const Poly& nz : branch_nonzero) {
            while (true) {
                auto q = r.divide_exact(nz);
                if (!q) break;
                r = q->primitive_part();
                ++removed;
            }
        }
        auto q = r.divide_exact(relation);
        if (!q) {
            notes->push_back("FORCING FAILED: " + r.str() +
                             " is not divisible by " + relation.str());
            return false;
        }
        int s = ctx.sign(*q);
        if (s == 0 && !branch_nonzero.empty() &&
            same_up_to_sign(*q, Poly::constant(rp, kOrd, Rational(1)))) {
            s = 1;  // exact constant after removals
        }
        if (s == 0) {
            notes->push_back("FORCING FAILED: cofactor " + q->str() +
                             " of " + relation.str() + " is not sign-definite");
            return false;
        }
        std::string note = target.str() + " reduces to (" + relation.str() +
                           ") * (" + q->str() + ")";
        if (removed > 0)
            note += " after removing " + std::to_string(removed) +
                    " branch-nonzero factor(s)";
        note += "; the cofactor cannot vanish for positive parameters, so " +
                consequence;
        notes->push_back(note);
        return true;
    }

    // Contradiction closure: once nonzero factors are removed the target
    // must be a nonzero constant, so its required vanishing excludes every
    // admissible parameter value.
    bool close_contradiction(const Poly& target,
                             const std::vector<Poly>& branch_nonzero,
                             std::vector<std::string>* details) const {
        Poly r = strip(target);
        int removed = 0;
        for (const Poly& nz : branch_nonzero) {
            while (true) {
                auto q = r.divide_exact(nz);
                if (!q) break;
                r = q->primitive_part();
                ++removed;
            }
        }
        if (!r.is_constant() || r.is_zero()) {
            details->push_back("CONTRADICTION CHECK FAILED: residue " +
                               r.str() + " is not a nonzero constant");
            return false;
        }
        details->push_back(
            "the member polynomial equals " + r.str() +
            " times factors certified nonzero on this branch (" +
            std::to_string(removed) +
            " branch-nonzero factor(s) removed), yet it must vanish; no "
            "admissible parameters remain");
        return true;
    }
};

// Closure data for a leaf that pins the varying coordinate: the witness must
// be a nonzero polynomial whose leading x-coefficient cannot vanish for
// positive parameters, so x is confined to the witness's finite root set.
struct WitnessClosure {
    bool closed = false;
    int degree = 0;
    std::string lead;
};

WitnessClosure close_by_witness(const Poly& w, const std::string& xname) {
    WitnessClosure out;
    if (w.is_zero()) return out;
    const RegistryPtr& reg = w.registry();
    PositivityContext ctx(reg);
    for (int v = 0; v < reg->size(); ++v)
        if (reg->name(v) != xname) ctx.declare_positive(v);
    int x = reg->index_of(xname);
    out.degree = w.degree_in(x);
    Poly c = w.coefficient_of(x, out.degree);
    out.lead = c.str();
    out.closed = ctx.sign(c) != 0;
    return out;
}

// Exact count of positive real roots for a witness with constant
// coefficients, via a Cauchy bound and a Sturm chain.
int positive_root_count(const Poly& w, const std::string& xname) {
    int x = w.registry()->index_of(xname);
    int d = w.degree_in(x);
    Rational lead = w.coefficient_of(x, d).leading_coeff();
    Rational bound(1);
    for (int e = 0; e < d; ++e) {
        Poly c = w.coefficient_of(x, e);
        if (c.is_zero()) continue;
        Rational a = c.leading_coeff() / lead;
        if (a.sign() < 0) a = -a;
        if (bound < Rational(1) + a) bound = Rational(1) + a;
    }
    return sturm_count(w, Rational(0), bound);
}

ordered_json node_json(const CaseNode& n,
                       std::vector<MembershipRecord>* flat) {
    ordered_json j;
    j["hypothesis"] = n.hypothesis;
    ordered_json subs = ordered_json::object();
    for (const auto& [var, val] : n.substitutions) subs[var] = val;
    j["substitutions"] = subs;
    ordered_json basis = ordered_json::array();
    for (const Poly& b : n.basis) basis.push_back(b.str());
    j["basis"] = basis;
    ordered_json mems = ordered_json::array();
    for (const MembershipRecord& m : n.memberships) {
        flat->push_back(m);
        mems.push_back(ordered_json{{"poly", m.poly},
                                    {"power", m.power},
                                    {"normal_form", m.normal_form},
                                    {"ok", m.ok}});
    }
    j["memberships"] = mems;
    j["notes"] = n.notes;
    if (n.is_leaf) {
        j["leaf"] = n.leaf;
    } else {
        ordered_json kids = ordered_json::array();
        for (const CaseNode& c : n.children) kids.push_back(node_json(c, flat));
        j["children"] = kids;
    }
    return j;
}

void sort_children(CaseNode* n) {
    std::stable_sort(n->children.begin(), n->children.end(),
                     [](const CaseNode& a, const CaseNode& b) {
                         return a.hypothesis < b.hypothesis;
                     });
    for (CaseNode& c : n->children) sort_children(&c);
}

void count_tree(const CaseNode& n, int depth, int* branches, int* leaves,
                bool* all_closed) {
    if (n.is_leaf) {
        ++*leaves;
        if (!n.leaf.value("closed", false)) *all_closed = false;
        return;
    }
    if (depth == 1) ++*branches;  // non-leaf children of the root
    for (const CaseNode& c : n.children)
        count_tree(c, depth + 1, branches, leaves, all_closed);
}

ordered_json systems_json(const HingeProblem& hp, const LinearSystem& sys) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Poly mult = Poly::constant(hp.reg, kOrd, Rational(1));
        std::vector<Poly> cleared = clear_row(sys.rows[r], hp.reg, &mult);
        ordered_json entries = ordered_json::object();
        for (std::size_t c = 0; c < cleared.size(); ++c)
            entries[hp.unknowns[c]] = cleared[c].str();
        rows.push_back(ordered_json{{"row", sys.row_labels[r]},
                                    {"multiplier", mult.str()},
                                    {"entries", entries}});
    }
    return rows;
}

std::vector<int> x_support(const Poly& p, const std::string& xname) {
    int x = p.registry()->index_of(xname);
    std::vector<int> out;
    for (int e = 0; e <= p.degree_in(x); ++e)
        if (!p.coefficient_of(x, e).is_zero()) out.push_back(e);
    return out;
}

std::string convention_name(OrderConvention conv) {
    return conv == OrderConvention::k13_largest ? "k13-largest"
                                                : "k13-smallest";
}

Certificate assemble(int problem, const std::string& convention,
                     ordered_json problem_desc,
                     const std::vector<std::string>& variable_order,
                     ordered_json systems, ordered_json f_polys,
                     ordered_json support, ordered_json coefficients,
                     ordered_json generator_subset, CaseNode root, bool ok,
                     std::vector<std::string> notes) {
    sort_children(&root);

    Certificate cert;
    cert.problem = problem;
    cert.order_convention = convention;

    int branches = 0, leaves = 0;
    bool all_closed = true;
    count_tree(root, 0, &branches, &leaves, &all_closed);
    cert.branch_count = branches;
    cert.leaf_count = leaves;
    cert.all_leaves_closed = all_closed;

    ordered_json tree = node_json(root, &cert.memberships);
    cert.all_memberships_ok = true;
    for (const MembershipRecord& m : cert.memberships)
        if (!m.ok) cert.all_memberships_ok = false;

    bool verdict_ok = ok && all_closed && cert.all_memberships_ok;
    cert.verdict = verdict_ok ? "UNHINGED" : "FAILURE";

    ordered_json doc;
    doc["problem"] = std::move(problem_desc);
    doc["variable_order"] = variable_order;
    if (problem == 4) doc["order_convention"] = convention;
    doc["monomial_order"] = "degrevlex";
    doc["systems"] = std::move(systems);
    doc["f_polys"] = std::move(f_polys);
    doc["support"] = std::move(support);
    doc["coefficients"] = std::move(coefficients);
    if (problem == 4) doc["generator_subset"] = std::move(generator_subset);
    doc["case_tree"] = std::move(tree);
    doc["verdict"] = cert.verdict;
    doc["notes"] = notes;
    cert.json_text = doc.dump(2) + "\n";
    return cert;
}

Certificate certify3() {
    HingeProblem hp = make_hinge_problem(3);
    LinearSystem sys = gddot_system(hp);
    ThreeBodyReport rep = three_body_determinant(hp, sys);

    bool ok = !rep.det_stripped.is_zero();
    std::vector<std::string> notes;
    notes.push_back("both rows share the clearing multiplier " +
                    rep.clear_multiplier.str());
    notes.push_back(
        "the witness is the 2x2 determinant of the cleared system with "
        "positive factors removed");

    // The determinant derivation clears both rows by the same multiplier;
    // the certificate shows exactly that cleared matrix.
    ordered_json systems = ordered_json::array();
    for (std::size_t r = 0; r < rep.cleared.size(); ++r) {
        ordered_json entries = ordered_json::object();
        for (std::size_t c = 0; c < rep.cleared[r].size(); ++c)
            entries[hp.unknowns[c]] = rep.cleared[r][c].str();
        systems.push_back(ordered_json{{"row", sys.row_labels[r]},
                                       {"multiplier", rep.clear_multiplier.str()},
                                       {"entries", entries}});
    }

    CaseNode root;
    root.hypothesis = "root";
    root.is_leaf = true;
    WitnessClosure cl = close_by_witness(rep.det_stripped, "x");
    root.leaf["kind"] = "x_constrained";
    root.leaf["witness"] = rep.det_stripped.str();
    root.leaf["degree_in_x"] = cl.degree;
    root.leaf["leading_x_coefficient"] = cl.lead;
    root.leaf["closed"] = cl.closed;
    root.leaf["details"] = std::vector<std::string>{
        "the leading x-coefficient is a nonvanishing constant, so the "
        "varying distance is confined to the witness's finite root set for "
        "every positive parameter choice"};
    ok = ok && cl.closed;

    std::vector<int> support = x_support(rep.det_stripped, "x");
    ordered_json coeffs = ordered_json::array();
    ordered_json row = ordered_json::array();
    int x = hp.reg->index_of("x");
    for (int e : support)
        row.push_back(rep.det_stripped.coefficient_of(x, e).str());
    coeffs.push_back(row);

    ordered_json problem_desc{
        {"bodies", 3},
        {"varying_pair", "r23"},
        {"fixed_pairs", {"r12", "r13"}},
        {"coordinates", "plain distances; x = r23"},
        {"unknowns", hp.unknowns}};

    return assemble(3, "default", std::move(problem_desc), hp.reg->names(),
                    std::move(systems),
                    ordered_json::array({rep.det_stripped.str()}),
                    ordered_json(support), std::move(coeffs),
                    ordered_json::array(), std::move(root), ok,
                    std::move(notes));
}

Certificate certify4(OrderConvention conv) {
    HingeProblem hp = make_hinge_problem(4);
    LinearSystem sys = gddot_system(hp);
    FourBodyElimination el = four_body_eliminate(hp, sys);

    std::vector<std::string> names = hp.reg_params->names();
    if (conv == OrderConvention::k13_smallest)
        std::reverse(names.begin(), names.end());
    ChainCtx cc(make_registry(names));

    bool ok = true;
    std::vector<std::string> notes;
    notes.push_back(
        "rows are the vanishing second derivatives of the constant-pair g "
        "coordinates; each row is half the raw bracket and is cleared by the "
        "recorded monomial multiplier");
    notes.push_back(
        "triangular solve: rho13 from the gddot_14 row (pivot "
        "m3*(x^3 - k13^3)), rho23 from the gddot_24 row (pivot "
        "m3*(x^3 - k23^3)); f_1, f_2, f_3 equal, up to factors certified "
        "nonzero under the case split, the 4x4 minors omitting rows "
        "gddot_12, gddot_14, gddot_24");
    notes.push_back(
        "the elimination assumes x != k13 and x != k23; the complementary "
        "case is the leaf 'x = k13 or x = k23'");
    notes.push_back(
        "coefficients are reduced to primitive form: monomial content and "
        "factors that are strictly positive for positive parameters are "
        "removed");
    notes.push_back(
        "Groebner bases are reduced (monic, inter-reduced, sorted); each "
        "case basis is saturated by stripping factors certified positive "
        "(the seven variables, m1+m2, m1+m3, m2+m3, 1+m1+m2+m3) and "
        "recomputing until the basis is stable");
    notes.push_back(
        "membership records store the smallest exponent whose power has "
        "normal form zero; exponent 2 means the square of the polynomial "
        "lies in the case ideal");

    // Generators, mapped onto the convention registry.
    std::vector<Poly> S;
    for (const Poly& s : el.subset) S.push_back(s.map_to(cc.rp, kOrd));

    Poly one = Poly::constant(cc.rp, kOrd, Rational(1));
    Poly k24_cube = cc.parse("k24^3 - 1");

    // ---- root: saturated basis of S and the two quoted products ----
    CaseNode root;
    root.hypothesis = "root";
    root.basis = cc.saturated_gb(S);
    Poly q1 = cc.parse("m2*(m1+m2)*(k24^3-1)*(k14^3-k24^3)");
    Poly q2 = cc.parse("m2*(m1+m2)*(k24^3-1)*(k13^3-k23^3)");
    root.memberships.push_back(cc.membership("root", root.basis, q1));
    root.memberships.push_back(cc.membership("root", root.basis, q2));

    // The stripped products factor the case split: either k24^3 = 1, or
    // (with k24^3 - 1 nonzero) both k14^3 = k24^3 and k13^3 = k23^3.
    Poly r1 = cc.strip(q1);
    Poly r2 = cc.strip(q2);
    bool split1 = same_up_to_sign(r1, k24_cube * cc.parse("k14^3 - k24^3"));
    bool split2 = same_up_to_sign(r2, k24_cube * cc.parse("k13^3 - k23^3"));
    ok = ok && split1 && split2;
    root.notes.push_back(
        std::string(split1 && split2 ? "case split: " : "SPLIT CHECK FAILED: ") +
        "the members reduce to (k24^3 - 1)*(k14^3 - k24^3) and "
        "(k24^3 - 1)*(k13^3 - k23^3) after removing positive factors; "
        "either k24^3 - 1 = 0, or it is nonzero and both companion factors "
        "vanish");

    // ---- branch A: k24 = 1, then k23 = 1, k14 = 1, k13 = 1 ----
    ok = ok && cc.force_relation(k24_cube, {}, cc.parse("k24 - 1"),
                                 "k24 = 1 on this branch", &root.notes);

    CaseNode a1;
    a1.hypothesis = "k24 = 1";
    a1.substitutions = {{"k24", "1"}};
    a1.basis = cc.saturated_gb(cc.substituted(root.basis, "k24", one));
    Poly ta1 = cc.parse("(m1+m2)*m3*(k23^3-1)");
    a1.memberships.push_back(cc.membership(a1.hypothesis, a1.basis, ta1));
    ok = ok && a1.memberships.back().ok;
    ok = ok && cc.force_relation(ta1, {}, cc.parse("k23 - 1"), "k23 = 1",
                                 &a1.notes);
    a1.notes.push_back(cc.forced_scan(a1.basis, cc.parse("k23^3 - 1")));

    CaseNode a2;
    a2.hypothesis = "k23 = 1";
    a2.substitutions = {{"k23", "1"}};
    a2.basis = cc.saturated_gb(cc.substituted(a1.basis, "k23", one));
    Poly ta2 = cc.parse("m1*(k14^3-1)");
    a2.memberships.push_back(cc.membership(a2.hypothesis, a2.basis, ta2));
    ok = ok && a2.memberships.back().ok;
    ok = ok && cc.force_relation(ta2, {}, cc.parse("k14 - 1"), "k14 = 1",
                                 &a2.notes);
    a2.notes.push_back(cc.forced_scan(a2.basis, cc.parse("k14^3 - 1")));

    CaseNode a3;
    a3.hypothesis = "k14 = 1";
    a3.substitutions = {{"k14", "1"}};
    a3.basis = cc.saturated_gb(cc.substituted(a2.basis, "k14", one));
    Poly ta3 = cc.parse("k13^3 - 1");
    a3.memberships.push_back(cc.membership(a3.hypothesis, a3.basis, ta3));
    ok = ok && a3.memberships.back().ok;
    ok = ok && cc.force_relation(ta3, {}, cc.parse("k13 - 1"), "k13 = 1",
                                 &a3.notes);
    a3.notes.push_back(cc.forced_scan(a3.basis, ta3));

    // All reciprocal distances equal: the residual system pins x directly.
    CaseNode a4;
    a4.hypothesis = "k13 = 1";
    a4.substitutions = {{"k13", "1"}};
    a4.basis = cc.saturated_gb(cc.substituted(a3.basis, "k13", one));
    a4.is_leaf = true;
    AllKOneReport akr = special_case_all_k_one(hp, sys);
    WitnessClosure acl = close_by_witness(akr.witness, "x");
    bool witness_expected =
        akr.witness == parse_poly("x^3 - 4", akr.witness.registry());
    ok = ok && acl.closed && witness_expected;
    // The alternative candidate 5 x^3 = 2 cannot also hold: the two
    // constraints differ by a nonzero constant.
    Poly alt = parse_poly("5*x^3 - 2", akr.witness.registry());
    Poly gap = Poly::constant(akr.witness.registry(), kOrd, Rational(5)) *
                   akr.witness -
               alt;
    a4.leaf["kind"] = "x_constrained";
    a4.leaf["witness"] = akr.witness.str();
    a4.leaf["degree_in_x"] = acl.degree;
    a4.leaf["leading_x_coefficient"] = acl.lead;
    a4.leaf["closed"] = acl.closed && witness_expected;
    a4.leaf["positive_root_count"] = positive_root_count(akr.witness, "x");
    a4.leaf["details"] = std::vector<std::string>{
        "with every reciprocal distance equal to 1 and g34 = 1, two rows "
        "determine rho13*(x^3 - 1) as " + akr.side2.str() + " and as " +
            akr.side3.str() + "; equating them forces x^3 = 4",
        "the alternative candidate relation 5*x^3 = 2 is incompatible: "
        "5*(x^3 - 4) - (5*x^3 - 2) = " + gap.str(),
        "exactly one positive value of x remains"};
    a3.children.push_back(std::move(a4));
    a2.children.push_back(std::move(a3));
    a1.children.push_back(std::move(a2));

    // ---- branch B: k13 = k23 with k24^3 - 1 nonzero, then k14 = k24,
    // then m3 = k24^3 - 1, ending in a contradiction ----
    std::vector<Poly> b_nonzero = {k24_cube};
    ok = ok && cc.force_relation(cc.parse("k13^3 - k23^3"), {},
                                 cc.parse("k13 - k23"),
                                 "k13 = k23 on this branch", &root.notes);

    CaseNode b1;
    b1.hypothesis = "k13 = k23";
    b1.substitutions = {{"k13", "k23"}};
    b1.notes.push_back(
        "complementary branch: k24^3 - 1 is assumed nonzero here; the case "
        "k24^3 - 1 = 0 is the sibling branch k24 = 1");
    b1.basis =
        cc.saturated_gb(cc.substituted(root.basis, "k13", cc.parse("k23")));
    Poly tb1 = cc.parse("k24^3 - k14^3");
    b1.memberships.push_back(cc.membership(b1.hypothesis, b1.basis, tb1));
    ok = ok && b1.memberships.back().ok;
    ok = ok && cc.force_relation(tb1, b_nonzero, cc.parse("k24 - k14"),
                                 "k14 = k24", &b1.notes);
    b1.notes.push_back(cc.forced_scan(b1.basis, tb1));

    CaseNode b2;
    b2.hypothesis = "k14 = k24";
    b2.substitutions = {{"k14", "k24"}};
    b2.basis =
        cc.saturated_gb(cc.substituted(b1.basis, "k14", cc.parse("k24")));
    Poly tb2 = cc.parse(
        "(m1+m2)^2*(1+m1+m2+m3)*k24^3*(k24^3-1)^2*(m3-k24^3+1)");
    b2.memberships.push_back(cc.membership(b2.hypothesis, b2.basis, tb2));
    ok = ok && b2.memberships.back().ok;
    ok = ok && cc.force_relation(tb2, b_nonzero, cc.parse("m3 - k24^3 + 1"),
                                 "m3 = k24^3 - 1", &b2.notes);

    CaseNode b3;
    b3.hypothesis = "m3 = k24^3 - 1";
    b3.substitutions = {{"m3", k24_cube.str()}};
    b3.basis = cc.saturated_gb(cc.substituted(b2.basis, "m3", k24_cube));
    Poly tb3 = cc.parse("(m1+m2)*k23^3*(k24^3-1)");
    b3.memberships.push_back(cc.membership(b3.hypothesis, b3.basis, tb3));
    ok = ok && b3.memberships.back().ok;
    b3.is_leaf = true;
    std::vector<std::string> cdetails;
    cdetails.push_back(
        "m3 > 0 and m3 = k24^3 - 1 make k24^3 - 1 positive, yet the member "
        "polynomial forces it to vanish");
    bool closed = cc.close_contradiction(tb3, b_nonzero, &cdetails);
    for (std::size_t i = 0; i < b3.basis.size(); ++i)
        if (same_up_to_sign(b3.basis[i], k24_cube))
            cdetails.push_back("the case ideal itself contains " +
                               k24_cube.str() +
                               ", which this branch assumes nonzero");
    ok = ok && closed;
    b3.leaf["kind"] = "contradiction";
    b3.leaf["closed"] = closed;
    b3.leaf["details"] = cdetails;
    b2.children.push_back(std::move(b3));
    b1.children.push_back(std::move(b2));

    // ---- side leaf: the excluded pivot cases pin x immediately ----
    CaseNode side;
    side.hypothesis = "x = k13 or x = k23";
    side.is_leaf = true;
    Poly sw = parse_poly("(k13^3 - x^3)*(k23^3 - x^3)", hp.reg);
    WitnessClosure scl = close_by_witness(sw, "x");
    side.leaf["kind"] = "x_constrained";
    side.leaf["witness"] = sw.str();
    side.leaf["degree_in_x"] = scl.degree;
    side.leaf["leading_x_coefficient"] = scl.lead;
    side.leaf["closed"] = scl.closed;
    side.leaf["details"] = std::vector<std::string>{
        "if the varying reciprocal distance x equals k13 or k23 it already "
        "coincides with a constant, which the witness's roots record"};
    ok = ok && scl.closed;

    root.children.push_back(std::move(a1));
    root.children.push_back(std::move(b1));
    root.children.push_back(std::move(side));

    // ---- document data ----
    ordered_json f_polys = ordered_json::array();
    for (const Poly& f : el.f) f_polys.push_back(f.str());
    ordered_json coeffs = ordered_json::array();
    for (const auto& row : el.coeff) {
        ordered_json r = ordered_json::array();
        for (const Poly& c : row) r.push_back(c.map_to(cc.rp, kOrd).str());
        coeffs.push_back(r);
    }
    ordered_json subset = ordered_json::array();
    for (const Poly& s : S) subset.push_back(s.str());

    ordered_json problem_desc{
        {"bodies", 4},
        {"varying_pair", "r34"},
        {"fixed_pairs", {"r12", "r13", "r14", "r23", "r24"}},
        {"normalization", "r12 = k12 = 1, m4 = 1"},
        {"coordinates", "reciprocal distances k_ij = 1/r_ij, x = 1/r34"},
        {"unknowns", hp.unknowns}};

    return assemble(4, convention_name(conv), std::move(problem_desc), names,
                    systems_json(hp, sys), std::move(f_polys),
                    ordered_json(el.support), std::move(coeffs),
                    std::move(subset), std::move(root), ok, std::move(notes));
}

}  // namespace

Certificate certify(int n, OrderConvention conv) {
    if (n == 3) return certify3();
    if (n == 4) return certify4(conv);
    throw std::invalid_argument("certify: n must be 3 or 4");
}

bool replay_matches(const Certificate& cert) {
    OrderConvention conv = cert.order_convention == "k13-smallest"
                               ? OrderConvention::k13_smallest
                               : OrderConvention::k13_largest;
    Certificate again = certify(cert.problem, conv);
    return again.json_text == cert.json_text;
}

}  // namespace unhinge
