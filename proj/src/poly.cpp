#include "unhinge/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace unhinge {

Poly Poly::constant(RegistryPtr reg, MonOrder order, const Rational& c) {
    Poly p(std::move(reg), order);
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
    return p;
}

Poly Poly::variable(RegistryPtr reg, MonOrder order, const std::string& name, unsigned e) {
    int idx = reg->index_of(name);
    if (idx < 0) throw std::invalid_argument("Poly: unknown variable '" + name + "'");
    Poly p(std::move(reg), order);
    if (e == 0) return constant(p.reg_, order, Rational(1));
    Monomial m;
    m.set(idx, static_cast<std::uint16_t>(e));
    p.terms_.push_back({m, Rational(1)});
    return p;
}

Poly Poly::from_terms(RegistryPtr reg, MonOrder order, std::vector<Term> terms) {
    Poly p(std::move(reg), order);
    p.terms_ = std::move(terms);
    std::sort(p.terms_.begin(), p.terms_.end(), [&p](const Term& a, const Term& b) {
        return compare(a.m, b.m, p.nvars(), p.order_) > 0;
    });
    p.normalize_sorted();
    return p;
}

void Poly::normalize_sorted() {
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        Monomial m = terms_[i].m;
        Rational c = terms_[i].c;
        std::size_t j = i + 1;
        while (j < terms_.size() && terms_[j].m == m) {
            c += terms_[j].c;
            ++j;
        }
        if (!c.is_zero()) terms_[out++] = {m, c};
        i = j;
    }
    terms_.resize(out);
}

const Term& Poly::leading_term() const {
    if (terms_.empty()) throw std::domain_error("Poly: leading term of zero");
    return terms_.front();
}

int Poly::total_degree() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.m.total));
    return d;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.m[var]));
    return d;
}

void Poly::check_compatible(const Poly& o) const {
    if (order_ != o.order_ || !reg_ || !o.reg_ || !reg_->same_as(*o.reg_))
        throw std::invalid_argument("Poly: registry or order mismatch");
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (Term& t : r.terms_) t.c = -t.c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    *this = *this + o;
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    *this = *this - o;
    return *this;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
    a.check_compatible(b);
    std::vector<Term> out;
    out.reserve(a.terms().size() + b.terms().size());
    std::size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    const int n = a.nvars();
    while (i < ta.size() || j < tb.size()) {
        int cmp;
        if (i >= ta.size())
            cmp = -1;
        else if (j >= tb.size())
            cmp = 1;
        else
            cmp = compare(ta[i].m, tb[j].m, n, a.order());
        if (cmp > 0) {
            out.push_back(ta[i++]);
        } else if (cmp < 0) {
            Term t = tb[j++];
            if (subtract) t.c = -t.c;
            out.push_back(t);
        } else {
            Rational c = subtract ? ta[i].c - tb[j].c : ta[i].c + tb[j].c;
            if (!c.is_zero()) out.push_back({ta[i].m, c});
            ++i;
            ++j;
        }
    }
    return Poly::from_terms(a.registry(), a.order(), std::move(out));
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.registry(), a.order());
    PolyBuilder acc(a.registry(), a.order());
    acc.add_product(a, b);
    return acc.build();
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.order() != b.order()) return false;
    if (!a.reg_ || !b.reg_) return a.terms_.empty() && b.terms_.empty();
    if (!a.reg_->same_as(*b.reg_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return zero(reg_, order_);
    Poly r(*this);
    for (Term& t : r.terms_) t.c *= c;
    return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
    if (c.is_zero()) return zero(reg_, order_);
    Poly r(reg_, order_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;  // multiplying by a fixed monomial preserves the ordering
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(reg_, order_, Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

Poly Poly::substitute(const std::map<int, Poly>& bindings) const {
    for (const auto& [var, val] : bindings) {
        if (var < 0 || var >= nvars()) throw std::invalid_argument("substitute: bad variable index");
        check_compatible(val);
    }
    PolyBuilder acc(reg_, order_);
    // power cache per bound variable
    std::map<int, std::vector<Poly>> powers;
    for (const Term& t : terms_) {
        Poly factor = constant(reg_, order_, t.c);
        Monomial rest;
        for (int v = 0; v < nvars(); ++v) {
            std::uint16_t e = t.m[v];
            if (e == 0) continue;
            auto it = bindings.find(v);
            if (it == bindings.end()) {
                rest.set(v, e);
                continue;
            }
            auto& cache = powers[v];
            if (cache.empty()) cache.push_back(constant(reg_, order_, Rational(1)));
            while (cache.size() <= e) cache.push_back(cache.back() * it->second);
            factor = factor * cache[e];
        }
        acc.add_scaled(factor.times_monomial(rest, Rational(1)), Rational(1));
    }
    return acc.build();
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    check_compatible(d);
    if (d.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    Poly r = *this;
    std::vector<Term> q;
    const Monomial& dm = d.leading_monomial();
    const Rational& dc = d.leading_coeff();
    while (!r.is_zero()) {
        const Term& lt = r.leading_term();
        if (!dm.divides(lt.m)) return std::nullopt;
        Monomial qm = quotient(lt.m, dm);
        Rational qc = lt.c / dc;
        q.push_back({qm, qc});
        r = r - d.times_monomial(qm, qc);
    }
    return from_terms(reg_, order_, std::move(q));
}

Rational Poly::content() const {
    if (terms_.empty()) return Rational(0);
    Rational g(0);
    for (const Term& t : terms_) g = gcd(g, t.c);
    if (leading_coeff().sign() < 0) g = -g;
    return g;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    return scaled(content().inverse());
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(leading_coeff().inverse());
}

Poly Poly::coefficient_of(int var, int e) const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (t.m[var] == e) {
            Monomial m = t.m;
            m.set(var, 0);
            out.push_back({m, t.c});
        }
    }
    return from_terms(reg_, order_, std::move(out));
}

std::vector<int> Poly::support_in(int var) const {
    std::vector<int> s;
    for (const Term& t : terms_) s.push_back(t.m[var]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Poly Poly::map_to(const RegistryPtr& reg, MonOrder order) const {
    std::vector<int> to(static_cast<std::size_t>(nvars()), -1);
    for (int v = 0; v < nvars(); ++v) to[v] = reg->index_of(reg_->name(v));
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        Monomial m;
        for (int v = 0; v < nvars(); ++v) {
            std::uint16_t e = t.m[v];
            if (e == 0) continue;
            if (to[v] < 0)
                throw std::invalid_argument("map_to: variable '" + reg_->name(v) +
                                            "' missing from target registry");
            m.set(to[v], e);
        }
        out.push_back({m, t.c});
    }
    return from_terms(reg, order, std::move(out));
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars())
        throw std::invalid_argument("evaluate: wrong point dimension");
    Rational acc(0);
    for (const Term& t : terms_) {
        Rational v = t.c;
        for (int i = 0; i < nvars(); ++i)
            if (t.m[i]) v *= point[i].pow(t.m[i]);
        acc += v;
    }
    return acc;
}

double Poly::evaluate_double(const std::vector<double>& point) const {
    double acc = 0;
    for (const Term& t : terms_) {
        double v = t.c.to_double();
        for (int i = 0; i < nvars(); ++i)
            if (t.m[i]) v *= std::pow(point[i], t.m[i]);
        acc += v;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        Rational c = t.c;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool wrote_coeff = false;
        if (t.m.is_constant() || !c.is_one()) {
            os << c.str();
            wrote_coeff = true;
        }
        for (int v = 0; v < nvars(); ++v) {
            if (t.m[v] == 0) continue;
            if (wrote_coeff) os << "*";
            os << reg_->name(v);
            if (t.m[v] > 1) os << "^" << t.m[v];
            wrote_coeff = true;
        }
    }
    return os.str();
}

void PolyBuilder::add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) acc_.erase(it);
    }
}

void PolyBuilder::add_product(const Poly& a, const Poly& b) {
    const Poly& small = a.term_count() <= b.term_count() ? a : b;
    const Poly& large = a.term_count() <= b.term_count() ? b : a;
    for (const Term& ts : small.terms())
        for (const Term& tl : large.terms()) add(ts.m * tl.m, ts.c * tl.c);
}

void PolyBuilder::add_scaled(const Poly& p, const Rational& c) {
    if (c.is_zero()) return;
    for (const Term& t : p.terms()) add(t.m, t.c * c);
}

Poly PolyBuilder::build() {
    std::vector<Term> out;
    out.reserve(acc_.size());
    for (auto& [m, c] : acc_) out.push_back({m, c});
    acc_.clear();
    return Poly::from_terms(reg_, order_, std::move(out));
}

Poly poly_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("poly_det: not square");
    if (n == 1) return m[0][0];
    Poly acc = Poly::zero(m[0][0].registry(), m[0][0].order());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Poly cof = m[0][j] * poly_det(minor);
        acc = (j % 2 == 0) ? acc + cof : acc - cof;
    }
    return acc;
}

}  // namespace unhinge
