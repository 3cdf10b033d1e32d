// registry.hpp -- ordered variable registries and monomials.
//
// A VarRegistry fixes the variable set and their significance order once; every
// Poly built on it shares the same exponent layout. Position 0 is the most
// significant (largest) variable for both lex and degrevlex comparisons.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace unhinge {

inline constexpr int kMaxVars = 16;

class VarRegistry {
public:
    explicit VarRegistry(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars)
            throw std::invalid_argument("VarRegistry: too many variables");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("VarRegistry: duplicate variable '" + names_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // -1 when the name is not registered.
    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool same_as(const VarRegistry& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

inline RegistryPtr make_registry(std::vector<std::string> names) {
    return std::make_shared<VarRegistry>(std::move(names));
}

enum class MonOrder : std::uint8_t { degrevlex, lex };

inline const char* to_string(MonOrder o) {
    return o == MonOrder::degrevlex ? "degrevlex" : "lex";
}

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t total = 0;

    bool is_constant() const { return total == 0; }

    std::uint16_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

    void set(int i, std::uint16_t v) {
        total += v;
        total -= e[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(i)] = v;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.total == b.total && a.e == b.e;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        r.total = a.total + b.total;
        return r;
    }

    // true when this divides m
    bool divides(const Monomial& m) const {
        if (total > m.total) return false;
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }

    // requires divides(m) == false is a caller bug
    friend Monomial quotient(const Monomial& m, const Monomial& d) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[i] = static_cast<std::uint16_t>(m.e[i] - d.e[i]);
        r.total = m.total - d.total;
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::uint32_t t = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(a.e[i], b.e[i]);
            t += r.e[i];
        }
        r.total = t;
        return r;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= e[i];
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Strict total order. Returns <0, 0, >0 like a three-way comparison with
// positive meaning a > b in the monomial order.
inline int compare(const Monomial& a, const Monomial& b, int nvars, MonOrder order) {
    if (order == MonOrder::lex) {
        for (int i = 0; i < nvars; ++i) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        }
        return 0;
    }
    // degrevlex: total degree first; ties broken by the least significant
    // variable with a differing exponent, smaller exponent winning.
    if (a.total != b.total) return a.total > b.total ? 1 : -1;
    for (int i = nvars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

}  // namespace unhinge
