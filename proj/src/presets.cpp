#include "unhinge/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace unhinge {
namespace {

BodyState lagrange_equilateral() {
    BodyState s;
    s.n = 3;
    s.d = 2;
    s.masses = Eigen::Vector3d(1.0, 2.0, 3.0);
    s.X.resize(2, 3);
    s.X.col(0) << 0.0, 0.0;
    s.X.col(1) << 1.0, 0.0;
    s.X.col(2) << 0.5, std::sqrt(3.0) / 2.0;
    Eigen::Vector2d com = Eigen::Vector2d::Zero();
    for (int i = 0; i < 3; ++i) com += s.masses[i] * s.X.col(i);
    com /= s.masses.sum();
    for (int i = 0; i < 3; ++i) s.X.col(i) -= com;
    // Any equilateral triangle rotates rigidly at omega^2 = M / r^3.
    double omega = std::sqrt(s.masses.sum());
    s.V.resize(2, 3);
    for (int i = 0; i < 3; ++i) {
        s.V.col(i) << -omega * s.X(1, i), omega * s.X(0, i);
    }
    return s;
}

BodyState isosceles_balanced() {
    // Equal masses 1 and 2 at the base corners, mass 2 at the apex: the
    // reflection symmetry makes any such isosceles triangle balanced even
    // though it is not a central configuration.  Stored at rest; only the
    // configuration matters for balance.
    BodyState s;
    s.n = 3;
    s.d = 2;
    s.masses = Eigen::Vector3d(1.0, 1.0, 2.0);
    double half_base = 0.5;
    double height = 1.1;
    s.X.resize(2, 3);
    s.X.col(0) << -half_base, 0.0;
    s.X.col(1) << half_base, 0.0;
    s.X.col(2) << 0.0, height;
    Eigen::Vector2d com = Eigen::Vector2d::Zero();
    for (int i = 0; i < 3; ++i) com += s.masses[i] * s.X.col(i);
    com /= s.masses.sum();
    for (int i = 0; i < 3; ++i) s.X.col(i) -= com;
    s.V = Eigen::MatrixXd::Zero(2, 3);
    return s;
}

BodyState kepler_pair() {
    BodyState s;
    s.n = 2;
    s.d = 2;
    s.masses = Eigen::Vector2d(1.0, 1.0);
    s.X.resize(2, 2);
    s.X.col(0) << -0.5, 0.0;
    s.X.col(1) << 0.5, 0.0;
    double omega = std::sqrt(2.0);  // omega^2 = (m1 + m2) / r^3
    s.V.resize(2, 2);
    s.V.col(0) << 0.0, -0.5 * omega;
    s.V.col(1) << 0.0, 0.5 * omega;
    return s;
}

BodyState random_seeded(int n, int d, unsigned seed) {
    if (n == 0) n = 3;
    if (d == 0) d = 3;
    if (d < 2) throw std::invalid_argument("random-seeded needs d >= 2");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(-1.2, 1.2);
    std::uniform_real_distribution<double> vel(-0.15, 0.15);
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    BodyState s;
    s.n = n;
    s.d = d;
    s.masses.resize(n);
    for (int i = 0; i < n; ++i) s.masses[i] = mass(rng);
    s.X.resize(d, n);
    s.V.resize(d, n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) s.X(k, i) = pos(rng);
        double rmin = 1e9;
        for (auto [i, j] : index_pairs(n))
            rmin = std::min(rmin, (s.X.col(i) - s.X.col(j)).norm());
        if (rmin > 0.8) break;  // keep clear of early close encounters
    }
    double mtot = s.masses.sum();
    Eigen::VectorXd com = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) com += s.masses[i] * s.X.col(i);
    com /= mtot;
    for (int i = 0; i < n; ++i) s.X.col(i) -= com;
    // Near-virial spin about the z axis so the cluster orbits instead of
    // free-falling; small thermal noise on top, net momentum removed.
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) r2 += s.masses[i] * s.X.col(i).squaredNorm();
    double rg = std::sqrt(r2 / mtot);
    double omega = std::sqrt(mtot / (rg * rg * rg));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) s.V(k, i) = vel(rng);
        s.V(0, i) += -omega * s.X(1, i);
        s.V(1, i) += omega * s.X(0, i);
    }
    Eigen::VectorXd drift = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) drift += s.masses[i] * s.V.col(i);
    drift /= mtot;
    for (int i = 0; i < n; ++i) s.V.col(i) -= drift;
    return s;
}

}  // namespace

BodyState make_preset(const std::string& name, int n, int d, unsigned seed) {
    BodyState s;
    if (name == "lagrange-equilateral") {
        s = lagrange_equilateral();
    } else if (name == "isosceles-balanced") {
        s = isosceles_balanced();
    } else if (name == "kepler-pair") {
        s = kepler_pair();
    } else if (name == "random-seeded") {
        s = random_seeded(n, d, seed);
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    if ((n != 0 && n != s.n) || (d != 0 && d != s.d))
        throw std::invalid_argument("preset '" + name +
                                    "' does not support the requested n/d");
    s.validate();
    return s;
}

double preset_angular_rate(const std::string& name) {
    if (name == "lagrange-equilateral") return std::sqrt(6.0);
    if (name == "kepler-pair") return std::sqrt(2.0);
    throw std::invalid_argument("preset '" + name + "' is not a rigid motion");
}

}  // namespace unhinge
