#include "unhinge/nbody.hpp"

#include <cmath>
#include <stdexcept>

namespace unhinge {

void BodyState::validate() const {
    if (n < 2) throw std::invalid_argument("BodyState: need at least 2 bodies");
    if (d < 1 || d > 4)
        throw std::invalid_argument("BodyState: dimension must be 1..4");
    if (X.rows() != d || X.cols() != n || V.rows() != d || V.cols() != n)
        throw std::invalid_argument("BodyState: matrix shapes disagree with n, d");
    if (masses.size() != n)
        throw std::invalid_argument("BodyState: mass count disagrees with n");
    for (int i = 0; i < n; ++i)
        if (!(masses[i] > 0.0))
            throw std::invalid_argument("BodyState: masses must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!((X.col(i) - X.col(j)).norm() > 0.0))
                throw std::domain_error("BodyState: coincident bodies");
}

std::vector<std::pair<int, int>> index_pairs(int n) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
    return p;
}

int pair_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    // Pairs (0,1)..(0,n-1) come first, then (1,2).. and so on.
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double distance(const BodyState& s, int i, int j) {
    return (s.X.col(i) - s.X.col(j)).norm();
}

std::vector<double> distances(const BodyState& s) {
    std::vector<double> r;
    for (auto [i, j] : index_pairs(s.n)) r.push_back(distance(s, i, j));
    return r;
}

Eigen::MatrixXd interaction_matrix(const std::vector<double>& r,
                                   const Eigen::VectorXd& masses) {
    int n = static_cast<int>(masses.size());
    if (static_cast<int>(r.size()) != n * (n - 1) / 2)
        throw std::invalid_argument("interaction_matrix: distance count");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : index_pairs(n)) {
        double rij = r[static_cast<std::size_t>(pair_index(i, j, n))];
        if (!(rij > 0.0))
            throw std::domain_error("interaction_matrix: nonpositive distance");
        double inv3 = 1.0 / (rij * rij * rij);
        a(i, j) = masses[i] * inv3;
        a(j, i) = masses[j] * inv3;
    }
    for (int j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (int i = 0; i < n; ++i)
            if (i != j) colsum += a(i, j);
        a(j, j) = -colsum;
    }
    return a;
}

Deriv newton_rhs(const BodyState& s) {
    Eigen::MatrixXd a = interaction_matrix(distances(s), s.masses);
    return Deriv{s.V, s.X * a};
}

FirstIntegrals first_integrals(const BodyState& s) {
    FirstIntegrals fi;
    double kinetic = 0.0;
    fi.momentum = Eigen::VectorXd::Zero(s.d);
    for (int i = 0; i < s.n; ++i) {
        kinetic += 0.5 * s.masses[i] * s.V.col(i).squaredNorm();
        fi.momentum += s.masses[i] * s.V.col(i);
    }
    double potential = 0.0;
    for (auto [i, j] : index_pairs(s.n))
        potential -= s.masses[i] * s.masses[j] / distance(s, i, j);
    fi.energy = kinetic + potential;
    Eigen::MatrixXd xmv = s.X * s.masses.asDiagonal() * s.V.transpose();
    fi.angular = 0.5 * (xmv - xmv.transpose());
    return fi;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 5179.0 / 57600, kE3 = 7571.0 / 16695, kE4 = 393.0 / 640,
                 kE5 = -92097.0 / 339200, kE6 = 187.0 / 2100, kE7 = 1.0 / 40;

using Vec = Eigen::VectorXd;

Vec pack(const BodyState& s) {
    Vec y(2 * s.d * s.n);
    for (int i = 0; i < s.n; ++i) {
        y.segment(i * s.d, s.d) = s.X.col(i);
        y.segment((s.n + i) * s.d, s.d) = s.V.col(i);
    }
    return y;
}

void unpack(const Vec& y, BodyState& s) {
    for (int i = 0; i < s.n; ++i) {
        s.X.col(i) = y.segment(i * s.d, s.d);
        s.V.col(i) = y.segment((s.n + i) * s.d, s.d);
    }
}

}  // namespace

Trajectory integrate(const BodyState& s0, double t_end, double tol,
                     double sample_dt) {
    s0.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
    if (!(t_end > 0.0))
        throw std::invalid_argument("integrate: t_end must be > 0");

    BodyState work = s0;
    auto rhs = [&](const Vec& y) {
        unpack(y, work);
        Deriv dv = newton_rhs(work);
        Vec f(y.size());
        for (int i = 0; i < work.n; ++i) {
            f.segment(i * work.d, work.d) = dv.Xdot.col(i);
            f.segment((work.n + i) * work.d, work.d) = dv.Vdot.col(i);
        }
        return f;
    };

    Trajectory traj;
    Vec y = pack(s0);
    double t = 0.0;
    traj.samples.push_back({0.0, s0, 0.0});
    double next_sample = sample_dt > 0.0 ? sample_dt : 0.0;

    double h = 1e-3;
    const double h_min = 1e-13;
    Vec k1 = rhs(y);

    while (t < t_end - 1e-14) {
        double limit = t_end;
        if (sample_dt > 0.0 && next_sample < limit) limit = next_sample;
        bool capped = t + h >= limit;
        double h_try = capped ? limit - t : h;

        Vec k2 = rhs(y + h_try * (kA21 * k1));
        Vec k3 = rhs(y + h_try * (kA31 * k1 + kA32 * k2));
        Vec k4 = rhs(y + h_try * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        Vec k5 =
            rhs(y + h_try * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        Vec k6 = rhs(y + h_try * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                  kA64 * k4 + kA65 * k5));
        Vec y5 =
            y + h_try * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        Vec k7 = rhs(y5);
        Vec y4 = y + h_try * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                              kE6 * k6 + kE7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            double scale = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            double e = (y5[i] - y4[i]) / scale;
            err += e * e;
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        bool accepted = err <= 1.0 && std::isfinite(err);
        if (accepted) {
            t += h_try;
            y = y5;
            k1 = k7;  // first-same-as-last
            bool hit_sample =
                sample_dt > 0.0 && std::abs(t - next_sample) < 1e-10;
            if (sample_dt <= 0.0 || hit_sample || t >= t_end - 1e-14) {
                BodyState snap = s0;
                unpack(y, snap);
                traj.samples.push_back({t, snap, (y5 - y4).norm()});
            }
            if (hit_sample) next_sample += sample_dt;
        }

        double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        double h_next = h_try * std::clamp(grow, 0.2, 5.0);
        if (!std::isfinite(err)) h_next = h_try * 0.1;
        // A step shortened only to land on the grid must not shrink the
        // adaptive step for the next round.
        h = (capped && accepted) ? std::max(h, h_next) : h_next;

        if (h < h_min) {
            traj.aborted = true;
            traj.abort_reason = "near-collision: step size underflow at t = " +
                                std::to_string(t);
            break;
        }
    }
    return traj;
}

}  // namespace unhinge
