#include "unhinge/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace unhinge {
namespace {

// e_ij^T M e_ij with e_ij the difference of coordinate vectors i and j.
double bracket(const Eigen::MatrixXd& m, int i, int j) {
    return m(i, i) - m(i, j) - m(j, i) + m(j, j);
}

// e_in^T M e_jn, the mixed bracket against the last index.
double mixed_bracket(const Eigen::MatrixXd& m, int i, int j, int n) {
    int last = n - 1;
    return m(i, j) - m(i, last) - m(last, j) + m(last, last);
}

void check_b(const std::vector<double>& b) {
    for (double v : b)
        if (!(v > 0.0))
            throw std::domain_error("reduction: nonpositive squared distance");
}

}  // namespace

GramForms gram_forms(const BodyState& s) {
    GramForms gf;
    gf.B = s.X.transpose() * s.X;
    Eigen::MatrixXd c = s.X.transpose() * s.V;
    gf.G = 0.5 * (c + c.transpose());
    gf.R = 0.5 * (c - c.transpose());
    gf.D = s.V.transpose() * s.V;
    return gf;
}

NormalForms normal_forms(const GramForms& gf) {
    int n = static_cast<int>(gf.B.rows());
    NormalForms nf;
    auto hat = [&](const Eigen::MatrixXd& m) {
        // Subtracting (1/2) m_ii from row i and column i zeroes the diagonal
        // without changing any e_ij bracket.
        Eigen::MatrixXd h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h(i, j) = m(i, j) - 0.5 * m(i, i) - 0.5 * m(j, j);
        return h;
    };
    nf.Bhat = hat(gf.B);
    nf.Ghat = hat(gf.G);
    nf.Dhat = hat(gf.D);
    nf.Rhat = Eigen::MatrixXd::Zero(n, n);
    int last = n - 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == last || j == last) continue;
            nf.Rhat(i, j) = gf.R(i, j) - gf.R(i, last) - gf.R(last, j);
        }
    }
    return nf;
}

ReducedState standard_coordinates(const BodyState& s) {
    GramForms gf = gram_forms(s);
    ReducedState rs;
    rs.n = s.n;
    for (auto [i, j] : index_pairs(s.n)) {
        rs.b.push_back(bracket(gf.B, i, j));
        rs.g.push_back(bracket(gf.G, i, j));
        rs.d.push_back(bracket(gf.D, i, j));
    }
    for (auto [i, j] : index_pairs(s.n - 1))
        rs.rho.push_back(mixed_bracket(gf.R, i, j, s.n));
    return rs;
}

Eigen::MatrixXd a_from_b(const std::vector<double>& b,
                         const Eigen::VectorXd& masses) {
    check_b(b);
    std::vector<double> r;
    r.reserve(b.size());
    for (double v : b) r.push_back(std::sqrt(v));
    return interaction_matrix(r, masses);
}

namespace {

// Rebuilds the normal-form matrices directly from reduced coordinates.
NormalForms hats_from_reduced(const ReducedState& rs) {
    int n = rs.n;
    NormalForms nf;
    nf.Bhat = Eigen::MatrixXd::Zero(n, n);
    nf.Ghat = Eigen::MatrixXd::Zero(n, n);
    nf.Dhat = Eigen::MatrixXd::Zero(n, n);
    nf.Rhat = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : index_pairs(n)) {
        int p = pair_index(i, j, n);
        nf.Bhat(i, j) = nf.Bhat(j, i) = -0.5 * rs.b[static_cast<std::size_t>(p)];
        nf.Ghat(i, j) = nf.Ghat(j, i) = -0.5 * rs.g[static_cast<std::size_t>(p)];
        nf.Dhat(i, j) = nf.Dhat(j, i) = -0.5 * rs.d[static_cast<std::size_t>(p)];
    }
    for (auto [i, j] : index_pairs(n - 1)) {
        int p = pair_index(i, j, n - 1);
        nf.Rhat(i, j) = rs.rho[static_cast<std::size_t>(p)];
        nf.Rhat(j, i) = -rs.rho[static_cast<std::size_t>(p)];
    }
    return nf;
}

}  // namespace

ReducedState reduced_rhs(const ReducedState& rs, const Eigen::VectorXd& masses) {
    check_b(rs.b);
    int n = rs.n;
    NormalForms nf = hats_from_reduced(rs);
    Eigen::MatrixXd a = a_from_b(rs.b, masses);

    Eigen::MatrixXd ba = nf.Bhat * a + a.transpose() * nf.Bhat;
    Eigen::MatrixXd ga = nf.Ghat * a + a.transpose() * nf.Ghat;
    Eigen::MatrixXd ra = a.transpose() * nf.Rhat - nf.Rhat * a;
    Eigen::MatrixXd rot = nf.Bhat * a - a.transpose() * nf.Bhat;

    ReducedState out;
    out.n = n;
    for (auto [i, j] : index_pairs(n)) {
        int p = pair_index(i, j, n);
        out.b.push_back(2.0 * rs.g[static_cast<std::size_t>(p)]);
        out.g.push_back(rs.d[static_cast<std::size_t>(p)] +
                        0.5 * bracket(ba, i, j));
        out.d.push_back(bracket(ga, i, j) + bracket(ra, i, j));
    }
    for (auto [i, j] : index_pairs(n - 1))
        out.rho.push_back(0.5 * mixed_bracket(rot, i, j, n));
    return out;
}

double balance_residual(const std::vector<double>& b,
                        const Eigen::VectorXd& masses) {
    check_b(b);
    int n = static_cast<int>(masses.size());
    Eigen::MatrixXd bhat = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : index_pairs(n)) {
        int p = pair_index(i, j, n);
        bhat(i, j) = bhat(j, i) = -0.5 * b[static_cast<std::size_t>(p)];
    }
    Eigen::MatrixXd a = a_from_b(b, masses);
    Eigen::MatrixXd m = bhat * a - a.transpose() * bhat;
    double worst = 0.0;
    for (auto [i, j] : index_pairs(n - 1))
        worst = std::max(worst, std::abs(mixed_bracket(m, i, j, n)));
    return worst;
}

double equilibrium_residual(const ReducedState& rs,
                            const Eigen::VectorXd& masses) {
    ReducedState dot = reduced_rhs(rs, masses);
    double worst = 0.0;
    for (double v : dot.b) worst = std::max(worst, std::abs(v));
    for (double v : dot.g) worst = std::max(worst, std::abs(v));
    for (double v : dot.d) worst = std::max(worst, std::abs(v));
    for (double v : dot.rho) worst = std::max(worst, std::abs(v));
    return worst;
}

double reduction_residual(const Trajectory& traj,
                          const Eigen::VectorXd& masses, double h) {
    if (traj.samples.size() < 5)
        throw std::invalid_argument(
            "reduction_residual: need at least five samples");
    std::vector<ReducedState> coords;
    coords.reserve(traj.samples.size());
    for (const auto& sample : traj.samples)
        coords.push_back(standard_coordinates(sample.state));
    auto stencil = [&](auto pick, std::size_t k, std::size_t idx) {
        return (-pick(coords[k + 2], idx) + 8.0 * pick(coords[k + 1], idx) -
                8.0 * pick(coords[k - 1], idx) + pick(coords[k - 2], idx)) /
               (12.0 * h);
    };
    auto getb = [](const ReducedState& r, std::size_t i) { return r.b[i]; };
    auto getg = [](const ReducedState& r, std::size_t i) { return r.g[i]; };
    auto getd = [](const ReducedState& r, std::size_t i) { return r.d[i]; };
    auto getr = [](const ReducedState& r, std::size_t i) { return r.rho[i]; };
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < coords.size(); ++k) {
        ReducedState rhs = reduced_rhs(coords[k], masses);
        for (std::size_t p = 0; p < rhs.b.size(); ++p) {
            worst = std::max(worst, std::abs(stencil(getb, k, p) - rhs.b[p]));
            worst = std::max(worst, std::abs(stencil(getg, k, p) - rhs.g[p]));
            worst = std::max(worst, std::abs(stencil(getd, k, p) - rhs.d[p]));
        }
        for (std::size_t p = 0; p < rhs.rho.size(); ++p)
            worst = std::max(worst, std::abs(stencil(getr, k, p) - rhs.rho[p]));
    }
    return worst;
}

}  // namespace unhinge
