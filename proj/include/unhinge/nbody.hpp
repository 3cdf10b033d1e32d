// Full Newtonian n-body dynamics in R^d (G = 1): the interaction matrix,
// first integrals, and an adaptive embedded Runge-Kutta integrator used as
// the numerical ground truth.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace unhinge {

struct BodyState {
    int n = 0;  // bodies
    int d = 0;  // ambient dimension
    Eigen::MatrixXd X;       // d x n positions, one column per body
    Eigen::MatrixXd V;       // d x n velocities
    Eigen::VectorXd masses;  // n strictly positive masses

    void validate() const;  // throws std::invalid_argument / domain_error
};

// Ordered list of index pairs (i, j), i < j, lexicographic.
std::vector<std::pair<int, int>> index_pairs(int n);
int pair_index(int i, int j, int n);

double distance(const BodyState& s, int i, int j);
// Mutual distances in index_pairs order.
std::vector<double> distances(const BodyState& s);

// A_ij = m_i / r_ij^3 off the diagonal, A_jj = -sum_{i != j} m_i / r_ij^3;
// every column sums to zero.  `r` holds the mutual distances in
// index_pairs order.
Eigen::MatrixXd interaction_matrix(const std::vector<double>& r,
                                   const Eigen::VectorXd& masses);

struct Deriv {
    Eigen::MatrixXd Xdot, Vdot;
};

// Xdot = V, Vdot = X A(X).
Deriv newton_rhs(const BodyState& s);

struct FirstIntegrals {
    double energy = 0.0;             // kinetic + potential, G = 1
    Eigen::VectorXd momentum;        // total linear momentum
    Eigen::MatrixXd angular;         // antisymmetric part of X diag(m) V^T
};

FirstIntegrals first_integrals(const BodyState& s);

struct TrajectorySample {
    double t = 0.0;
    BodyState state;
    double error_estimate = 0.0;  // local error of the step ending here
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool aborted = false;       // near-collision step-size underflow
    std::string abort_reason;
};

// Adaptive Dormand-Prince 5(4) with per-step local error <= tol.  When
// sample_dt > 0 the integrator lands exactly on the uniform sample grid;
// otherwise every accepted step is recorded.  Near-collision step-size
// underflow aborts, keeping the last good state.
Trajectory integrate(const BodyState& s0, double t_end, double tol,
                     double sample_dt = 0.0);

}  // namespace unhinge
