// Gram-matrix reduction of n-body motion: translation-invariant quadratic
// forms, their zero-diagonal normal forms, the standard coordinates
// (b, g, d, rho), the reduced differential equations, and the balanced
// configuration residual.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "unhinge/nbody.hpp"

namespace unhinge {

struct GramForms {
    Eigen::MatrixXd B;  // X^T X
    Eigen::MatrixXd G;  // symmetric part of X^T V
    Eigen::MatrixXd R;  // antisymmetric part of X^T V
    Eigen::MatrixXd D;  // V^T V
};

struct NormalForms {
    Eigen::MatrixXd Bhat, Ghat, Dhat;  // zero diagonal, -(1/2) coordinate
    Eigen::MatrixXd Rhat;              // zero last row and column
};

struct ReducedState {
    int n = 0;
    std::vector<double> b;    // squared distances, pair order, C(n,2)
    std::vector<double> g;    // radial momenta, C(n,2)
    std::vector<double> d;    // velocity forms, C(n,2)
    std::vector<double> rho;  // rotational coordinates, C(n-1,2)
};

GramForms gram_forms(const BodyState& s);

// Projects each form onto its unique equivalence-class representative:
// symmetric matrices to zero diagonal, the antisymmetric one to zero last
// row/column.  Idempotent, and preserves all e_ij / e_in brackets.
NormalForms normal_forms(const GramForms& gf);

ReducedState standard_coordinates(const BodyState& s);

// Interaction matrix as a function of the squared distances alone.
Eigen::MatrixXd a_from_b(const std::vector<double>& b,
                         const Eigen::VectorXd& masses);

// The reduced equations of motion for (b, g, d, rho).
ReducedState reduced_rhs(const ReducedState& rs, const Eigen::VectorXd& masses);

// Max |e_in^T (Bhat A - A^T Bhat) e_jn| over i < j < n; zero exactly when
// the configuration is balanced.
double balance_residual(const std::vector<double>& b,
                        const Eigen::VectorXd& masses);

// Largest |time derivative| over all reduced coordinates; a relative
// equilibrium makes this vanish.
double equilibrium_residual(const ReducedState& rs,
                            const Eigen::VectorXd& masses);

// Worst mismatch between a five-point finite-difference derivative of the
// standard coordinates along a uniformly sampled trajectory and the reduced
// equations of motion.  Requires at least five samples at spacing h.
double reduction_residual(const Trajectory& traj,
                          const Eigen::VectorXd& masses, double h);

}  // namespace unhinge
