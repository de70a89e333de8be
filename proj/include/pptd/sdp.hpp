#pragma once

// Numeric solver for the PPT state-discrimination program
//
//   maximize   sum_j p_j <P_j, rho_j>
//   subject to P_1 + ... + P_k = 1,  P_j >= 0,  T_A(P_j) >= 0
//
// by Douglas-Rachford operator splitting over blocks (P_j, R_j) with the
// coupling R_j = T_A(P_j). One iteration alternates a closed-form projection
// onto the affine subspace {sum P_j = 1, R_j = T_A(P_j)} (shifted by an
// objective ascent step) with eigendecomposition-and-clip projections onto
// the PSD cones, mixed with over-relaxation alpha.
//
// The reported value is the objective of the last affine-projected iterate,
// so completeness holds to machine precision and the value is achievable up
// to the reported cone residual.

#include <string>
#include <vector>

#include "pptd/operator.hpp"
#include "pptd/states.hpp"

namespace pptd {

struct DiscriminationInstance {
    std::vector<Operator> states;  // density operators, shared factorization
    std::vector<Rat> priors;       // strictly positive, sums to 1

    static DiscriminationInstance from_state_set(const StateSet& set);
    int k() const { return static_cast<int>(states.size()); }
};

struct Measurement {
    std::vector<Operator> operators;  // float mode
};

struct SolverConfig {
    double eps_primal = 1e-8;  // completeness residual ||sum P - 1||
    double eps_dual = 1e-8;    // cone residual, -min eigenvalue over blocks
    double eps_gap = 1e-8;     // fixed-point / successive-value residual
    long max_iter = 50000;
    double alpha = 1.5;        // over-relaxation, in (0, 2)
    int dim_cap = 16;          // largest admissible local dimension
    double step = 0.0;         // objective ascent step; 0 selects a scale-based default

    // Robustness experiments only: when perturb > 0 the start point receives
    // seeded symmetric noise of that magnitude. Default runs stay exactly
    // deterministic.
    double perturb = 0.0;
    unsigned seed = 0;
};

enum class SolveStatus { Converged, MaxIter, InfeasibleInput };

const char* to_string(SolveStatus s);

struct Residuals {
    double completeness = 0.0;  // ||sum P_j - 1||, spectral
    double cone = 0.0;          // max(0, -min eig) over P_j and T_A(P_j)
    double gap = 0.0;           // fixed-point distance + value drift
};

struct SolverResult {
    double value = 0.0;
    Measurement measurement;
    long iterations = 0;
    Residuals residuals;
    SolveStatus status = SolveStatus::MaxIter;
    std::string message;
};

// Deterministic: a fixed feasible start (P_j = 1/k) and a fixed iteration
// order make two runs with identical inputs bit-identical.
SolverResult solve(const DiscriminationInstance& instance, const SolverConfig& config = {});

// sum_j p_j <P_j, rho_j> without any feasibility checking.
double evaluate_primal(const Measurement& m, const DiscriminationInstance& instance);

struct FeasibilityReport {
    double completeness = 0.0;  // ||sum P_j - 1||, spectral
    double psd_margin = 0.0;    // min_j lambda_min(P_j)
    double ppt_margin = 0.0;    // min_j lambda_min(T_A(P_j))
    bool within(double tol) const {
        return completeness <= tol && psd_margin >= -tol && ppt_margin >= -tol;
    }
};

FeasibilityReport check_feasibility(const Measurement& m);

}  // namespace pptd
