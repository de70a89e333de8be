#pragma once

// Closed-form dual-feasible solutions for the PPT-discrimination program on
// the constructed ensembles, and an exact-arithmetic feasibility verifier.
//
// A certificate (Y, Q_1..Q_k) is feasible when every Q_j is PSD and every
// slack Y - rho_j - T_A(Q_j) is PSD; by weak duality the value Tr(Y)/k then
// upper-bounds the success probability of any PPT measurement on the
// ensemble. Verification is exact-only: all certificate entries are dyadic
// rationals, so there is nothing a tolerance could add.

#include <string>
#include <vector>

#include "pptd/operator.hpp"
#include "pptd/states.hpp"

namespace pptd {

struct DualCertificate {
    Operator Y;
    std::vector<Operator> Q;
    int t = 0;
    int k = 0;
};

struct VerificationReport {
    struct Failure {
        int j;                      // 0-based constraint index; -1 for structural failures
        std::string constraint;     // "Q_psd" or "slack_psd"
        std::vector<CRat> witness;  // v with v^dagger M v < 0 for the failed operator
    };

    bool feasible = false;
    Rat objective{0};               // Tr(Y)/k, exact
    std::vector<bool> slack_psd;    // per-constraint verdict of is_psd(Y - rho_j - T_A(Q_j))
    std::vector<Failure> failures;
};

// How constraint index j maps onto the four base blocks when building the
// recursive certificate. Cyclic pairs j with base block ((j-1) mod 4) + 1,
// which aligns the base case; Shifted pairs j with base block (j mod 4) + 1
// and is kept so the verifier can demonstrate that it is infeasible.
enum class BaseIndexMapping { Cyclic, Shifted };

// The closed-form certificate for the four-state base ensemble:
// Y = (1/4) 1 (x) 1 - (1/2) T_A(psi2 (x) psi3), objective 7/8.
DualCertificate base_certificate();

// Y = (psi0+psi1)^(x)(t-2) (x) Y_base and likewise for the Q blocks,
// truncated to k constraints.
DualCertificate recursive_certificate(int t, int k,
                                      BaseIndexMapping mapping = BaseIndexMapping::Cyclic);

// Exact feasibility check of the dual constraints against an ensemble.
VerificationReport verify(const StateSet& set, const DualCertificate& cert);

// Tr(Y)/k, exact.
Rat certificate_objective(const DualCertificate& cert, int k);

}  // namespace pptd
