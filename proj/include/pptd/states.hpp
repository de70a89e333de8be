#pragma once

// Bell states, the four-state base ensemble, the recursive indistinguishable
// ensembles, and the validation predicates (orthonormality, maximal
// entanglement).
//
// Constructed ensembles are exact: every Bell density operator has entries
// in {0, +-1/2}, and tensor products of them stay rational. Generalized
// Bell states for local dimension d >= 3 carry irrational phases and are
// stored in float mode.

#include <optional>
#include <variant>
#include <vector>

#include "pptd/operator.hpp"

namespace pptd {

class PureState {
public:
    PureState(std::vector<CRat> amps, TensorFactorization f);  // exact unit norm
    PureState(std::vector<Cx> amps, TensorFactorization f);    // unit norm within 1e-12

    ScalarMode mode() const {
        return std::holds_alternative<std::vector<CRat>>(amps_) ? ScalarMode::Exact
                                                                : ScalarMode::Float;
    }
    long dim() const;
    const TensorFactorization& factorization() const { return fact_; }
    const std::vector<CRat>& exact_amplitudes() const;
    const std::vector<Cx>& float_amplitudes() const;

    // |psi><psi| in the state's mode.
    Operator density() const;

private:
    TensorFactorization fact_;
    std::variant<std::vector<CRat>, std::vector<Cx>> amps_;
};

struct StateSet {
    std::vector<Operator> states;  // density operators over one shared factorization
    std::optional<int> t;          // recursion level when constructed
    int d = 0;                     // local dimension (dim of each party)
    std::vector<Rat> priors;       // strictly positive, sums to 1

    int k() const { return static_cast<int>(states.size()); }
};

// The four Bell density operators, exact 4x4 with factorization (A:2, B:2).
Operator bell_density(int i);

// Unnormalized Bell amplitude patterns (entries in {0,+-1}); the pure state
// is the pattern scaled by 1/sqrt(2).
const std::vector<int>& bell_pattern(int i);

// Maximally entangled pure state (1/sqrt d) sum_k w^{bk} |k>|k+a mod d>,
// w = exp(2 pi i / d). Float mode.
PureState generalized_bell(int d, int a, int b);

// The Bell-index tuple (i_1, ..., i_t) of the j-th constructed state at
// recursion level t, 1-based j in {1, ..., 2^t}.
std::vector<int> bell_indices_of(int t, int j);

// The j-th constructed state as an exact density operator with interleaved
// factorization (A1,B1,...,At,Bt).
Operator recursive_state(int t, int j);

// The four-state base ensemble (t = 2, d = 4), uniform priors.
StateSet yu_set();

// All 2^t constructed states truncated to the first k, uniform priors 1/k.
StateSet recursive_set(int t, int k);

// Explicit subset selection (1-based indices into the 2^t construction).
StateSet recursive_set(int t, const std::vector<int>& indices);

// True iff both reduced operators equal 1/d across the A|B cut and, for
// density input, trace(rho^2) = 1. Exact equality in exact mode, entrywise
// 1e-10 in float mode. Throws on an unbalanced cut (dim_A != dim_B).
bool is_maximally_entangled(const Operator& density);
bool is_maximally_entangled(const PureState& psi);

// True iff <rho_i, rho_j> = delta_ij over all pairs (exact, or within 1e-10).
bool check_orthonormal(const StateSet& set);

}  // namespace pptd
