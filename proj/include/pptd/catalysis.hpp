#pragma once

// Exact simulation of the entanglement-discrimination-catalysis protocol:
// with one maximally entangled catalyst pair, two parties identify any state
// of the constructed ensembles by local measurements and classical
// communication, and end holding a maximally entangled pair again.
//
// Amplitudes live in the ring of dyadic rationals times a global factor
// 2^(-half_pow/2); every gate and projection used by the protocol stays in
// that ring, so probabilities, overlaps, and fidelities are exact. The
// identification is deterministic on every measurement branch; the simulator
// enumerates all branches instead of sampling.
//
// Qubit layout for an instance at level t: qubit 0 is Alice's catalyst half,
// qubit 1 is Bob's; pair l (1-based) occupies qubits 2l (Alice) and 2l+1
// (Bob). Qubit 0 is the most significant bit of an amplitude index.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pptd/operator.hpp"
#include "pptd/states.hpp"

namespace pptd {

struct RadVec {
    int num_qubits = 0;
    int half_pow = 0;        // global scale 2^(-half_pow/2)
    std::vector<CRat> amps;  // 2^num_qubits amplitudes

    long dim() const { return 1L << num_qubits; }
    // Exact squared norm including the global scale.
    Rat norm2() const;
    // Squared norm of the raw amplitude vector (scale omitted); ratios of
    // these give exact conditional probabilities.
    Rat raw_norm2() const;
};

// Product of Bell pairs: one pair per index, in order.
RadVec bell_pair_product(const std::vector<int>& bell_indices);

// Pauli X on one qubit (exact).
void apply_x(RadVec& v, int qubit);

// Unnormalized projection onto |outcome> of one qubit.
RadVec project_qubit(const RadVec& v, int qubit, int outcome);

// Unnormalized projection onto Bell state m of a qubit pair.
RadVec project_bell_pair(const RadVec& v, int q1, int q2, int m);

// Unnormalized reduced density matrix on the listed qubits (in order).
ExactMat reduced_density(const RadVec& v, const std::vector<int>& qubits);

// <psi_m| rho_(q1,q2) |psi_m> / Tr(rho), exact.
Rat bell_overlap(const RadVec& v, int q1, int q2, int m);

// Exact Bell-basis outcome distribution of a two-qubit density operator.
std::array<Rat, 4> bell_measurement(const Operator& two_qubit_state);
std::array<Rat, 4> bell_measurement(const PureState& psi);

struct TeleportBranch {
    int measurement = 0;     // Bell outcome on (source, catalyst_alice)
    Rat probability{0};      // conditional probability of this outcome
    std::string correction;  // Pauli applied to the receiving qubit
    RadVec state;            // post-measurement, post-correction (unnormalized)
};

// Standard teleportation of `source_qubit` through the catalyst pair, all
// four measurement branches. The catalyst must be in psi0; anything else is
// reported as an error, not corrected.
std::vector<TeleportBranch> teleport(const RadVec& v, int source_qubit, int catalyst_alice,
                                     int catalyst_bob);

struct TranscriptEvent {
    int round = 0;
    Party party = Party::A;
    std::string action;      // "measure_z", "measure_bell", "correction"
    std::vector<int> qubits;
    int outcome = -1;        // -1 for pure corrections
    Rat probability{1};      // conditional probability of the recorded outcome
};

struct ProtocolState {
    RadVec state;
    std::vector<TranscriptEvent> transcript;
    std::vector<int> parity_bits;
    std::optional<int> identified_index;
    Rat probability{1};       // probability of reaching this branch
    Rat catalyst_fidelity{0}; // overlap^2 of the restored pair with psi0
};

struct ProtocolOutcome {
    int identified_index = 0;
    bool correct = false;
    Rat catalyst_fidelity{0};
    int rounds = 0;
    long branch_count = 0;
};

struct SimulationResult {
    ProtocolOutcome outcome;
    std::vector<ProtocolState> branches;  // all non-zero-probability branches
};

// Prepares state j of the level-t construction plus the catalyst, runs the
// protocol over every measurement branch, and merges the (identical)
// per-branch outcomes.
ProtocolOutcome simulate(int t, int j);
SimulationResult simulate_with_transcript(int t, int j);

}  // namespace pptd
