#include "doctest.h"

#include "pptd/catalysis.hpp"

using namespace pptd;

namespace {

// Tensor product of a one-qubit source state (rational amplitude pattern,
// scale 2^(-hp/2)) with a psi0 catalyst pair: qubits (source, cA, cB).
RadVec source_with_catalyst(const CRat& p0, const CRat& p1, int hp) {
    RadVec v;
    v.num_qubits = 3;
    v.half_pow = hp + 1;
    v.amps.assign(8, CRat());
    for (int c = 0; c < 2; ++c) {
        v.amps[static_cast<size_t>(0b000 | (c << 1) | c)] = p0;  // s=0, cA=cB=c
        v.amps[static_cast<size_t>(0b100 | (c << 1) | c)] = p1;  // s=1
    }
    return v;
}

// rho_red(q) proportional to |phi><phi| with phi = (p0, p1)?
bool reduced_matches(const RadVec& v, int qubit, const CRat& p0, const CRat& p1) {
    const ExactMat red = reduced_density(v, {qubit});
    // Cross-multiplied proportionality against the rank-1 target.
    const CRat t00 = p0 * conj_of(p0), t01 = p0 * conj_of(p1);
    const CRat t10 = p1 * conj_of(p0), t11 = p1 * conj_of(p1);
    return red(0, 0) * t11 == red(1, 1) * t00 && red(0, 1) * t10 == red(1, 0) * t01 &&
           red(0, 0) * t01 == red(0, 1) * t00 && red(1, 0) * t11 == red(1, 1) * t10;
}

}  // namespace

TEST_SUITE("catalysis") {

TEST_CASE("bell pair products have unit norm and the right layout") {
    const RadVec v = bell_pair_product({0, 1, 2});
    CHECK(v.num_qubits == 6);
    CHECK(v.half_pow == 3);
    CHECK(v.norm2() == 1);
    CHECK(bell_overlap(v, 0, 1, 0) == 1);
    CHECK(bell_overlap(v, 2, 3, 1) == 1);
    CHECK(bell_overlap(v, 4, 5, 2) == 1);
    CHECK(bell_overlap(v, 4, 5, 0) == 0);
}

TEST_CASE("bell_measurement on basis states, product states and the mixed state") {
    const std::array<Rat, 4> on_psi2 = bell_measurement(bell_density(2));
    CHECK(on_psi2[0] == 0);
    CHECK(on_psi2[1] == 0);
    CHECK(on_psi2[2] == 1);
    CHECK(on_psi2[3] == 0);

    // |00> expands onto psi0 and psi3 with probability 1/2 each.
    std::vector<CRat> amps(4);
    amps[0] = CRat(Rat(1));
    const PureState zero_zero(std::move(amps), TensorFactorization::pair(2));
    const std::array<Rat, 4> on_00 = bell_measurement(zero_zero);
    CHECK(on_00[0] == make_rat(1, 2));
    CHECK(on_00[1] == 0);
    CHECK(on_00[2] == 0);
    CHECK(on_00[3] == make_rat(1, 2));

    const Operator mixed = scale(make_rat(1, 4), identity_operator(TensorFactorization::pair(2)));
    for (const Rat& p : bell_measurement(mixed)) CHECK(p == make_rat(1, 4));

    const Operator one_qubit = identity_operator(TensorFactorization({{2, Party::A}}));
    CHECK_THROWS_AS(bell_measurement(one_qubit), std::invalid_argument);
}

TEST_CASE("teleporting computational and superposed states") {
    // |0>: receiver holds |0> on every branch after correction.
    {
        const RadVec v = source_with_catalyst(CRat(Rat(1)), CRat(), 0);
        const std::vector<TeleportBranch> branches = teleport(v, 0, 1, 2);
        Rat total(0);
        for (const TeleportBranch& b : branches) {
            total += b.probability;
            CHECK(reduced_matches(b.state, 2, CRat(Rat(1)), CRat()));
        }
        CHECK(total == 1);
    }
    // |+> = (|0> + |1>)/sqrt2.
    {
        const RadVec v = source_with_catalyst(CRat(Rat(1)), CRat(Rat(1)), 1);
        const std::vector<TeleportBranch> branches = teleport(v, 0, 1, 2);
        CHECK(branches.size() == 4);
        for (const TeleportBranch& b : branches) {
            CHECK(b.probability == make_rat(1, 4));
            CHECK(reduced_matches(b.state, 2, CRat(Rat(1)), CRat(Rat(1))));
        }
    }
    // A complex-amplitude source state exercises the xz correction branch.
    {
        const RadVec v = source_with_catalyst(CRat(Rat(1)), CRat(Rat(0), Rat(1)), 1);
        for (const TeleportBranch& b : teleport(v, 0, 1, 2))
            CHECK(reduced_matches(b.state, 2, CRat(Rat(1)), CRat(Rat(0), Rat(1))));
    }
}

TEST_CASE("teleporting half of a Bell pair moves the entanglement") {
    // Pair (0,1) in psi0 is the payload; pair (2,3) is the catalyst.
    const RadVec v = bell_pair_product({0, 0});
    const std::vector<TeleportBranch> branches = teleport(v, 0, 2, 3);
    CHECK(branches.size() == 4);
    Rat total(0);
    for (const TeleportBranch& b : branches) {
        total += b.probability;
        // Bob now holds qubits 3 (teleported) and 1; they form psi0.
        CHECK(bell_overlap(b.state, 3, 1, 0) == 1);
    }
    CHECK(total == 1);
}

TEST_CASE("teleport refuses a catalyst that is not psi0") {
    const RadVec v = bell_pair_product({0, 1});  // catalyst pair (2,3) is psi1
    CHECK_THROWS_WITH_AS(teleport(v, 0, 2, 3), doctest::Contains("not in psi0"),
                         std::invalid_argument);
}

TEST_CASE("base protocol identifies all four states with the catalyst restored") {
    for (int j = 1; j <= 4; ++j) {
        const ProtocolOutcome out = simulate(2, j);
        CHECK(out.identified_index == j);
        CHECK(out.correct);
        CHECK(out.catalyst_fidelity == 1);
        CHECK(out.rounds == 1);
        CHECK(out.branch_count == 4);
    }
}

TEST_CASE("level 3, state 5: the psi1 branch is taken, then the base case") {
    const SimulationResult res = simulate_with_transcript(3, 5);
    CHECK(res.outcome.identified_index == 5);
    CHECK(res.outcome.correct);
    CHECK(res.outcome.catalyst_fidelity == 1);
    CHECK(res.outcome.rounds == 2);
    CHECK(res.outcome.branch_count == 8);  // 2 parity x 4 teleport outcomes
    for (const ProtocolState& ps : res.branches) {
        REQUIRE(ps.parity_bits.size() == 1);
        CHECK(ps.parity_bits[0] == 1);  // leading pair is psi1: outcomes differ
        CHECK(*ps.identified_index == 5);
        CHECK(ps.catalyst_fidelity == 1);
    }
}

TEST_CASE("every branch is local and carries exact probabilities") {
    const SimulationResult res = simulate_with_transcript(3, 3);
    Rat total(0);
    for (const ProtocolState& ps : res.branches) {
        total += ps.probability;
        Rat branch_prob(1);
        for (const TranscriptEvent& e : ps.transcript) {
            for (int q : e.qubits) {
                const Party owner = (q % 2 == 0) ? Party::A : Party::B;
                CHECK(owner == e.party);
            }
            if (e.outcome >= 0) branch_prob *= e.probability;
        }
        CHECK(branch_prob == ps.probability);
    }
    CHECK(total == 1);
}

TEST_CASE("exhaustive correctness for t = 2 and t = 3") {
    for (int t : {2, 3}) {
        for (int j = 1; j <= (1 << t); ++j) {
            const ProtocolOutcome out = simulate(t, j);
            CHECK(out.identified_index == j);
            CHECK(out.correct);
            CHECK(out.catalyst_fidelity == 1);
            CHECK(out.rounds == t - 1);
        }
    }
}

TEST_CASE("the fifteen-state instance runs exactly") {
    const ProtocolOutcome out = simulate(4, 15);
    CHECK(out.identified_index == 15);
    CHECK(out.correct);
    CHECK(out.catalyst_fidelity == 1);
    CHECK(out.rounds == 3);
    CHECK(out.branch_count == 16);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(simulate(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate(3, 9), std::invalid_argument);
}

}  // TEST_SUITE
