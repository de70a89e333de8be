#include "pptd/catalysis.hpp"

#include <cassert>

namespace pptd {

namespace {

int bit_of(const RadVec& v, long index, int qubit) {
    return static_cast<int>((index >> (v.num_qubits - 1 - qubit)) & 1);
}

long with_bits(const RadVec& v, long index, int q1, int b1, int q2, int b2) {
    const long m1 = 1L << (v.num_qubits - 1 - q1);
    const long m2 = 1L << (v.num_qubits - 1 - q2);
    long out = index & ~m1 & ~m2;
    if (b1) out |= m1;
    if (b2) out |= m2;
    return out;
}

// Pauli corrections undoing Bell outcome m of a teleportation: the receiving
// qubit holds sigma_m^-1 applied to the source state.
void apply_correction(RadVec& v, int qubit, int m) {
    const long mask = 1L << (v.num_qubits - 1 - qubit);
    const long n = v.dim();
    switch (m) {
        case 0:
            return;
        case 1:  // X
            for (long i = 0; i < n; ++i)
                if (!(i & mask)) std::swap(v.amps[static_cast<size_t>(i)], v.amps[static_cast<size_t>(i | mask)]);
            return;
        case 2:  // [[0,1],[-1,0]]: |0> -> -|1>, |1> -> |0>
            for (long i = 0; i < n; ++i)
                if (!(i & mask)) {
                    CRat a0 = v.amps[static_cast<size_t>(i)];
                    v.amps[static_cast<size_t>(i)] = v.amps[static_cast<size_t>(i | mask)];
                    v.amps[static_cast<size_t>(i | mask)] = -a0;
                }
            return;
        case 3:  // Z
            for (long i = 0; i < n; ++i)
                if (i & mask) v.amps[static_cast<size_t>(i)] = -v.amps[static_cast<size_t>(i)];
            return;
        default:
            throw std::invalid_argument("apply_correction: bad outcome");
    }
}

const char* correction_name(int m) {
    switch (m) {
        case 0: return "identity";
        case 1: return "pauli_x";
        case 2: return "pauli_xz";
        case 3: return "pauli_z";
    }
    return "?";
}

bool catalyst_is_psi0(const RadVec& v, int qa, int qb) {
    return bell_overlap(v, qa, qb, 0) == 1;
}

}  // namespace

Rat RadVec::norm2() const {
    Rat s = raw_norm2();
    for (int i = 0; i < half_pow; ++i) s /= 2;
    return s;
}

Rat RadVec::raw_norm2() const {
    Rat s(0);
    for (const CRat& a : amps)
        if (!a.is_zero()) s += a.norm2();
    return s;
}

RadVec bell_pair_product(const std::vector<int>& bell_indices) {
    RadVec v;
    v.num_qubits = 0;
    v.half_pow = 0;
    v.amps = {CRat(Rat(1))};
    for (int idx : bell_indices) {
        const std::vector<int>& pat = bell_pattern(idx);
        std::vector<CRat> next(v.amps.size() * 4);
        for (size_t i = 0; i < v.amps.size(); ++i) {
            if (v.amps[i].is_zero()) continue;
            for (size_t p = 0; p < 4; ++p) {
                if (pat[p] == 0) continue;
                next[i * 4 + p] = Rat(pat[p]) * v.amps[i];
            }
        }
        v.amps = std::move(next);
        v.num_qubits += 2;
        v.half_pow += 1;
    }
    return v;
}

void apply_x(RadVec& v, int qubit) { apply_correction(v, qubit, 1); }

RadVec project_qubit(const RadVec& v, int qubit, int outcome) {
    if (qubit < 0 || qubit >= v.num_qubits) throw std::invalid_argument("project_qubit: bad qubit");
    RadVec out = v;
    const long n = v.dim();
    for (long i = 0; i < n; ++i)
        if (bit_of(v, i, qubit) != outcome) out.amps[static_cast<size_t>(i)] = CRat();
    return out;
}

RadVec project_bell_pair(const RadVec& v, int q1, int q2, int m) {
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= v.num_qubits || q2 >= v.num_qubits)
        throw std::invalid_argument("project_bell_pair: bad qubit pair");
    const std::vector<int>& pat = bell_pattern(m);
    RadVec out = v;
    for (CRat& a : out.amps) a = CRat();
    const long n = v.dim();
    const Rat half = make_rat(1, 2);
    for (long i = 0; i < n; ++i) {
        // Visit each subspace of the untouched qubits once, via its
        // (q1,q2) = (0,0) representative.
        if (bit_of(v, i, q1) != 0 || bit_of(v, i, q2) != 0) continue;
        CRat coeff;  // <pattern| sub-vector>, times 1/2 for both sqrt(2) factors
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) {
                const int p = pat[static_cast<size_t>(b1 * 2 + b2)];
                if (p == 0) continue;
                const CRat& a = v.amps[static_cast<size_t>(with_bits(v, i, q1, b1, q2, b2))];
                if (a.is_zero()) continue;
                coeff += Rat(p) * a;
            }
        if (coeff.is_zero()) continue;
        coeff = half * coeff;
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) {
                const int p = pat[static_cast<size_t>(b1 * 2 + b2)];
                if (p == 0) continue;
                out.amps[static_cast<size_t>(with_bits(v, i, q1, b1, q2, b2))] = Rat(p) * coeff;
            }
    }
    return out;
}

ExactMat reduced_density(const RadVec& v, const std::vector<int>& qubits) {
    const int r = static_cast<int>(qubits.size());
    const long dr = 1L << r;
    ExactMat rho(dr);
    const long n = v.dim();
    for (long i = 0; i < n; ++i) {
        if (v.amps[static_cast<size_t>(i)].is_zero()) continue;
        long row = 0;
        for (int q : qubits) row = (row << 1) | bit_of(v, i, q);
        for (long jdx = 0; jdx < n; ++jdx) {
            if (v.amps[static_cast<size_t>(jdx)].is_zero()) continue;
            // Same assignment of every qubit outside `qubits`.
            const long mask_equal = i ^ jdx;
            bool same_rest = true;
            for (int q = 0; q < v.num_qubits && same_rest; ++q) {
                bool in_kept = false;
                for (int kq : qubits)
                    if (kq == q) in_kept = true;
                if (!in_kept && ((mask_equal >> (v.num_qubits - 1 - q)) & 1)) same_rest = false;
            }
            if (!same_rest) continue;
            long col = 0;
            for (int q : qubits) col = (col << 1) | bit_of(v, jdx, q);
            rho(row, col) += v.amps[static_cast<size_t>(i)] * conj_of(v.amps[static_cast<size_t>(jdx)]);
        }
    }
    return rho;
}

Rat bell_overlap(const RadVec& v, int q1, int q2, int m) {
    const Rat total = v.raw_norm2();
    if (sgn(total) == 0) throw std::invalid_argument("bell_overlap: zero vector");
    return project_bell_pair(v, q1, q2, m).raw_norm2() / total;
}

std::array<Rat, 4> bell_measurement(const Operator& two_qubit_state) {
    if (two_qubit_state.dim() != 4)
        throw std::invalid_argument("bell_measurement: two-qubit input required");
    if (two_qubit_state.mode() != ScalarMode::Exact)
        throw ModeError("bell_measurement: exact mode required");
    std::array<Rat, 4> probs;
    for (int m = 0; m < 4; ++m) {
        const std::vector<int>& pat = bell_pattern(m);
        // <psi_m| rho |psi_m> = (1/2) * pattern^T rho pattern
        CRat acc;
        for (long i = 0; i < 4; ++i) {
            if (pat[static_cast<size_t>(i)] == 0) continue;
            for (long j = 0; j < 4; ++j) {
                if (pat[static_cast<size_t>(j)] == 0) continue;
                acc += Rat(pat[static_cast<size_t>(i)] * pat[static_cast<size_t>(j)]) *
                       two_qubit_state.exact()(i, j);
            }
        }
        probs[static_cast<size_t>(m)] = acc.re / 2;
    }
    return probs;
}

std::array<Rat, 4> bell_measurement(const PureState& psi) {
    return bell_measurement(psi.density());
}

std::vector<TeleportBranch> teleport(const RadVec& v, int source_qubit, int catalyst_alice,
                                     int catalyst_bob) {
    if (!catalyst_is_psi0(v, catalyst_alice, catalyst_bob))
        throw std::invalid_argument("teleport: catalyst pair is not in psi0");
    const Rat before = v.raw_norm2();
    std::vector<TeleportBranch> branches;
    for (int m = 0; m < 4; ++m) {
        TeleportBranch b;
        b.measurement = m;
        b.state = project_bell_pair(v, source_qubit, catalyst_alice, m);
        b.probability = b.state.raw_norm2() / before;
        if (sgn(b.probability) == 0) continue;
        apply_correction(b.state, catalyst_bob, m);
        b.correction = correction_name(m);
        branches.push_back(std::move(b));
    }
    return branches;
}

namespace {

Party party_of_qubit(int q) {
    // Catalyst: qubit 0 Alice, 1 Bob; pair qubits alternate Alice/Bob.
    return q % 2 == 0 ? Party::A : Party::B;
}

void record(ProtocolState& ps, int round, Party party, std::string action, std::vector<int> qubits,
            int outcome, Rat probability) {
    for (int q : qubits)
        if (party_of_qubit(q) != party)
            throw std::logic_error("protocol locality violation: qubit " + std::to_string(q) +
                                   " does not belong to party " + to_string(party));
    ps.transcript.push_back(
        {round, party, std::move(action), std::move(qubits), outcome, std::move(probability)});
}

}  // namespace

SimulationResult simulate_with_transcript(int t, int j) {
    if (t < 2) throw std::invalid_argument("simulate: t < 2");
    if (j < 1 || j > (1 << t)) throw std::invalid_argument("simulate: j out of range");

    const std::vector<int> indices = bell_indices_of(t, j);
    std::vector<int> with_catalyst = {0};
    with_catalyst.insert(with_catalyst.end(), indices.begin(), indices.end());

    ProtocolState init;
    init.state = bell_pair_product(with_catalyst);
    init.probability = Rat(1);
    std::vector<ProtocolState> branches = {std::move(init)};

    const auto qubit_a = [](int pair) { return 2 * pair; };      // 1-based pair
    const auto qubit_b = [](int pair) { return 2 * pair + 1; };  // (pair 0 = catalyst)

    int round = 0;
    // Parity rounds resolve the recursion from level t down to the base:
    // both parties measure the leading pair in the computational basis and
    // compare outcomes (equal selects psi0, unequal psi1). Alice announces
    // first by convention.
    for (int level = t; level >= 3; --level) {
        ++round;
        const int pair = t - level + 1;
        std::vector<ProtocolState> next;
        for (ProtocolState& ps : branches) {
            const Rat before = ps.state.raw_norm2();
            for (int oa = 0; oa < 2; ++oa) {
                RadVec va = project_qubit(ps.state, qubit_a(pair), oa);
                const Rat pa = va.raw_norm2() / before;
                if (sgn(pa) == 0) continue;
                for (int ob = 0; ob < 2; ++ob) {
                    RadVec vb = project_qubit(va, qubit_b(pair), ob);
                    const Rat pb = vb.raw_norm2() / va.raw_norm2();
                    if (sgn(pb) == 0) continue;
                    ProtocolState out = ps;
                    out.state = std::move(vb);
                    record(out, round, Party::A, "measure_z", {qubit_a(pair)}, oa, pa);
                    record(out, round, Party::B, "measure_z", {qubit_b(pair)}, ob, pb);
                    out.parity_bits.push_back(oa ^ ob);
                    out.probability = ps.probability * pa * pb;
                    next.push_back(std::move(out));
                }
            }
        }
        branches = std::move(next);
    }

    // Base case: teleport Alice's half of the first remaining pair to Bob
    // through the catalyst, then Bob identifies the pair's Bell state.
    ++round;
    const int first_pair = t - 1, second_pair = t;
    std::vector<ProtocolState> finals;
    for (ProtocolState& ps : branches) {
        std::vector<TeleportBranch> tps = teleport(ps.state, qubit_a(first_pair), 0, 1);
        for (TeleportBranch& tb : tps) {
            ProtocolState out = ps;
            out.state = std::move(tb.state);
            record(out, round, Party::A, "measure_bell", {qubit_a(first_pair), 0}, tb.measurement,
                   tb.probability);
            record(out, round, Party::B, "correction:" + tb.correction, {1}, -1, Rat(1));
            out.probability = ps.probability * tb.probability;

            // Bob now holds both halves of the first base pair (teleported
            // qubit on 1, his own half); its Bell state is definite.
            const Rat pre_bell = out.state.raw_norm2();
            int base_outcome = -1;
            for (int m = 0; m < 4; ++m) {
                RadVec proj = project_bell_pair(out.state, 1, qubit_b(first_pair), m);
                const Rat pm = proj.raw_norm2() / pre_bell;
                if (sgn(pm) == 0) continue;
                if (base_outcome >= 0)
                    throw std::logic_error("base-case Bell measurement is not deterministic");
                base_outcome = m;
                record(out, round, Party::B, "measure_bell", {1, qubit_b(first_pair)}, m, pm);
                out.state = std::move(proj);
                out.probability = out.probability * pm;
            }
            if (base_outcome < 0) throw std::logic_error("base-case Bell measurement lost the state");

            // Reconstruct the prepared index: parity bits give the prefix,
            // the Bell outcome gives the base block.
            int identified = base_outcome + 1;
            for (size_t i = 0; i < out.parity_bits.size(); ++i)
                identified += out.parity_bits[i] << (t - 1 - static_cast<int>(i));
            out.identified_index = identified;

            // The untouched second base pair becomes the restored catalyst;
            // its Bell index is determined by the identification, so Bob can
            // rotate it to psi0 locally.
            const int b_hat = (base_outcome == 0) ? 0 : 1;
            if (b_hat == 1) {
                apply_x(out.state, qubit_b(second_pair));
                record(out, round, Party::B, "correction:pauli_x", {qubit_b(second_pair)}, -1,
                       Rat(1));
            }
            out.catalyst_fidelity = bell_overlap(out.state, qubit_a(second_pair),
                                                 qubit_b(second_pair), 0);
            finals.push_back(std::move(out));
        }
    }

    SimulationResult result;
    result.outcome.rounds = round;
    result.outcome.branch_count = static_cast<long>(finals.size());
    Rat total_prob(0);
    Rat min_fidelity(1);
    int identified = -1;
    bool all_same = true;
    for (const ProtocolState& ps : finals) {
        total_prob += ps.probability;
        if (identified < 0) identified = *ps.identified_index;
        if (*ps.identified_index != identified) all_same = false;
        if (ps.catalyst_fidelity < min_fidelity) min_fidelity = ps.catalyst_fidelity;
    }
    if (total_prob != 1) throw std::logic_error("branch probabilities do not sum to 1");
    if (!all_same) throw std::logic_error("branches disagree on the identified index");
    result.outcome.identified_index = identified;
    result.outcome.correct = (identified == j);
    result.outcome.catalyst_fidelity = min_fidelity;
    result.branches = std::move(finals);
    return result;
}

ProtocolOutcome simulate(int t, int j) { return simulate_with_transcript(t, j).outcome; }

}  // namespace pptd
