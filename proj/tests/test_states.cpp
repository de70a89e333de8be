#include "doctest.h"

#include <cmath>

#include "pptd/catalysis.hpp"
#include "pptd/states.hpp"

using namespace pptd;

namespace {

// Independent orthogonality oracle for tensor-of-Bell states: two products
// of Bell operators are orthogonal iff their index tuples differ anywhere.
bool tuples_equal(const std::vector<int>& a, const std::vector<int>& b) {
    return a == b;
}

Cx pure_overlap(const PureState& a, const PureState& b) {
    const auto& va = a.float_amplitudes();
    const auto& vb = b.float_amplitudes();
    Cx s(0.0, 0.0);
    for (size_t i = 0; i < va.size(); ++i) s += std::conj(va[i]) * vb[i];
    return s;
}

}  // namespace

TEST_SUITE("state_toolkit") {

TEST_CASE("bell_density frozen entries") {
    const Operator psi0 = bell_density(0);
    const Rat h = make_rat(1, 2);
    for (long i : {0L, 3L})
        for (long j : {0L, 3L}) CHECK(psi0.exact()(i, j) == CRat(h));
    CHECK(psi0.exact()(1, 1).is_zero());
    CHECK(psi0.exact()(0, 1).is_zero());

    const Operator psi2 = bell_density(2);
    CHECK(psi2.exact()(1, 1) == CRat(h));
    CHECK(psi2.exact()(2, 2) == CRat(h));
    CHECK(psi2.exact()(1, 2) == CRat(-h));
    CHECK(psi2.exact()(2, 1) == CRat(-h));
    CHECK(psi2.exact()(0, 0).is_zero());

    CHECK_THROWS_AS(bell_density(4), std::invalid_argument);
    CHECK_THROWS_AS(bell_density(-1), std::invalid_argument);
}

TEST_CASE("bell densities are an orthonormal family") {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const CRat ip = inner_product(bell_density(i), bell_density(j)).exact();
            CHECK(ip == CRat(Rat(i == j ? 1 : 0)));
        }
}

TEST_CASE("generalized_bell reduces to the Bell basis at d = 2") {
    const Operator g00 = generalized_bell(2, 0, 0).density();
    const Operator g10 = generalized_bell(2, 1, 0).density();
    CHECK(max_entry_distance(g00, to_float(bell_density(0))) < 1e-15);
    CHECK(max_entry_distance(g10, to_float(bell_density(1))) < 1e-15);
    // Phase variants give psi3 and psi2 up to global phase; probe via overlap.
    const Operator g01 = generalized_bell(2, 0, 1).density();
    CHECK(inner_product(g01, to_float(bell_density(3))).floating().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generalized_bell is maximally entangled and validates arguments") {
    const PureState g = generalized_bell(3, 1, 2);
    const Operator red = partial_trace(g.density(), Party::A);
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            const Cx expect = i == j ? Cx(1.0 / 3.0, 0.0) : Cx(0.0, 0.0);
            CHECK(std::abs(red.floating()(i, j) - expect) <= 1e-12);
        }
    CHECK(is_maximally_entangled(g));
    CHECK_THROWS_AS(generalized_bell(1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generalized_bell(3, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(generalized_bell(3, 0, -1), std::invalid_argument);
}

TEST_CASE("generalized_bell family is pairwise orthogonal for d in {2,3}") {
    for (int d : {2, 3}) {
        for (int a1 = 0; a1 < d; ++a1)
            for (int b1 = 0; b1 < d; ++b1)
                for (int a2 = 0; a2 < d; ++a2)
                    for (int b2 = 0; b2 < d; ++b2) {
                        const Cx ov = pure_overlap(generalized_bell(d, a1, b1),
                                                   generalized_bell(d, a2, b2));
                        const double expect = (a1 == a2 && b1 == b2) ? 1.0 : 0.0;
                        CHECK(std::abs(std::abs(ov) - expect) <= 1e-10);
                    }
    }
}

TEST_CASE("yu_set composition") {
    const StateSet set = yu_set();
    CHECK(set.k() == 4);
    CHECK(set.d == 4);
    CHECK(set.t == 2);
    CHECK(set.states[0] == kron(bell_density(0), bell_density(0)));
    CHECK(set.states[1] == kron(bell_density(1), bell_density(1)));
    CHECK(set.states[2] == kron(bell_density(2), bell_density(1)));
    CHECK(set.states[3] == kron(bell_density(3), bell_density(1)));
    for (const Rat& p : set.priors) CHECK(p == make_rat(1, 4));
    CHECK(check_orthonormal(set));
    for (const Operator& s : set.states) CHECK(is_maximally_entangled(s));
}

TEST_CASE("recursive_set base case and branch rule") {
    const StateSet base = recursive_set(2, 4);
    const StateSet yu = yu_set();
    for (int j = 0; j < 4; ++j) CHECK(base.states[static_cast<size_t>(j)] == yu.states[static_cast<size_t>(j)]);

    // j = 5 > 2^2 takes the psi1 branch on top of the level-2 state 1.
    const StateSet s3 = recursive_set(3, 8);
    CHECK(s3.states[4] == kron(bell_density(1), kron(bell_density(0), bell_density(0))));

    CHECK_THROWS_AS(recursive_set(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(recursive_set(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(recursive_set(3, 9), std::invalid_argument);
}

TEST_CASE("the fifteen-state example matches the frozen tuple table") {
    // Hand-transcribed Bell index tuples of the k = 15 example in d = 16.
    const std::vector<std::vector<int>> expected = {
        {0, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 2, 1}, {0, 0, 3, 1},
        {0, 1, 0, 0}, {0, 1, 1, 1}, {0, 1, 2, 1}, {0, 1, 3, 1},
        {1, 0, 0, 0}, {1, 0, 1, 1}, {1, 0, 2, 1}, {1, 0, 3, 1},
        {1, 1, 0, 0}, {1, 1, 1, 1}, {1, 1, 2, 1},
    };
    for (int j = 1; j <= 15; ++j)
        CHECK(bell_indices_of(4, j) == expected[static_cast<size_t>(j - 1)]);

    const StateSet set = recursive_set(4, 15);
    CHECK(set.k() == 15);
    CHECK(set.d == 16);
    for (int j = 0; j < 15; ++j) {
        Operator expect = bell_density(expected[static_cast<size_t>(j)][0]);
        for (size_t l = 1; l < 4; ++l)
            expect = kron(expect, bell_density(expected[static_cast<size_t>(j)][static_cast<size_t>(l)]));
        CHECK(set.states[static_cast<size_t>(j)] == expect);
    }
}

TEST_CASE("constructed sets are orthonormal pure maximally entangled ensembles") {
    for (int t : {2, 3, 4}) {
        const StateSet set = recursive_set(t, 1 << t);
        CHECK(check_orthonormal(set));
        for (const Operator& s : set.states) {
            CHECK(is_psd(s).psd);
            CHECK(trace(s).exact() == CRat(Rat(1)));
            CHECK(inner_product(s, s).exact() == CRat(Rat(1)));  // purity
            CHECK(is_maximally_entangled(s));
        }
        // Orthogonality agrees with the tuple-comparison oracle.
        for (int i = 1; i <= set.k(); ++i)
            for (int j = 1; j <= set.k(); ++j) {
                const bool same = tuples_equal(bell_indices_of(t, i), bell_indices_of(t, j));
                const CRat ip = inner_product(set.states[static_cast<size_t>(i - 1)],
                                              set.states[static_cast<size_t>(j - 1)]).exact();
                CHECK(ip == CRat(Rat(same ? 1 : 0)));
            }
    }
}

TEST_CASE("level t restricted to the lower half is psi0 tensor level t-1") {
    for (int t : {3, 4}) {
        const StateSet big = recursive_set(t, 1 << (t - 1));
        const StateSet small = recursive_set(t - 1, 1 << (t - 1));
        for (int j = 0; j < big.k(); ++j)
            CHECK(big.states[static_cast<size_t>(j)] ==
                  kron(bell_density(0), small.states[static_cast<size_t>(j)]));
    }
}

TEST_CASE("level 5 ensemble: exact purity, entanglement, orthogonality via amplitude vectors") {
    // Densities at d = 32 are large; the amplitude vectors carry the same
    // information exactly. Raw reduced density of a maximally entangled
    // vector is the identity; raw overlaps reproduce delta_ij.
    const int t = 5;
    std::vector<RadVec> vecs;
    for (int j = 1; j <= 32; ++j) vecs.push_back(bell_pair_product(bell_indices_of(t, j)));

    std::vector<int> a_qubits, b_qubits;
    for (int l = 0; l < t; ++l) {
        a_qubits.push_back(2 * l);
        b_qubits.push_back(2 * l + 1);
    }
    for (const RadVec& v : vecs) {
        CHECK(v.norm2() == 1);
        for (const std::vector<int>& side : {a_qubits, b_qubits}) {
            const ExactMat red = reduced_density(v, side);
            for (long i = 0; i < red.dim(); ++i)
                for (long j = 0; j < red.dim(); ++j)
                    CHECK(red(i, j) == CRat(Rat(i == j ? 1 : 0)));
        }
    }
    for (size_t i = 0; i < vecs.size(); ++i)
        for (size_t j = i; j < vecs.size(); ++j) {
            CRat ov;
            for (size_t x = 0; x < vecs[i].amps.size(); ++x)
                ov += conj_of(vecs[i].amps[x]) * vecs[j].amps[x];
            // Raw overlaps: <v_i|v_j> = 2^t delta_ij before rescaling.
            CHECK(ov == CRat(Rat(i == j ? 32 : 0)));
        }
}

TEST_CASE("explicit index-list subsets") {
    const StateSet sub = recursive_set(4, std::vector<int>{1, 5, 9, 13});
    CHECK(sub.k() == 4);
    CHECK(sub.states[1] == recursive_state(4, 5));
    CHECK(check_orthonormal(sub));
    for (const Rat& p : sub.priors) CHECK(p == make_rat(1, 4));
}

TEST_CASE("is_maximally_entangled negative cases") {
    // Product state |00><00|.
    ExactMat m(4);
    m(0, 0) = CRat(Rat(1));
    const Operator product(std::move(m), TensorFactorization::pair(2));
    CHECK_FALSE(is_maximally_entangled(product));

    // Equal mixture of two Bell states: entangled reduced sides but not pure.
    const Operator mixed = scale(make_rat(1, 2), add(bell_density(0), bell_density(1)));
    CHECK_FALSE(is_maximally_entangled(mixed));

    // Unbalanced cut.
    const Operator unbalanced =
        scale(make_rat(1, 8), identity_operator(TensorFactorization({{2, Party::A}, {4, Party::B}})));
    CHECK_THROWS_AS(is_maximally_entangled(unbalanced), std::invalid_argument);
}

TEST_CASE("check_orthonormal rejects repeated states and empty sets") {
    StateSet repeated;
    repeated.states = {bell_density(0), bell_density(0)};
    repeated.d = 2;
    repeated.priors = {make_rat(1, 2), make_rat(1, 2)};
    CHECK_FALSE(check_orthonormal(repeated));

    StateSet empty;
    CHECK_THROWS_AS(check_orthonormal(empty), std::invalid_argument);
}

}  // TEST_SUITE
