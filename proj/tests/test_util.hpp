#pragma once

// Shared helpers for the test suites: deterministic random rational
// Hermitian matrices and a few comparison utilities.

#include <random>

#include "pptd/operator.hpp"
#include "pptd/states.hpp"

namespace pptd::testutil {

// Deterministic random Hermitian matrix with small rational entries.
inline Operator random_rational_hermitian(std::mt19937& rng, long n,
                                          const TensorFactorization& f) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den_pick(0, 3);
    const int dens[4] = {1, 2, 3, 4};
    auto draw = [&] { return make_rat(num(rng), dens[den_pick(rng)]); };
    ExactMat m(n);
    for (long i = 0; i < n; ++i) {
        m(i, i) = CRat(draw());
        for (long j = i + 1; j < n; ++j) {
            m(i, j) = CRat(draw(), draw());
            m(j, i) = m(i, j).conj();
        }
    }
    return Operator(std::move(m), f);
}

// Gram matrix G = R^dagger R of a random rational matrix; always PSD.
inline Operator random_rational_gram(std::mt19937& rng, long n, const TensorFactorization& f) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den_pick(0, 2);
    const int dens[3] = {1, 2, 4};
    auto draw = [&] { return CRat(make_rat(num(rng), dens[den_pick(rng)]), make_rat(num(rng), dens[den_pick(rng)])); };
    ExactMat r(n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) r(i, j) = draw();
    ExactMat g(n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            CRat s;
            for (long k = 0; k < n; ++k) s += conj_of(r(k, i)) * r(k, j);
            g(i, j) = s;
        }
    return Operator(std::move(g), f);
}

inline Rat quad_form(const Operator& m, const std::vector<CRat>& v) {
    CRat s;
    for (long i = 0; i < m.dim(); ++i)
        for (long j = 0; j < m.dim(); ++j)
            s += conj_of(v[static_cast<size_t>(i)]) * m.exact()(i, j) * v[static_cast<size_t>(j)];
    return s.re;
}

}  // namespace pptd::testutil
