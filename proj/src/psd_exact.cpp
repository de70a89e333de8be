#include "pptd/psd_exact.hpp"

#include <cassert>
#include <utility>

namespace pptd {

namespace {

CRat crat_div(const CRat& a, const CRat& b) {
    Rat n2 = b.norm2();
    if (sgn(n2) == 0) throw std::invalid_argument("crat_div: division by zero");
    CRat num = a * b.conj();
    return CRat(num.re / n2, num.im / n2);
}

// Solves the Hermitian positive-definite system H x = rhs by Gaussian
// elimination with partial (first-nonzero) pivoting, exact arithmetic.
std::vector<CRat> solve_linear(ExactMat h, std::vector<CRat> rhs) {
    const long n = h.dim();
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (!h(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::logic_error("solve_linear: singular leading block");
        if (piv != k) {
            for (long j = 0; j < n; ++j) std::swap(h(k, j), h(piv, j));
            std::swap(rhs[static_cast<size_t>(k)], rhs[static_cast<size_t>(piv)]);
        }
        for (long i = k + 1; i < n; ++i) {
            if (h(i, k).is_zero()) continue;
            CRat mult = crat_div(h(i, k), h(k, k));
            for (long j = k; j < n; ++j) {
                if (h(k, j).is_zero()) continue;
                h(i, j) -= mult * h(k, j);
            }
            rhs[static_cast<size_t>(i)] -= mult * rhs[static_cast<size_t>(k)];
        }
    }
    std::vector<CRat> x(static_cast<size_t>(n));
    for (long i = n - 1; i >= 0; --i) {
        CRat s = rhs[static_cast<size_t>(i)];
        for (long j = i + 1; j < n; ++j) {
            if (h(i, j).is_zero() || x[static_cast<size_t>(j)].is_zero()) continue;
            s -= h(i, j) * x[static_cast<size_t>(j)];
        }
        x[static_cast<size_t>(i)] = crat_div(s, h(i, i));
    }
    return x;
}

Rat quadratic_form(const ExactMat& m, const std::vector<CRat>& v) {
    CRat s;
    const long n = m.dim();
    for (long i = 0; i < n; ++i) {
        if (v[static_cast<size_t>(i)].is_zero()) continue;
        for (long j = 0; j < n; ++j) {
            const CRat& mij = m(i, j);
            if (mij.is_zero() || v[static_cast<size_t>(j)].is_zero()) continue;
            s += conj_of(v[static_cast<size_t>(i)]) * mij * v[static_cast<size_t>(j)];
        }
    }
    return s.re;  // Hermitian form is real
}

// Lifts a Schur-complement witness (supported on permuted positions >= k)
// to a witness for the original matrix, given the permutation p built so far.
std::vector<CRat> lift_witness(const ExactMat& original, const std::vector<long>& p, long k,
                               const std::vector<CRat>& schur_witness) {
    const long n = original.dim();
    std::vector<CRat> vbar(static_cast<size_t>(n));
    for (long t = k; t < n; ++t) vbar[static_cast<size_t>(t)] = schur_witness[static_cast<size_t>(t - k)];

    if (k > 0) {
        // x solves A11 x = -A12 w on the permuted original matrix.
        ExactMat a11(k);
        std::vector<CRat> rhs(static_cast<size_t>(k));
        for (long s = 0; s < k; ++s) {
            for (long t = 0; t < k; ++t) a11(s, t) = original(p[static_cast<size_t>(s)], p[static_cast<size_t>(t)]);
            CRat acc;
            for (long t = k; t < n; ++t) {
                if (vbar[static_cast<size_t>(t)].is_zero()) continue;
                acc += original(p[static_cast<size_t>(s)], p[static_cast<size_t>(t)]) * vbar[static_cast<size_t>(t)];
            }
            rhs[static_cast<size_t>(s)] = -acc;
        }
        std::vector<CRat> x = solve_linear(std::move(a11), std::move(rhs));
        for (long s = 0; s < k; ++s) vbar[static_cast<size_t>(s)] = x[static_cast<size_t>(s)];
    }

    std::vector<CRat> v(static_cast<size_t>(n));
    for (long t = 0; t < n; ++t) v[static_cast<size_t>(p[static_cast<size_t>(t)])] = vbar[static_cast<size_t>(t)];
    return v;
}

}  // namespace

ExactPsdResult exact_psd_check(const ExactMat& input) {
    const long n = input.dim();
    ExactMat work = input;
    std::vector<long> p(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;

    auto fail_with = [&](long k, std::vector<CRat> schur_witness) {
        ExactPsdResult r;
        r.psd = false;
        r.witness = lift_witness(input, p, k, std::move(schur_witness));
        r.witness_value = quadratic_form(input, r.witness);
        assert(sgn(r.witness_value) < 0);
        return r;
    };

    for (long k = 0; k < n; ++k) {
        // Complete diagonal pivoting: bring the largest remaining diagonal
        // entry to the front.
        long best = k;
        for (long i = k + 1; i < n; ++i)
            if (work(i, i).re > work(best, best).re) best = i;

        if (sgn(work(best, best).re) > 0) {
            if (best != k) {
                for (long j = 0; j < n; ++j) std::swap(work(k, j), work(best, j));
                for (long i = 0; i < n; ++i) std::swap(work(i, k), work(i, best));
                std::swap(p[static_cast<size_t>(k)], p[static_cast<size_t>(best)]);
            }
            const Rat pivot = work(k, k).re;
            for (long i = k + 1; i < n; ++i) {
                if (work(i, k).is_zero()) continue;
                CRat mult(work(i, k).re / pivot, work(i, k).im / pivot);
                for (long j = k + 1; j < n; ++j) {
                    if (work(k, j).is_zero()) continue;
                    work(i, j) -= mult * work(k, j);
                }
            }
            continue;
        }

        // No positive diagonal remains. A negative diagonal entry is an
        // immediate witness; otherwise any nonzero off-diagonal entry in the
        // (zero-diagonal) trailing block is indefinite.
        for (long i = k; i < n; ++i) {
            if (sgn(work(i, i).re) < 0) {
                std::vector<CRat> w(static_cast<size_t>(n - k));
                w[static_cast<size_t>(i - k)] = CRat(Rat(1));
                return fail_with(k, std::move(w));
            }
        }
        for (long i = k; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                if (work(i, j).is_zero()) continue;
                // For the 2x2 block [[0, c], [conj(c), 0]]: v = (1, -conj(c))
                // gives v^dagger M v = -2|c|^2.
                std::vector<CRat> w(static_cast<size_t>(n - k));
                w[static_cast<size_t>(i - k)] = CRat(Rat(1));
                w[static_cast<size_t>(j - k)] = -work(i, j).conj();
                return fail_with(k, std::move(w));
            }
        return ExactPsdResult{};  // trailing block is zero
    }
    return ExactPsdResult{};  // all pivots positive
}

}  // namespace pptd
