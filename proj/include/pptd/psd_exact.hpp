#pragma once

// Exact positive-semidefiniteness decision for Hermitian matrices with
// rational entries: symmetric elimination with complete diagonal pivoting.
//
// The matrix is PSD iff every selected pivot is positive and, once no
// positive diagonal remains, the trailing block is identically zero. When
// the answer is negative, a witness vector v with v^dagger M v < 0 is
// produced by lifting the offending Schur-complement direction back through
// the processed block.

#include <vector>

#include "pptd/dense.hpp"
#include "pptd/rational.hpp"

namespace pptd {

struct ExactPsdResult {
    bool psd = true;
    std::vector<CRat> witness;  // empty iff psd; else v with v^dagger M v < 0
    Rat witness_value{0};       // v^dagger M v, negative when !psd
};

// Pre: m is Hermitian (exact). The check is O(n * nnz_col * n) thanks to
// zero skipping; Bell-product certificates stay sparse under elimination.
ExactPsdResult exact_psd_check(const ExactMat& m);

}  // namespace pptd
