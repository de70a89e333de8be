#pragma once

// Hermitian operators with tensor-product bookkeeping in one of two scalar
// modes: exact rational entries or double-precision entries. Structural
// operations (kron, partial transpose/trace, factor permutation) work in
// either mode; spectral operations (min_eigenvalue, tolerance PSD) require
// float mode; the exact PSD decision requires exact mode.
//
// Mixing modes in a binary operation throws ModeError. The only conversion
// is the explicit exact -> float direction.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pptd/dense.hpp"
#include "pptd/factorization.hpp"
#include "pptd/rational.hpp"

namespace pptd {

struct ModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimCapError : std::length_error {
    using std::length_error::length_error;
};

// Hard cap on total operator dimension, default 1024. PPTD_DIM_CAP in the
// environment or set_operator_dim_cap() overrides it.
long operator_dim_cap();
void set_operator_dim_cap(long cap);

// A scalar in either mode; inner_product and trace return this.
class Scalar {
public:
    Scalar(CRat v) : v_(std::move(v)) {}
    Scalar(Cx v) : v_(v) {}

    ScalarMode mode() const {
        return std::holds_alternative<CRat>(v_) ? ScalarMode::Exact : ScalarMode::Float;
    }
    const CRat& exact() const {
        if (mode() != ScalarMode::Exact) throw ModeError("Scalar: not in exact mode");
        return std::get<CRat>(v_);
    }
    Cx floating() const {
        if (mode() != ScalarMode::Float) throw ModeError("Scalar: not in float mode");
        return std::get<Cx>(v_);
    }
    // Real part in double precision regardless of mode.
    double real_approx() const {
        return mode() == ScalarMode::Exact ? std::get<CRat>(v_).re.get_d() : std::get<Cx>(v_).real();
    }

private:
    std::variant<CRat, Cx> v_;
};

class Operator {
public:
    // Validates hermiticity (exact equality, or entrywise 1e-12 in float
    // mode), the factorization total dimension, and the dimension cap.
    Operator(ExactMat m, TensorFactorization f);
    Operator(FloatMat m, TensorFactorization f);

    ScalarMode mode() const {
        return std::holds_alternative<ExactMat>(m_) ? ScalarMode::Exact : ScalarMode::Float;
    }
    long dim() const;
    const TensorFactorization& factorization() const { return fact_; }

    const ExactMat& exact() const;
    const FloatMat& floating() const;

    friend bool operator==(const Operator& a, const Operator& b);

private:
    TensorFactorization fact_;
    std::variant<ExactMat, FloatMat> m_;
};

// --- constructors ------------------------------------------------------

Operator identity_operator(const TensorFactorization& f, ScalarMode mode = ScalarMode::Exact);
Operator zero_operator(const TensorFactorization& f, ScalarMode mode = ScalarMode::Exact);
Operator to_float(const Operator& m);

// --- arithmetic --------------------------------------------------------

Operator add(const Operator& a, const Operator& b);
Operator sub(const Operator& a, const Operator& b);
Operator scale(const Rat& s, const Operator& m);    // exact mode
Operator scale(double s, const Operator& m);        // float mode
inline Operator operator+(const Operator& a, const Operator& b) { return add(a, b); }
inline Operator operator-(const Operator& a, const Operator& b) { return sub(a, b); }

// --- spec operations ----------------------------------------------------

// Kronecker product; factorizations concatenate.
Operator kron(const Operator& a, const Operator& b);

// Transposes the selected factors. The default selects every A factor,
// realizing T_A = T (x) 1.
Operator partial_transpose(const Operator& m);
Operator partial_transpose(const Operator& m, Party party);
Operator partial_transpose(const Operator& m, const std::vector<int>& selected_factors);

Operator partial_trace(const Operator& m, Party party);

Scalar trace(const Operator& m);
Scalar inner_product(const Operator& a, const Operator& b);

// Re-indexes an interleaved operator (A1,B1,...,At,Bt) to the grouped cut
// order (A1,...,At,B1,...,Bt).
Operator permute_to_cut(const Operator& m);

// Smallest eigenvalue (float mode only).
double min_eigenvalue(const Operator& m);

struct PsdResult {
    bool psd = true;
    double min_eig = 0.0;                  // tolerance mode only
    std::vector<CRat> exact_witness;       // exact mode, when !psd
    std::vector<Cx> float_witness;         // tolerance mode, when !psd
};

// Exact decision (exact mode required).
PsdResult is_psd(const Operator& m);
// Tolerance decision: min eigenvalue >= -eps. Exact input is converted.
PsdResult is_psd(const Operator& m, double eps);

bool is_zero_operator(const Operator& m);

// Largest entrywise |a_ij - b_ij| between two same-mode operators, as double.
double max_entry_distance(const Operator& a, const Operator& b);

}  // namespace pptd
