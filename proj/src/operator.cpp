#include "pptd/operator.hpp"

#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

#include "pptd/psd_exact.hpp"

namespace pptd {

namespace {

constexpr double kHermTol = 1e-12;

long& cap_storage() {
    static long cap = [] {
        if (const char* env = std::getenv("PPTD_DIM_CAP")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) return v;
        }
        return 1024L;
    }();
    return cap;
}

void check_dims(const TensorFactorization& f, long dim) {
    if (f.total_dim() != dim)
        throw std::invalid_argument("Operator: factorization total_dim != matrix dim");
    if (dim > operator_dim_cap())
        throw DimCapError("Operator: dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(operator_dim_cap()));
}

void require_same_mode(const Operator& a, const Operator& b, const char* what) {
    if (a.mode() != b.mode())
        throw ModeError(std::string(what) + ": mixed scalar modes are rejected");
}

Eigen::MatrixXcd to_eigen(const FloatMat& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (long i = 0; i < m.dim(); ++i)
        for (long j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
    return e;
}

std::vector<int> party_factor_indices(const TensorFactorization& f, Party p) {
    std::vector<int> idx;
    for (int i = 0; i < f.count(); ++i)
        if (f.at(i).party == p) idx.push_back(i);
    return idx;
}

}  // namespace

long operator_dim_cap() { return cap_storage(); }
void set_operator_dim_cap(long cap) {
    if (cap < 1) throw std::invalid_argument("set_operator_dim_cap: cap < 1");
    cap_storage() = cap;
}

Operator::Operator(ExactMat m, TensorFactorization f) : fact_(std::move(f)), m_(std::move(m)) {
    const ExactMat& mat = std::get<ExactMat>(m_);
    check_dims(fact_, mat.dim());
    for (long i = 0; i < mat.dim(); ++i)
        for (long j = i; j < mat.dim(); ++j)
            if (mat(i, j) != mat(j, i).conj())
                throw std::invalid_argument("Operator: entries are not Hermitian (exact)");
}

Operator::Operator(FloatMat m, TensorFactorization f) : fact_(std::move(f)), m_(std::move(m)) {
    const FloatMat& mat = std::get<FloatMat>(m_);
    check_dims(fact_, mat.dim());
    for (long i = 0; i < mat.dim(); ++i)
        for (long j = i; j < mat.dim(); ++j)
            if (std::abs(mat(i, j) - std::conj(mat(j, i))) > kHermTol)
                throw std::invalid_argument("Operator: entries are not Hermitian within 1e-12");
}

long Operator::dim() const {
    return mode() == ScalarMode::Exact ? std::get<ExactMat>(m_).dim() : std::get<FloatMat>(m_).dim();
}

const ExactMat& Operator::exact() const {
    if (mode() != ScalarMode::Exact) throw ModeError("Operator: not in exact mode");
    return std::get<ExactMat>(m_);
}

const FloatMat& Operator::floating() const {
    if (mode() != ScalarMode::Float) throw ModeError("Operator: not in float mode");
    return std::get<FloatMat>(m_);
}

bool operator==(const Operator& a, const Operator& b) {
    if (a.mode() != b.mode() || a.factorization() != b.factorization()) return false;
    return a.mode() == ScalarMode::Exact ? a.exact() == b.exact() : a.floating() == b.floating();
}

Operator identity_operator(const TensorFactorization& f, ScalarMode mode) {
    const long n = f.total_dim();
    if (mode == ScalarMode::Exact) {
        ExactMat m(n);
        for (long i = 0; i < n; ++i) m(i, i) = CRat(Rat(1));
        return Operator(std::move(m), f);
    }
    FloatMat m(n);
    for (long i = 0; i < n; ++i) m(i, i) = Cx(1.0, 0.0);
    return Operator(std::move(m), f);
}

Operator zero_operator(const TensorFactorization& f, ScalarMode mode) {
    const long n = f.total_dim();
    if (mode == ScalarMode::Exact) return Operator(ExactMat(n), f);
    return Operator(FloatMat(n), f);
}

Operator to_float(const Operator& m) {
    if (m.mode() == ScalarMode::Float) return m;
    return Operator(to_float_mat(m.exact()), m.factorization());
}

Operator add(const Operator& a, const Operator& b) {
    require_same_mode(a, b, "add");
    if (a.factorization() != b.factorization())
        throw std::invalid_argument("add: factorization mismatch");
    if (a.mode() == ScalarMode::Exact)
        return Operator(add_mat(a.exact(), b.exact()), a.factorization());
    return Operator(add_mat(a.floating(), b.floating()), a.factorization());
}

Operator sub(const Operator& a, const Operator& b) {
    require_same_mode(a, b, "sub");
    if (a.factorization() != b.factorization())
        throw std::invalid_argument("sub: factorization mismatch");
    if (a.mode() == ScalarMode::Exact)
        return Operator(sub_mat(a.exact(), b.exact()), a.factorization());
    return Operator(sub_mat(a.floating(), b.floating()), a.factorization());
}

Operator scale(const Rat& s, const Operator& m) {
    return Operator(scale_mat(CRat(s), m.exact()), m.factorization());
}

Operator scale(double s, const Operator& m) {
    return Operator(scale_mat(Cx(s, 0.0), m.floating()), m.factorization());
}

Operator kron(const Operator& a, const Operator& b) {
    require_same_mode(a, b, "kron");
    TensorFactorization f = a.factorization().concat(b.factorization());
    if (a.mode() == ScalarMode::Exact)
        return Operator(kron_mat(a.exact(), b.exact()), std::move(f));
    return Operator(kron_mat(a.floating(), b.floating()), std::move(f));
}

Operator partial_transpose(const Operator& m) { return partial_transpose(m, Party::A); }

Operator partial_transpose(const Operator& m, Party party) {
    return partial_transpose(m, party_factor_indices(m.factorization(), party));
}

Operator partial_transpose(const Operator& m, const std::vector<int>& selected_factors) {
    if (m.mode() == ScalarMode::Exact)
        return Operator(partial_transpose_mat(m.exact(), m.factorization(), selected_factors),
                        m.factorization());
    return Operator(partial_transpose_mat(m.floating(), m.factorization(), selected_factors),
                    m.factorization());
}

Operator partial_trace(const Operator& m, Party party) {
    if (m.mode() == ScalarMode::Exact) {
        auto [mat, f] = partial_trace_mat(m.exact(), m.factorization(), party);
        return Operator(std::move(mat), std::move(f));
    }
    auto [mat, f] = partial_trace_mat(m.floating(), m.factorization(), party);
    return Operator(std::move(mat), std::move(f));
}

Scalar trace(const Operator& m) {
    if (m.mode() == ScalarMode::Exact) return Scalar(trace_mat(m.exact()));
    return Scalar(trace_mat(m.floating()));
}

Scalar inner_product(const Operator& a, const Operator& b) {
    require_same_mode(a, b, "inner_product");
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    if (a.mode() == ScalarMode::Exact) return Scalar(inner_product_mat(a.exact(), b.exact()));
    return Scalar(inner_product_mat(a.floating(), b.floating()));
}

Operator permute_to_cut(const Operator& m) {
    const TensorFactorization& f = m.factorization();
    if (!f.is_interleaved())
        throw std::invalid_argument("permute_to_cut: factorization is not interleaved (A1,B1,...)");
    const int t = f.count() / 2;
    std::vector<int> perm;
    perm.reserve(static_cast<size_t>(f.count()));
    for (int i = 0; i < t; ++i) perm.push_back(2 * i);
    for (int i = 0; i < t; ++i) perm.push_back(2 * i + 1);
    if (m.mode() == ScalarMode::Exact)
        return Operator(permute_factors_mat(m.exact(), f, perm), f.permuted(perm));
    return Operator(permute_factors_mat(m.floating(), f, perm), f.permuted(perm));
}

double min_eigenvalue(const Operator& m) {
    if (m.mode() != ScalarMode::Float)
        throw ModeError("min_eigenvalue: float mode required (use to_float)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m.floating()),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("min_eigenvalue: eigensolver failed");
    return es.eigenvalues()(0);
}

PsdResult is_psd(const Operator& m) {
    if (m.mode() != ScalarMode::Exact)
        throw ModeError("is_psd (exact): exact mode required; pass a tolerance for float mode");
    ExactPsdResult r = exact_psd_check(m.exact());
    PsdResult out;
    out.psd = r.psd;
    out.exact_witness = std::move(r.witness);
    return out;
}

PsdResult is_psd(const Operator& m, double eps) {
    if (eps < 0) throw std::invalid_argument("is_psd: negative tolerance");
    const Operator f = to_float(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(f.floating()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("is_psd: eigensolver failed");
    PsdResult out;
    out.min_eig = es.eigenvalues()(0);
    out.psd = out.min_eig >= -eps;
    if (!out.psd) {
        const auto v = es.eigenvectors().col(0);
        out.float_witness.assign(v.data(), v.data() + v.size());
    }
    return out;
}

bool is_zero_operator(const Operator& m) {
    if (m.mode() == ScalarMode::Exact) {
        for (const CRat& x : m.exact().data())
            if (!x.is_zero()) return false;
        return true;
    }
    for (const Cx& x : m.floating().data())
        if (x != Cx(0.0, 0.0)) return false;
    return true;
}

double max_entry_distance(const Operator& a, const Operator& b) {
    require_same_mode(a, b, "max_entry_distance");
    if (a.dim() != b.dim()) throw std::invalid_argument("max_entry_distance: dimension mismatch");
    double worst = 0.0;
    if (a.mode() == ScalarMode::Exact) {
        for (size_t i = 0; i < a.exact().data().size(); ++i) {
            CRat d = a.exact().data()[i] - b.exact().data()[i];
            worst = std::max(worst, std::sqrt(abs2_of(d)));
        }
    } else {
        for (size_t i = 0; i < a.floating().data().size(); ++i)
            worst = std::max(worst, std::abs(a.floating().data()[i] - b.floating().data()[i]));
    }
    return worst;
}

}  // namespace pptd
