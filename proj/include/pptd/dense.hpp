#pragma once

// Dense square matrices templated on the complex scalar type, plus the
// structural tensor operations (kron, partial transpose, partial trace,
// factor permutation) shared by the exact and float modes.
//
// Entries are stored row-major. Zero entries are skipped in the hot loops;
// the constructed Bell-product operators are sparse and this keeps exact
// arithmetic cheap at dimension 256 and above.

#include <stdexcept>
#include <vector>

#include "pptd/factorization.hpp"
#include "pptd/rational.hpp"

namespace pptd {

template <typename T>
class Dense {
public:
    Dense() : n_(0) {}
    explicit Dense(long n) : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n)) {
        if (n < 1) throw std::invalid_argument("Dense: dim < 1");
    }

    long dim() const { return n_; }

    T& operator()(long i, long j) { return a_[static_cast<size_t>(i * n_ + j)]; }
    const T& operator()(long i, long j) const { return a_[static_cast<size_t>(i * n_ + j)]; }

    std::vector<T>& data() { return a_; }
    const std::vector<T>& data() const { return a_; }

    friend bool operator==(const Dense& x, const Dense& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    long n_;
    std::vector<T> a_;
};

using ExactMat = Dense<CRat>;
using FloatMat = Dense<Cx>;

template <typename T>
Dense<T> kron_mat(const Dense<T>& a, const Dense<T>& b) {
    const long na = a.dim(), nb = b.dim();
    Dense<T> out(na * nb);
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < na; ++j) {
            const T& aij = a(i, j);
            if (is_zero(aij)) continue;
            for (long p = 0; p < nb; ++p)
                for (long q = 0; q < nb; ++q) {
                    const T& bpq = b(p, q);
                    if (is_zero(bpq)) continue;
                    out(i * nb + p, j * nb + q) = aij * bpq;
                }
        }
    return out;
}

template <typename T>
T trace_mat(const Dense<T>& m) {
    T s{};
    for (long i = 0; i < m.dim(); ++i) s += m(i, i);
    return s;
}

// Tr(a^dagger b) = sum_ij conj(a_ij) b_ij.
template <typename T>
T inner_product_mat(const Dense<T>& a, const Dense<T>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    T s{};
    const long n = a.dim();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const T& x = a(i, j);
            if (is_zero(x)) continue;
            const T& y = b(i, j);
            if (is_zero(y)) continue;
            s += conj_of(x) * y;
        }
    return s;
}

template <typename T>
Dense<T> add_mat(const Dense<T>& a, const Dense<T>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
    Dense<T> out = a;
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

template <typename T>
Dense<T> sub_mat(const Dense<T>& a, const Dense<T>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sub: dimension mismatch");
    Dense<T> out = a;
    for (size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

template <typename T, typename S>
Dense<T> scale_mat(const S& s, const Dense<T>& m) {
    Dense<T> out = m;
    for (T& x : out.data())
        if (!is_zero(x)) x = s * x;
    return out;
}

// Transposes the factors whose indices appear in `selected` (sorted or not),
// leaving the others fixed: out(i, j) = in(i', j') where the selected digits
// of i and j are exchanged.
template <typename T>
Dense<T> partial_transpose_mat(const Dense<T>& m, const TensorFactorization& f,
                               const std::vector<int>& selected) {
    const long n = m.dim();
    if (f.total_dim() != n) throw std::invalid_argument("partial_transpose: factorization mismatch");
    std::vector<bool> sel(static_cast<size_t>(f.count()), false);
    for (int s : selected) {
        if (s < 0 || s >= f.count())
            throw std::invalid_argument("partial_transpose: selector references nonexistent factor");
        sel[static_cast<size_t>(s)] = true;
    }

    // Precompute digit vectors once per index.
    std::vector<std::vector<int>> digits(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) digits[static_cast<size_t>(i)] = decode_index(i, f);

    Dense<T> out(n);
    std::vector<int> di, dj;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            di = digits[static_cast<size_t>(i)];
            dj = digits[static_cast<size_t>(j)];
            for (int t = 0; t < f.count(); ++t)
                if (sel[static_cast<size_t>(t)]) std::swap(di[static_cast<size_t>(t)], dj[static_cast<size_t>(t)]);
            const T& v = m(encode_index(di, f), encode_index(dj, f));
            if (!is_zero(v)) out(i, j) = v;
        }
    return out;
}

// Traces out every factor belonging to `party`; returns the reduced matrix
// and the factorization of the remaining factors.
template <typename T>
std::pair<Dense<T>, TensorFactorization> partial_trace_mat(const Dense<T>& m,
                                                           const TensorFactorization& f,
                                                           Party party) {
    if (!f.has_party(party)) throw std::invalid_argument("partial_trace: party has no factors");
    std::vector<Factor> kept_factors;
    std::vector<int> kept_pos, traced_pos;
    for (int i = 0; i < f.count(); ++i) {
        if (f.at(i).party == party) {
            traced_pos.push_back(i);
        } else {
            kept_pos.push_back(i);
            kept_factors.push_back(f.at(i));
        }
    }
    if (kept_factors.empty())
        throw std::invalid_argument("partial_trace: tracing out all factors (use trace)");

    TensorFactorization kept(std::move(kept_factors));
    std::vector<Factor> traced_factors;
    for (int i : traced_pos) traced_factors.push_back(f.at(i));
    TensorFactorization traced(std::move(traced_factors));

    const long nk = kept.total_dim();
    const long nt = traced.total_dim();
    Dense<T> out(nk);

    std::vector<int> full(static_cast<size_t>(f.count()));
    for (long a = 0; a < nk; ++a) {
        const std::vector<int> da = decode_index(a, kept);
        for (long b = 0; b < nk; ++b) {
            const std::vector<int> db = decode_index(b, kept);
            T s{};
            for (long c = 0; c < nt; ++c) {
                const std::vector<int> dc = decode_index(c, traced);
                for (size_t t = 0; t < kept_pos.size(); ++t) full[static_cast<size_t>(kept_pos[t])] = da[t];
                for (size_t t = 0; t < traced_pos.size(); ++t) full[static_cast<size_t>(traced_pos[t])] = dc[t];
                const long row = encode_index(full, f);
                for (size_t t = 0; t < kept_pos.size(); ++t) full[static_cast<size_t>(kept_pos[t])] = db[t];
                const long col = encode_index(full, f);
                const T& v = m(row, col);
                if (!is_zero(v)) s += v;
            }
            out(a, b) = s;
        }
    }
    return {std::move(out), std::move(kept)};
}

// Re-indexes the matrix so that result factor t is input factor perm[t].
template <typename T>
Dense<T> permute_factors_mat(const Dense<T>& m, const TensorFactorization& f,
                             const std::vector<int>& perm) {
    const long n = m.dim();
    TensorFactorization g = f.permuted(perm);
    std::vector<long> map(static_cast<size_t>(n));
    std::vector<int> dg(static_cast<size_t>(f.count()));
    for (long i = 0; i < n; ++i) {
        const std::vector<int> di = decode_index(i, g);
        for (size_t t = 0; t < di.size(); ++t) dg[static_cast<size_t>(perm[t])] = di[t];
        map[static_cast<size_t>(i)] = encode_index(dg, f);
    }
    Dense<T> out(n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const T& v = m(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]);
            if (!is_zero(v)) out(i, j) = v;
        }
    return out;
}

inline FloatMat to_float_mat(const ExactMat& m) {
    FloatMat out(m.dim());
    for (long i = 0; i < m.dim(); ++i)
        for (long j = 0; j < m.dim(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = m(i, j).to_cx();
    return out;
}

}  // namespace pptd
