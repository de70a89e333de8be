#pragma once

// Tensor-product bookkeeping for bipartite operators.
//
// A factorization is an ordered list of local factors, each tagged with the
// party (A or B) that holds it. The order is significant: constructed state
// sets use the interleaved order (A1,B1,A2,B2,...), and permute_to_cut
// re-indexes to the grouped order (A1,...,At,B1,...,Bt) where the
// maximal-entanglement check across the A|B cut is natural.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pptd {

enum class Party : uint8_t { A, B };

inline const char* to_string(Party p) { return p == Party::A ? "A" : "B"; }

struct Factor {
    int dim;
    Party party;

    friend bool operator==(const Factor& a, const Factor& b) {
        return a.dim == b.dim && a.party == b.party;
    }
};

class TensorFactorization {
public:
    TensorFactorization() = default;

    explicit TensorFactorization(std::vector<Factor> factors) : factors_(std::move(factors)) {
        for (const Factor& f : factors_) {
            if (f.dim < 1) throw std::invalid_argument("TensorFactorization: factor dim < 1");
        }
    }

    // Single bipartite pair (A:d, B:d).
    static TensorFactorization pair(int d) {
        return TensorFactorization({{d, Party::A}, {d, Party::B}});
    }

    const std::vector<Factor>& factors() const { return factors_; }
    int count() const { return static_cast<int>(factors_.size()); }
    const Factor& at(int i) const { return factors_.at(static_cast<size_t>(i)); }

    long total_dim() const {
        long n = 1;
        for (const Factor& f : factors_) n *= f.dim;
        return n;
    }

    long party_dim(Party p) const {
        long n = 1;
        for (const Factor& f : factors_)
            if (f.party == p) n *= f.dim;
        return n;
    }

    bool has_party(Party p) const {
        for (const Factor& f : factors_)
            if (f.party == p) return true;
        return false;
    }

    // Interleaved form: nonempty even-length alternation A,B,A,B,...
    bool is_interleaved() const {
        if (factors_.empty() || factors_.size() % 2 != 0) return false;
        for (size_t i = 0; i < factors_.size(); ++i) {
            Party expect = (i % 2 == 0) ? Party::A : Party::B;
            if (factors_[i].party != expect) return false;
        }
        return true;
    }

    TensorFactorization concat(const TensorFactorization& other) const {
        std::vector<Factor> fs = factors_;
        fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
        return TensorFactorization(std::move(fs));
    }

    // Factor order after applying a permutation: result factor i is factors()[perm[i]].
    TensorFactorization permuted(const std::vector<int>& perm) const {
        if (perm.size() != factors_.size())
            throw std::invalid_argument("TensorFactorization: permutation size mismatch");
        std::vector<Factor> fs;
        fs.reserve(perm.size());
        for (int src : perm) fs.push_back(at(src));
        return TensorFactorization(std::move(fs));
    }

    friend bool operator==(const TensorFactorization& a, const TensorFactorization& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator!=(const TensorFactorization& a, const TensorFactorization& b) {
        return !(a == b);
    }

private:
    std::vector<Factor> factors_;
};

// Row-major multi-index helpers. Index i over the full space decomposes into
// per-factor digits with the first factor most significant.
std::vector<int> decode_index(long idx, const TensorFactorization& f);
long encode_index(const std::vector<int>& digits, const TensorFactorization& f);

}  // namespace pptd
