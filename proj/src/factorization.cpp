#include "pptd/factorization.hpp"

namespace pptd {

std::vector<int> decode_index(long idx, const TensorFactorization& f) {
    std::vector<int> digits(static_cast<size_t>(f.count()));
    for (int i = f.count() - 1; i >= 0; --i) {
        int d = f.at(i).dim;
        digits[static_cast<size_t>(i)] = static_cast<int>(idx % d);
        idx /= d;
    }
    return digits;
}

long encode_index(const std::vector<int>& digits, const TensorFactorization& f) {
    if (static_cast<int>(digits.size()) != f.count())
        throw std::invalid_argument("encode_index: digit count mismatch");
    long idx = 0;
    for (int i = 0; i < f.count(); ++i) {
        idx = idx * f.at(i).dim + digits[static_cast<size_t>(i)];
    }
    return idx;
}

}  // namespace pptd
