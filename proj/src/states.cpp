#include "pptd/states.hpp"

#include <cmath>
#include <numbers>

namespace pptd {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kCheckTol = 1e-10;

Rat half() { return make_rat(1, 2); }

// Groups all A factors before all B factors, preserving relative order.
Operator group_parties(const Operator& m) {
    const TensorFactorization& f = m.factorization();
    std::vector<int> perm;
    for (int i = 0; i < f.count(); ++i)
        if (f.at(i).party == Party::A) perm.push_back(i);
    for (int i = 0; i < f.count(); ++i)
        if (f.at(i).party == Party::B) perm.push_back(i);
    bool already = true;
    for (size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i)) already = false;
    if (already) return m;
    if (m.mode() == ScalarMode::Exact)
        return Operator(permute_factors_mat(m.exact(), f, perm), f.permuted(perm));
    return Operator(permute_factors_mat(m.floating(), f, perm), f.permuted(perm));
}

bool reduced_is_maximally_mixed(const Operator& grouped, Party traced) {
    const Operator red = partial_trace(grouped, traced);
    const long d = red.dim();
    if (red.mode() == ScalarMode::Exact) {
        const Rat expect = Rat(1) / Rat(static_cast<long>(d));
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                const CRat& x = red.exact()(i, j);
                if (i == j ? (x != CRat(expect)) : !x.is_zero()) return false;
            }
        return true;
    }
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            Cx expect = (i == j) ? Cx(1.0 / static_cast<double>(d), 0.0) : Cx(0.0, 0.0);
            if (std::abs(red.floating()(i, j) - expect) > kCheckTol) return false;
        }
    return true;
}

}  // namespace

PureState::PureState(std::vector<CRat> amps, TensorFactorization f)
    : fact_(std::move(f)), amps_(std::move(amps)) {
    const auto& a = std::get<std::vector<CRat>>(amps_);
    if (static_cast<long>(a.size()) != fact_.total_dim())
        throw std::invalid_argument("PureState: amplitude count != factorization dim");
    Rat n2(0);
    for (const CRat& x : a) n2 += x.norm2();
    if (n2 != 1) throw std::invalid_argument("PureState: squared norm != 1 (exact)");
}

PureState::PureState(std::vector<Cx> amps, TensorFactorization f)
    : fact_(std::move(f)), amps_(std::move(amps)) {
    const auto& a = std::get<std::vector<Cx>>(amps_);
    if (static_cast<long>(a.size()) != fact_.total_dim())
        throw std::invalid_argument("PureState: amplitude count != factorization dim");
    double n2 = 0;
    for (const Cx& x : a) n2 += std::norm(x);
    if (std::abs(n2 - 1.0) > kNormTol)
        throw std::invalid_argument("PureState: squared norm != 1 within 1e-12");
}

long PureState::dim() const { return fact_.total_dim(); }

const std::vector<CRat>& PureState::exact_amplitudes() const {
    if (mode() != ScalarMode::Exact) throw ModeError("PureState: not in exact mode");
    return std::get<std::vector<CRat>>(amps_);
}

const std::vector<Cx>& PureState::float_amplitudes() const {
    if (mode() != ScalarMode::Float) throw ModeError("PureState: not in float mode");
    return std::get<std::vector<Cx>>(amps_);
}

Operator PureState::density() const {
    const long n = dim();
    if (mode() == ScalarMode::Exact) {
        const auto& a = exact_amplitudes();
        ExactMat m(n);
        for (long i = 0; i < n; ++i) {
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            for (long j = 0; j < n; ++j) {
                if (a[static_cast<size_t>(j)].is_zero()) continue;
                m(i, j) = a[static_cast<size_t>(i)] * conj_of(a[static_cast<size_t>(j)]);
            }
        }
        return Operator(std::move(m), fact_);
    }
    const auto& a = float_amplitudes();
    FloatMat m(n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            m(i, j) = a[static_cast<size_t>(i)] * std::conj(a[static_cast<size_t>(j)]);
    return Operator(std::move(m), fact_);
}

const std::vector<int>& bell_pattern(int i) {
    static const std::vector<int> patterns[4] = {
        {1, 0, 0, 1},    // (|00> + |11>)/sqrt2
        {0, 1, 1, 0},    // (|01> + |10>)/sqrt2
        {0, 1, -1, 0},   // (|01> - |10>)/sqrt2
        {1, 0, 0, -1},   // (|00> - |11>)/sqrt2
    };
    if (i < 0 || i > 3) throw std::invalid_argument("bell_pattern: index out of range");
    return patterns[i];
}

Operator bell_density(int i) {
    if (i < 0 || i > 3) throw std::invalid_argument("bell_density: index out of range");
    const std::vector<int>& p = bell_pattern(i);
    ExactMat m(4);
    for (long r = 0; r < 4; ++r) {
        if (p[static_cast<size_t>(r)] == 0) continue;
        for (long c = 0; c < 4; ++c) {
            if (p[static_cast<size_t>(c)] == 0) continue;
            m(r, c) = CRat(half() * p[static_cast<size_t>(r)] * p[static_cast<size_t>(c)]);
        }
    }
    return Operator(std::move(m), TensorFactorization::pair(2));
}

PureState generalized_bell(int d, int a, int b) {
    if (d < 2) throw std::invalid_argument("generalized_bell: d < 2");
    if (a < 0 || a >= d || b < 0 || b >= d)
        throw std::invalid_argument("generalized_bell: shift/phase index out of range");
    std::vector<Cx> amps(static_cast<size_t>(d) * static_cast<size_t>(d));
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        const double phase = 2.0 * std::numbers::pi * b * k / d;
        amps[static_cast<size_t>(k * d + (k + a) % d)] =
            Cx(std::cos(phase) * inv_sqrt_d, std::sin(phase) * inv_sqrt_d);
    }
    return PureState(std::move(amps), TensorFactorization::pair(d));
}

std::vector<int> bell_indices_of(int t, int j) {
    if (t < 2) throw std::invalid_argument("bell_indices_of: t < 2");
    if (j < 1 || j > (1 << t)) throw std::invalid_argument("bell_indices_of: j out of range");
    static const int base[4][2] = {{0, 0}, {1, 1}, {2, 1}, {3, 1}};
    std::vector<int> prefix;
    while (t > 2) {
        const int half_count = 1 << (t - 1);
        if (j <= half_count) {
            prefix.push_back(0);
        } else {
            prefix.push_back(1);
            j -= half_count;
        }
        --t;
    }
    prefix.push_back(base[j - 1][0]);
    prefix.push_back(base[j - 1][1]);
    return prefix;
}

Operator recursive_state(int t, int j) {
    const std::vector<int> idx = bell_indices_of(t, j);
    Operator state = bell_density(idx[0]);
    for (size_t l = 1; l < idx.size(); ++l) state = kron(state, bell_density(idx[l]));
    return state;
}

StateSet yu_set() { return recursive_set(2, 4); }

StateSet recursive_set(int t, int k) {
    if (t < 2) throw std::invalid_argument("recursive_set: t < 2");
    if (k < 1 || k > (1 << t)) throw std::invalid_argument("recursive_set: k out of range");
    std::vector<int> indices(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) indices[static_cast<size_t>(j)] = j + 1;
    return recursive_set(t, indices);
}

StateSet recursive_set(int t, const std::vector<int>& indices) {
    if (t < 2) throw std::invalid_argument("recursive_set: t < 2");
    if (indices.empty()) throw std::invalid_argument("recursive_set: empty index list");
    StateSet set;
    set.t = t;
    set.d = 1 << t;
    for (int j : indices) set.states.push_back(recursive_state(t, j));
    const Rat p = Rat(1) / Rat(static_cast<long>(indices.size()));
    set.priors.assign(indices.size(), p);
    return set;
}

bool is_maximally_entangled(const Operator& density) {
    const Operator grouped = group_parties(density);
    const long da = grouped.factorization().party_dim(Party::A);
    const long db = grouped.factorization().party_dim(Party::B);
    if (da != db) throw std::invalid_argument("is_maximally_entangled: unbalanced cut");

    // Purity: trace(rho^2) = 1.
    const Scalar purity = inner_product(grouped, grouped);
    if (grouped.mode() == ScalarMode::Exact) {
        if (purity.exact() != CRat(Rat(1))) return false;
    } else if (std::abs(purity.floating() - Cx(1.0, 0.0)) > kCheckTol) {
        return false;
    }

    return reduced_is_maximally_mixed(grouped, Party::A) &&
           reduced_is_maximally_mixed(grouped, Party::B);
}

bool is_maximally_entangled(const PureState& psi) {
    return is_maximally_entangled(psi.density());
}

bool check_orthonormal(const StateSet& set) {
    if (set.states.empty()) throw std::invalid_argument("check_orthonormal: empty set");
    const int k = set.k();
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            const Scalar ip = inner_product(set.states[static_cast<size_t>(i)],
                                            set.states[static_cast<size_t>(j)]);
            if (ip.mode() == ScalarMode::Exact) {
                const CRat expect(Rat(i == j ? 1 : 0));
                if (ip.exact() != expect) return false;
            } else {
                const Cx expect(i == j ? 1.0 : 0.0, 0.0);
                if (std::abs(ip.floating() - expect) > kCheckTol) return false;
            }
        }
    return true;
}

}  // namespace pptd
