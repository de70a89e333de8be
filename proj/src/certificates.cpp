#include "pptd/certificates.hpp"

namespace pptd {

namespace {

Operator bell_sum(std::initializer_list<int> indices) {
    Operator acc = zero_operator(TensorFactorization::pair(2));
    for (int i : indices) acc = add(acc, bell_density(i));
    return acc;
}

// The four base Q blocks, each (1/2)[L (x) R_left + L' (x) R_right].
Operator base_q(int r) {
    const Rat h = make_rat(1, 2);
    switch (r) {
        case 1:
            return scale(h, add(kron(bell_sum({0, 1, 3}), bell_density(2)),
                                kron(bell_density(2), bell_sum({0, 1}))));
        case 2:
            return scale(h, add(kron(bell_sum({0, 1}), bell_density(3)),
                                kron(bell_density(3), bell_sum({0, 1, 2}))));
        case 3:
            return scale(h, add(kron(bell_sum({1, 3}), bell_density(3)),
                                kron(bell_density(0), bell_sum({0, 1, 2}))));
        case 4:
            return scale(h, add(kron(bell_sum({0, 3}), bell_density(3)),
                                kron(bell_density(1), bell_sum({0, 1, 2}))));
        default:
            throw std::invalid_argument("base_q: index out of range");
    }
}

}  // namespace

DualCertificate base_certificate() {
    const TensorFactorization f4 = TensorFactorization::pair(2).concat(TensorFactorization::pair(2));
    const Operator id = identity_operator(f4);
    const Operator y = sub(scale(make_rat(1, 4), id),
                           scale(make_rat(1, 2), partial_transpose(kron(bell_density(2), bell_density(3)))));
    DualCertificate cert{y, {}, 2, 4};
    for (int r = 1; r <= 4; ++r) cert.Q.push_back(base_q(r));
    return cert;
}

DualCertificate recursive_certificate(int t, int k, BaseIndexMapping mapping) {
    if (t < 2) throw std::invalid_argument("recursive_certificate: t < 2");
    if (k < 1 || k > (1 << t)) throw std::invalid_argument("recursive_certificate: k out of range");

    const DualCertificate base = base_certificate();
    if (t == 2) {
        DualCertificate cert{base.Y, {}, 2, k};
        for (int j = 1; j <= k; ++j) {
            const int r = mapping == BaseIndexMapping::Cyclic ? ((j - 1) % 4) + 1 : (j % 4) + 1;
            cert.Q.push_back(base.Q[static_cast<size_t>(r - 1)]);
        }
        return cert;
    }

    Operator prefix = add(bell_density(0), bell_density(1));
    for (int l = 0; l < t - 3; ++l) prefix = kron(prefix, add(bell_density(0), bell_density(1)));

    DualCertificate cert{kron(prefix, base.Y), {}, t, k};
    for (int j = 1; j <= k; ++j) {
        const int r = mapping == BaseIndexMapping::Cyclic ? ((j - 1) % 4) + 1 : (j % 4) + 1;
        cert.Q.push_back(kron(prefix, base.Q[static_cast<size_t>(r - 1)]));
    }
    return cert;
}

VerificationReport verify(const StateSet& set, const DualCertificate& cert) {
    if (set.k() != cert.k || set.k() != static_cast<int>(cert.Q.size()))
        throw std::invalid_argument("verify: ensemble size does not match certificate");
    if (cert.Y.mode() != ScalarMode::Exact)
        throw ModeError("verify: exact-only, certificate must be in exact mode");

    VerificationReport report;
    report.feasible = true;
    report.objective = trace(cert.Y).exact().re / Rat(static_cast<long>(cert.k));
    report.slack_psd.resize(static_cast<size_t>(cert.k), false);

    for (int j = 0; j < cert.k; ++j) {
        const Operator& rho = set.states[static_cast<size_t>(j)];
        const Operator& q = cert.Q[static_cast<size_t>(j)];
        if (rho.mode() != ScalarMode::Exact)
            throw ModeError("verify: exact-only, states must be in exact mode");
        if (rho.dim() != cert.Y.dim() || q.dim() != cert.Y.dim())
            throw std::invalid_argument("verify: dimension mismatch");

        PsdResult q_psd = is_psd(q);
        if (!q_psd.psd) {
            report.feasible = false;
            report.failures.push_back({j, "Q_psd", std::move(q_psd.exact_witness)});
        }

        PsdResult slack_psd = is_psd(sub(sub(cert.Y, rho), partial_transpose(q)));
        report.slack_psd[static_cast<size_t>(j)] = slack_psd.psd;
        if (!slack_psd.psd) {
            report.feasible = false;
            report.failures.push_back({j, "slack_psd", std::move(slack_psd.exact_witness)});
        }
    }
    return report;
}

Rat certificate_objective(const DualCertificate& cert, int k) {
    if (k < 1) throw std::invalid_argument("certificate_objective: k < 1");
    return trace(cert.Y).exact().re / Rat(static_cast<long>(k));
}

}  // namespace pptd
