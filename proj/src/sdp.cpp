#include "pptd/sdp.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/Dense>

namespace pptd {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

constexpr double kDensityTol = 1e-10;
constexpr double kPriorTol = 1e-12;
constexpr long kCheckEvery = 25;

MatrixXcd to_eigen(const Operator& op) {
    const Operator f = to_float(op);
    const long n = f.dim();
    MatrixXcd e(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) e(i, j) = f.floating()(i, j);
    return e;
}

bool is_real(const Operator& op) {
    if (op.mode() == ScalarMode::Exact) {
        for (const CRat& x : op.exact().data())
            if (sgn(x.im) != 0) return false;
        return true;
    }
    for (const Cx& x : op.floating().data())
        if (x.imag() != 0.0) return false;
    return true;
}

Operator to_operator(const MatrixXcd& m, const TensorFactorization& f) {
    FloatMat out(m.rows());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return Operator(std::move(out), f);
}

Operator to_operator(const MatrixXd& m, const TensorFactorization& f) {
    FloatMat out(m.rows());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = Cx(0.5 * (m(i, j) + m(j, i)), 0.0);
    return Operator(std::move(out), f);
}

// Entry map realizing the partial transpose over the A factors: the image
// of (i, j) reads from (src_row, src_col).
struct TransposeMap {
    long n = 0;
    std::vector<long> src_row, src_col;

    explicit TransposeMap(const TensorFactorization& f) : n(f.total_dim()) {
        src_row.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
        src_col.resize(src_row.size());
        std::vector<std::vector<int>> digits(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) digits[static_cast<size_t>(i)] = decode_index(i, f);
        std::vector<int> di, dj;
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                di = digits[static_cast<size_t>(i)];
                dj = digits[static_cast<size_t>(j)];
                for (int t = 0; t < f.count(); ++t)
                    if (f.at(t).party == Party::A)
                        std::swap(di[static_cast<size_t>(t)], dj[static_cast<size_t>(t)]);
                const size_t idx = static_cast<size_t>(i * n + j);
                src_row[idx] = encode_index(di, f);
                src_col[idx] = encode_index(dj, f);
            }
    }

    template <typename Mat>
    Mat apply(const Mat& m) const {
        Mat out(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                const size_t idx = static_cast<size_t>(i * n + j);
                out(i, j) = m(src_row[idx], src_col[idx]);
            }
        return out;
    }
};

template <typename Mat>
Mat psd_clip(const Mat& m) {
    const Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Mat>
double lambda_min(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

template <typename Mat>
double objective_term(const Mat& c, const Mat& x) {
    return Eigen::numext::real((c.conjugate().cwiseProduct(x)).sum());
}

template <typename Mat>
double spectral_norm_hermitian(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues()(0)),
                    std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
}

// Applies fn(j) for j in [0, k) across a small fixed set of workers. Each
// block is independent, so the result does not depend on scheduling.
void parallel_blocks(int k, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || k == 1) {
        for (int j = 0; j < k; ++j) fn(j);
        return;
    }
    workers = std::min(workers, k);
    std::vector<std::future<void>> futs;
    futs.reserve(static_cast<size_t>(workers - 1));
    for (int w = 1; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (int j = w; j < k; j += workers) fn(j);
        }));
    for (int j = 0; j < k; j += workers) fn(j);
    for (std::future<void>& f : futs) f.get();
}

std::string validate_instance(const DiscriminationInstance& inst) {
    if (inst.states.empty()) return "no states";
    if (inst.priors.size() != inst.states.size()) return "prior count != state count";
    const TensorFactorization& f = inst.states.front().factorization();
    double prior_sum = 0.0;
    for (const Rat& p : inst.priors) {
        if (sgn(p) <= 0) return "priors must be strictly positive";
        prior_sum += p.get_d();
    }
    if (std::abs(prior_sum - 1.0) > kPriorTol) return "priors do not sum to 1";
    for (const Operator& s : inst.states) {
        if (s.factorization() != f) return "states do not share one factorization";
        const double tr = trace(to_float(s)).floating().real();
        if (std::abs(tr - 1.0) > kDensityTol) return "state trace != 1";
        if (lambda_min(to_eigen(s)) < -kDensityTol) return "state is not PSD";
    }
    return {};
}

template <typename Mat>
SolverResult run_splitting(const std::vector<Mat>& c, const TensorFactorization& fact,
                           const SolverConfig& config) {
    const int k = static_cast<int>(c.size());
    const long n = c.front().rows();
    const TransposeMap pt(fact);
    const double tau = config.step > 0.0 ? config.step : static_cast<double>(n) / k;
    const Mat id = Mat::Identity(n, n);

    // Deterministic feasible start: P_j = 1/k, R_j = T_A(1/k) = 1/k.
    std::vector<Mat> zP(static_cast<size_t>(k), Mat(id / k)), zR(static_cast<size_t>(k), Mat(id / k));
    std::vector<Mat> xP(static_cast<size_t>(k)), xR(static_cast<size_t>(k));
    std::vector<Mat> yP(static_cast<size_t>(k)), yR(static_cast<size_t>(k));

    if (config.perturb > 0.0) {
        std::mt19937 rng(config.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int j = 0; j < k; ++j) {
            Eigen::MatrixXd noise(n, n);
            for (long r = 0; r < n; ++r)
                for (long col = 0; col < n; ++col) noise(r, col) = u(rng);
            const Mat sym =
                (0.5 * config.perturb * (noise + noise.transpose())).cast<typename Mat::Scalar>();
            zP[static_cast<size_t>(j)] += sym;
            zR[static_cast<size_t>(j)] += pt.apply(sym);
        }
    }

    SolverResult result;
    double prev_value = 0.0;
    bool have_prev = false;

    // Worker threads only pay off once the eigendecompositions dominate.
    const int workers =
        n >= 32 ? std::max(1, static_cast<int>(std::thread::hardware_concurrency())) : 1;

    for (long iter = 1; iter <= config.max_iter; ++iter) {
        // (b) ascent step + affine projection: average each P block with the
        // back-transposed R block, then distribute the completeness defect.
        parallel_blocks(k, workers, [&](int j) {
            const size_t sj = static_cast<size_t>(j);
            xP[sj] = 0.5 * (zP[sj] + tau * c[sj] + pt.apply(zR[sj]));
        });
        Mat defect = -id;
        for (int j = 0; j < k; ++j) defect += xP[static_cast<size_t>(j)];
        defect /= static_cast<double>(k);

        // (a) PSD projection of the reflected point, then the over-relaxed
        // update; each block is independent.
        parallel_blocks(k, workers, [&](int j) {
            const size_t sj = static_cast<size_t>(j);
            xP[sj] -= defect;
            xR[sj] = pt.apply(xP[sj]);
            yP[sj] = psd_clip<Mat>(2.0 * xP[sj] - zP[sj]);
            yR[sj] = psd_clip<Mat>(2.0 * xR[sj] - zR[sj]);
            zP[sj] += config.alpha * (yP[sj] - xP[sj]);
            zR[sj] += config.alpha * (yR[sj] - xR[sj]);
        });

        result.iterations = iter;
        if (iter % kCheckEvery != 0 && iter != config.max_iter) continue;

        double value = 0.0;
        Mat completeness = -id;
        double cone = 0.0;
        double fixed_point = 0.0;
        for (int j = 0; j < k; ++j) {
            const size_t sj = static_cast<size_t>(j);
            value += objective_term(c[sj], xP[sj]);
            completeness += xP[sj];
            cone = std::max(cone, -lambda_min(xP[sj]));
            cone = std::max(cone, -lambda_min(xR[sj]));
            fixed_point = std::max(fixed_point, (xP[sj] - yP[sj]).norm());
            fixed_point = std::max(fixed_point, (xR[sj] - yR[sj]).norm());
        }
        cone = std::max(cone, 0.0);
        const double drift = have_prev ? std::abs(value - prev_value) : 1.0;
        prev_value = value;
        have_prev = true;

        result.value = value;
        result.residuals.completeness = spectral_norm_hermitian(completeness);
        result.residuals.cone = cone;
        result.residuals.gap =
            std::max(fixed_point / (1.0 + std::sqrt(static_cast<double>(n))), drift);

        if (result.residuals.completeness <= config.eps_primal &&
            result.residuals.cone <= config.eps_dual && result.residuals.gap <= config.eps_gap) {
            result.status = SolveStatus::Converged;
            break;
        }
    }

    result.measurement.operators.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j)
        result.measurement.operators.push_back(to_operator(xP[static_cast<size_t>(j)], fact));
    return result;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIter: return "max_iter";
        case SolveStatus::InfeasibleInput: return "infeasible_input";
    }
    return "unknown";
}

DiscriminationInstance DiscriminationInstance::from_state_set(const StateSet& set) {
    DiscriminationInstance inst;
    inst.states = set.states;
    inst.priors = set.priors;
    return inst;
}

SolverResult solve(const DiscriminationInstance& instance, const SolverConfig& config) {
    if (config.alpha <= 0.0 || config.alpha >= 2.0)
        throw std::invalid_argument("solve: alpha must lie in (0, 2)");
    if (config.eps_primal <= 0 || config.eps_dual <= 0 || config.eps_gap <= 0)
        throw std::invalid_argument("solve: tolerances must be positive");

    SolverResult result;
    if (std::string msg = validate_instance(instance); !msg.empty()) {
        result.status = SolveStatus::InfeasibleInput;
        result.message = msg;
        return result;
    }

    const TensorFactorization& fact = instance.states.front().factorization();
    const long da = fact.party_dim(Party::A);
    const long db = fact.party_dim(Party::B);
    if (da > config.dim_cap || db > config.dim_cap)
        throw DimCapError("solve: local dimension " + std::to_string(std::max(da, db)) +
                          " exceeds cap " + std::to_string(config.dim_cap));

    const int k = instance.k();
    bool all_real = true;
    for (const Operator& s : instance.states) all_real = all_real && is_real(s);

    if (all_real) {
        std::vector<MatrixXd> c(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j)
            c[static_cast<size_t>(j)] = instance.priors[static_cast<size_t>(j)].get_d() *
                                        to_eigen(instance.states[static_cast<size_t>(j)]).real();
        return run_splitting<MatrixXd>(c, fact, config);
    }
    std::vector<MatrixXcd> c(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j)
        c[static_cast<size_t>(j)] = instance.priors[static_cast<size_t>(j)].get_d() *
                                    to_eigen(instance.states[static_cast<size_t>(j)]);
    return run_splitting<MatrixXcd>(c, fact, config);
}

double evaluate_primal(const Measurement& m, const DiscriminationInstance& instance) {
    if (m.operators.size() != instance.states.size())
        throw std::invalid_argument("evaluate_primal: operator count != state count");
    double value = 0.0;
    for (size_t j = 0; j < m.operators.size(); ++j) {
        const Scalar ip = inner_product(m.operators[j], to_float(instance.states[j]));
        value += instance.priors[j].get_d() * ip.floating().real();
    }
    return value;
}

FeasibilityReport check_feasibility(const Measurement& m) {
    if (m.operators.empty()) throw std::invalid_argument("check_feasibility: empty measurement");
    FeasibilityReport report;
    const long n = m.operators.front().dim();
    MatrixXcd completeness = -MatrixXcd::Identity(n, n);
    report.psd_margin = std::numeric_limits<double>::infinity();
    report.ppt_margin = std::numeric_limits<double>::infinity();
    for (const Operator& p : m.operators) {
        if (p.dim() != n) throw std::invalid_argument("check_feasibility: dimension mismatch");
        completeness += to_eigen(p);
        report.psd_margin = std::min(report.psd_margin, min_eigenvalue(to_float(p)));
        report.ppt_margin = std::min(report.ppt_margin, min_eigenvalue(partial_transpose(to_float(p))));
    }
    report.completeness = spectral_norm_hermitian(completeness);
    return report;
}

}  // namespace pptd
