// Copyright 2026 The gibbskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gibbskit/bench.h"
#include "gibbskit/clifford.h"
#include "gibbskit/dense.h"
#include "gibbskit/exact.h"
#include "gibbskit/linear_operator.h"
#include "gibbskit/partition.h"
#include "gibbskit/pseudo_density.h"
#include "gibbskit/random_instances.h"
#include "gibbskit/reductions.h"
#include "gibbskit/relaxation.h"
#include "gibbskit/rng.h"
#include "gibbskit/rounding.h"
#include "gibbskit/two_local.h"

namespace gk = gibbskit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *pattern, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

gk::PauliSumHamiltonian single(const std::string &letters, double c = 1.0) {
    return gk::PauliSumHamiltonian(static_cast<int>(letters.size()), {{gk::PauliString::parse(letters), c}});
}

gk::PauliSumHamiltonian with_identity(const gk::PauliSumHamiltonian &h, double c) {
    return h + gk::PauliSumHamiltonian(h.num_qubits(), {{gk::PauliString::identity(h.num_qubits()), c}});
}

gk::PauliString random_pauli(int n, uint64_t seed) {
    gk::Rng rng = gk::substream(seed, 31);
    const uint64_t full = (uint64_t{1} << n) - 1;
    uint64_t x = 0;
    uint64_t z = 0;
    while ((x | z) == 0) {
        x = rng() & full;
        z = rng() & full;
    }
    return gk::PauliString(n, x, z);
}

double median(std::vector<double> v) {
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    return (*std::max_element(v.begin(), v.begin() + mid) + hi) / 2;
}

// 1 ---------------------------------------------------------------------------

Outcome exact_closed_forms() {
    Outcome o;
    const double z1 = gk::exact_partition(single("Z"), 1.0);
    const double z2 = gk::exact_partition(single("ZZ"), 1.0);
    const double e1 = std::abs(z1 - 2 * std::cosh(1.0));
    const double e2 = std::abs(z2 - 2 * (std::exp(1.0) + std::exp(-1.0)));
    o.pass = e1 <= 1e-10 && e2 <= 1e-10;
    int mismatches = 0;
    for (int n = 1; n <= 10; ++n) {
        for (double beta : {0.25, 0.5, 1.0, 2.0, 7.0}) {
            mismatches += gk::exact_free_energy(gk::PauliSumHamiltonian(n), beta) != -(n / beta) * std::log(2.0);
        }
    }
    o.pass = o.pass && mismatches == 0;
    o.detail = fmt("|dZ(Z)|=%.1e |dZ(ZZ)|=%.1e free-energy mismatches=%.0f", e1, e2, mismatches);
    return o;
}

// 2 ---------------------------------------------------------------------------

Outcome taylor_grid() {
    Outcome o;
    double worst_ratio = 0;
    for (double b : {1.0, 2.0, 4.0}) {
        for (double delta : {1e-1, 1e-3}) {
            const gk::TaylorPlan plan = gk::taylor_order(b, delta);
            const double eps = delta * std::exp(-b);
            const int expected = static_cast<int>(std::ceil(4 * b / std::log(2.0) + std::log(1 / eps) / std::log(2.0)));
            if (plan.order != expected || std::abs(plan.epsilon - eps) > 1e-15 * eps) {
                o.pass = false;
            }
            double worst = 0;
            for (int i = 0; i < 10000; ++i) {
                const long double x = -b + 2 * b * i / 9999.0L;
                long double term = 1;
                long double sum = 1;
                for (int p = 1; p <= plan.order; ++p) {
                    term *= x / p;
                    sum += term;
                }
                worst = std::max(worst, static_cast<double>(std::abs(std::exp(x) - sum)));
            }
            worst_ratio = std::max(worst_ratio, worst / eps);
        }
    }
    o.pass = o.pass && worst_ratio <= 1;
    o.detail = fmt("max grid error / eps_T = %.3f", worst_ratio);
    return o;
}

// 3 ---------------------------------------------------------------------------

Outcome surrogate_sandwich() {
    Outcome o;
    const double delta = 0.1;
    double worst = 0;
    for (uint64_t i = 0; i < 20; ++i) {
        const int n = 2 + static_cast<int>(i % 7);
        const int locality = std::min(n, 2 + static_cast<int>(i % 2));
        const double beta = 0.5 + 0.25 * static_cast<double>(i % 5);
        gk::PauliSumHamiltonian h =
            gk::normalize_norm_bound(gk::random_k_local(n, locality, 3 * n, 1.0, 3000 + i), 1.0 + i % 4);
        gk::PauliSumHamiltonian g = h.scaled(-beta);
        gk::TaylorPlan plan = gk::taylor_order(gk::pauli_norm_bound(g), delta);
        const Eigen::Index d = static_cast<Eigen::Index>(h.dimension());
        double trace = 0;
        for (Eigen::Index j = 0; j < d; ++j) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
            e[j] = 1;
            trace += gk::taylor_matvec(plan, g, e)[j].real();
        }
        const double z = gk::exact_partition(h, beta);
        const double rel = std::abs(trace / z - 1);
        worst = std::max(worst, rel);
        o.pass = o.pass && trace >= (1 - delta) * z && trace <= (1 + delta) * z;
    }
    o.detail = fmt("20 instances, worst |Tr T / Z - 1| = %.2e (delta %.2f)", worst, delta);
    return o;
}

// 4 ---------------------------------------------------------------------------

Outcome compression_statistics() {
    Outcome o;
    const int samples = 20000;
    double worst_z = 0;
    double worst_var = 0;
    uint64_t stream = 0;
    for (int n : {4, 6}) {
        const int d = 1 << n;
        Eigen::MatrixXcd a = d * gk::random_density_matrix(n, d / 2, 4000 + n);
        a = (a + a.adjoint()) / 2;
        gk::DenseOperator op(a);
        const double tr = a.trace().real();
        const double tr2 = (a * a).trace().real();
        for (int k = 1; k <= 3; ++k) {
            gk::Rng rng = gk::substream(4444, stream++);
            const int r = 1 << k;
            double sum = 0;
            double sum2 = 0;
            for (int s = 0; s < samples; ++s) {
                gk::CompressedOracle c(op, n, k, gk::sample_clifford(n, rng));
                double t = 0;
                for (int col = 0; col < r; ++col) {
                    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(r);
                    e[col] = 1;
                    t += c.matvec(e)[col].real();
                }
                const double xi = std::ldexp(t, n - k);
                sum += xi;
                sum2 += xi * xi;
            }
            const double mean = sum / samples;
            const double var = (sum2 - samples * mean * mean) / (samples - 1);
            const double z = std::abs(mean - tr) / std::sqrt(var / samples);
            const double ratio = var / (std::ldexp(1.0, -k) * tr2);
            worst_z = std::max(worst_z, z);
            worst_var = std::max(worst_var, ratio);
            o.pass = o.pass && z <= 4 && ratio <= 1.1;
        }
    }
    o.detail = fmt("n in {4,6}, k in {1,2,3}: worst |mean - Tr A| = %.2f SE, worst var / (2^-k Tr A^2) = %.3f",
                   worst_z, worst_var);
    return o;
}

// 5 ---------------------------------------------------------------------------

// Average of P_U (x) P_U for the projector P onto |0^{n-k}> (x) C^{2^k}, with
// P_U = U^dagger P U, against a I + b SWAP. The matrix average must lie within
// 3 standard errors of the fit in Frobenius norm, where SE^2 = sum of entry
// variances / samples. Entrywise z-scores are reported alongside.
struct MomentReport {
    double deviation = 0;
    double standard_error = 0;
    double max_z = 0;
    int outside = 0;
    int entries = 0;
};

MomentReport moment_test(int n, int k, int samples, uint64_t seed) {
    const int dim = 1 << n;
    const int r = 1 << k;
    const int dd = dim * dim;
    const double big_d = dim;
    const double b = r * (big_d - r) / (big_d * (big_d * big_d - 1));
    const double a = (r * r - b * big_d) / (big_d * big_d);
    Eigen::MatrixXd fit = a * Eigen::MatrixXd::Identity(dd, dd);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            fit(i * dim + j, j * dim + i) += b;
        }
    }
    Eigen::MatrixXd sum_re = Eigen::MatrixXd::Zero(dd, dd);
    Eigen::MatrixXd sum_im = Eigen::MatrixXd::Zero(dd, dd);
    Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(dd, dd);
    Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(dd, dd);
    gk::Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        gk::CliffordTableau u = gk::sample_clifford(n, rng);
        Eigen::MatrixXcd w(dim, r);
        for (int x = 0; x < r; ++x) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
            e[x] = 1;
            w.col(x) = gk::apply_clifford(u, e, true);
        }
        const Eigen::MatrixXcd p = w * w.adjoint();
        const Eigen::MatrixXcd pp = gk::kron(p, p);
        sum_re += pp.real();
        sum_im += pp.imag();
        sq_re += pp.real().cwiseAbs2();
        sq_im += pp.imag().cwiseAbs2();
    }
    MomentReport rep;
    auto check = [&](const Eigen::MatrixXd &sum, const Eigen::MatrixXd &sq, const Eigen::MatrixXd &target) {
        for (int i = 0; i < dd; ++i) {
            for (int j = 0; j < dd; ++j) {
                const double mean = sum(i, j) / samples;
                const double var = std::max(0.0, (sq(i, j) - samples * mean * mean) / (samples - 1));
                const double se = std::sqrt(var / samples);
                const double dev = std::abs(mean - target(i, j));
                rep.deviation += dev * dev;
                rep.standard_error += var / samples;
                ++rep.entries;
                if (dev > 3 * se + 1e-12) {
                    ++rep.outside;
                }
                if (se > 1e-12) {
                    rep.max_z = std::max(rep.max_z, dev / se);
                }
            }
        }
    };
    check(sum_re, sq_re, fit);
    check(sum_im, sq_im, Eigen::MatrixXd::Zero(dd, dd));
    rep.deviation = std::sqrt(rep.deviation);
    rep.standard_error = std::sqrt(rep.standard_error);
    return rep;
}

Outcome two_design_moments() {
    Outcome o;
    std::ostringstream detail;
    uint64_t seed = 5000;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
        MomentReport rep = moment_test(n, k, 20000, seed++);
        o.pass = o.pass && rep.deviation <= 3 * rep.standard_error;
        detail << "n=" << n << ",k=" << k << ": " << fmt("%.2f SE", rep.deviation / rep.standard_error)
               << " (entries past 3 SE " << rep.outside << "/" << rep.entries << fmt(", max %.2f)", rep.max_z);
        if (n != 3 || k != 2) {
            detail << "; ";
        }
    }
    o.detail = detail.str();
    return o;
}

// 6 ---------------------------------------------------------------------------

Outcome end_to_end_partition() {
    Outcome o;
    const int n = 10;
    const double beta = 1.0;
    const double delta = 0.1;
    const double eta = 0.05;
    std::vector<gk::PauliSumHamiltonian> hs;
    std::vector<double> truth;
    for (int locality : {2, 3}) {
        for (uint64_t i = 0; i < 5; ++i) {
            hs.push_back(gk::normalize_norm_bound(
                gk::random_k_local(n, locality, 20, 1.0, 6000 + 10 * locality + i), 3.0));
            truth.push_back(gk::exact_partition(hs.back(), beta));
        }
    }
    int plain = 0;
    int boosted = 0;
    for (uint64_t run = 0; run < 100; ++run) {
        const size_t idx = run % hs.size();
        gk::PartitionOptions opts;
        const uint64_t seed = gk::derive_seed(66, run);
        const double est = gk::estimate_partition(hs[idx], beta, delta, eta, seed, opts).value;
        plain += std::abs(est / truth[idx] - 1) <= delta;
        opts.boost = 15;
        const double med = gk::estimate_partition(hs[idx], beta, delta, eta, seed, opts).value;
        boosted += std::abs(med / truth[idx] - 1) <= delta;
    }
    o.pass = plain >= 95 && boosted >= 99;
    o.detail = fmt("n=10, 2- and 3-local, delta=0.1: %.0f/100 plain, %.0f/100 with boost 15", plain, boosted);
    return o;
}

// 7 ---------------------------------------------------------------------------

Outcome dense_free_energy_sandwich() {
    Outcome o;
    const double beta = 1.0;
    double worst_lower = -INFINITY;
    double worst_upper = -INFINITY;
    double worst_tight = 0;
    int instances = 0;
    for (uint64_t i = 0; i < 30; ++i) {
        const int n = 2 + static_cast<int>(i % 5);
        const int k = n == 2 ? 2 : 2 + static_cast<int>((i / 5) % 2);
        gk::PauliSumHamiltonian h = gk::random_dense_two_local(n, 0.5, 7000 + i);
        gk::DenseFreeEnergyResult r = gk::dense_free_energy(h, beta, k);
        const double f = *r.f_exact;
        const double rounded = r.energy_rounded - r.entropy_rounded / beta;
        worst_lower = std::max(worst_lower, r.f_k_star - f);
        worst_upper = std::max(worst_upper, f - rounded);
        o.pass = o.pass && r.f_k_star <= f + 1e-6 && f <= rounded + 1e-6;
        if (n == 2 && k == 2) {
            worst_tight = std::max(worst_tight, std::abs(r.f_k_star - f));
            o.pass = o.pass && std::abs(r.f_k_star - f) <= 1e-4;
        }
        ++instances;
    }
    // k-trend on the complete-graph model: median deviation / Gamma over
    // random feasible pseudodensity matrices must not increase with k.
    const int n = 6;
    gk::TwoLocalView v = gk::two_local_view(gk::complete_graph_zz(n, 1.0));
    std::vector<double> medians;
    for (int k = 2; k <= 4; ++k) {
        std::vector<double> dev;
        for (uint64_t seed = 0; seed < 20; ++seed) {
            gk::PseudoDensityMatrix sigma = gk::random_pseudo_density(n, k, 7100 + seed);
            dev.push_back(gk::energy_gap_report(sigma, gk::round_pseudo_density(sigma, k), v).per_gamma);
        }
        medians.push_back(median(dev));
    }
    for (size_t i = 1; i < medians.size(); ++i) {
        o.pass = o.pass && medians[i] <= medians[i - 1];
    }
    o.detail = fmt("%.0f instances: max(f_k* - F)=%.1e, max(F - F_rounded)=%.1e, n=k=2 gap %.1e; ", instances,
                   worst_lower, worst_upper, worst_tight) +
               fmt("median dev/Gamma k=2,3,4: %.4f %.4f %.4f", medians[0], medians[1], medians[2]);
    return o;
}

// 8 ---------------------------------------------------------------------------

Outcome rounding_inequalities() {
    Outcome o;
    double worst_round = INFINITY;
    double worst_marg = INFINITY;
    for (uint64_t i = 0; i < 50; ++i) {
        const int n = 3 + static_cast<int>(i % 3);
        const int k = 2 + static_cast<int>((i / 3) % 2);
        gk::PseudoDensityMatrix sigma = gk::random_pseudo_density(n, k, 8000 + i);
        const double s_round = gk::von_neumann_entropy(gk::round_pseudo_density(sigma, k));
        const double margin = s_round - gk::pseudo_entropy(sigma);
        worst_round = std::min(worst_round, margin);
        o.pass = o.pass && margin >= -1e-9;
    }
    for (uint64_t i = 0; i < 50; ++i) {
        const int n = 3 + static_cast<int>(i % 3);
        const int k = 2 + static_cast<int>((i / 3) % 2);
        const int rank = 1 + static_cast<int>(i % 4);
        Eigen::MatrixXcd rho = gk::random_density_matrix(n, rank, 8100 + i);
        const double margin =
            gk::pseudo_entropy(gk::PseudoDensityMatrix::from_state(rho, n, k)) - gk::von_neumann_entropy(rho);
        worst_marg = std::min(worst_marg, margin);
        o.pass = o.pass && margin >= -1e-9;
    }
    o.detail = fmt("min S(rho_rounded) - S_k(sigma) = %.3e, min S_k(marginals) - S(rho) = %.3e", worst_round,
                   worst_marg);
    return o;
}

// 9 ---------------------------------------------------------------------------

gk::PauliSumHamiltonian reduction_instance(uint64_t seed) {
    gk::Rng rng = gk::substream(seed, 99);
    const int n = 1 + static_cast<int>(gk::uniform_below(rng, 5));
    const int k = 1 + static_cast<int>(gk::uniform_below(rng, std::min(n, 3)));
    const int terms = 2 + static_cast<int>(gk::uniform_below(rng, 5));
    const double target = 0.5 + 1.5 * gk::uniform01(rng);
    return gk::normalize_norm_bound(gk::random_k_local(n, k, terms, 1.0, seed), target);
}

gk::NoiseModel saturating(gk::JitterSign sign, uint64_t seed, bool extremal = false) {
    gk::NoiseModel m;
    m.saturate = true;
    m.sign = sign;
    m.seed = seed;
    m.extremal = extremal;
    return m;
}

Outcome reduction_windows() {
    Outcome o;
    int failures[3] = {0, 0, 0};
    double worst_qmv = 0;
    double worst_qpf = 0;
    double worst_low = INFINITY;
    for (uint64_t i = 0; i < 50; ++i) {
        const uint64_t seed = 9000 + i;
        gk::PauliSumHamiltonian h = reduction_instance(seed);

        // Counting: rescale into [0.01, 0.97] so that 0 <= H < I.
        gk::Spectrum s = gk::exact_spectrum(h);
        const double lo = s.eigenvalues.minCoeff();
        const double scale = 0.96 / std::max(s.eigenvalues.maxCoeff() - lo, 1e-6);
        gk::PauliSumHamiltonian unit = with_identity(h.scaled(scale), 0.01 - lo * scale);
        gk::Rng beta_rng = gk::substream(seed, 7);
        const double beta = 0.25 + 7.75 * gk::uniform01(beta_rng);
        const double z_unit = gk::exact_partition(unit, beta);
        std::vector<gk::OracleHandle> qdos = {
            gk::OracleHandle::exact(),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::plus, seed, true)),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::minus, seed, true)),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::random, seed, true)),
        };
        for (gk::OracleHandle &oracle : qdos) {
            const double est = gk::qpf_from_qdos(unit, beta, oracle).value;
            worst_low = std::min(worst_low, est / z_unit);
            failures[0] += !(est >= gk::kQdosWindowLow * z_unit * (1 - 1e-12) && est <= z_unit * (1 + 1e-12));
        }

        // Mean value from two partition-function calls, epsilon = 0.05.
        const gk::PauliString p = random_pauli(h.num_qubits(), seed);
        const double mu = gk::exact_gibbs_mean(h, p, -1.0);
        std::vector<gk::OracleHandle> qpf = {gk::OracleHandle::exact()};
        for (gk::JitterSign sign : {gk::JitterSign::plus, gk::JitterSign::minus, gk::JitterSign::alternate,
                                    gk::JitterSign::alternate_minus, gk::JitterSign::random}) {
            qpf.push_back(gk::OracleHandle::noisy(saturating(sign, seed)));
        }
        for (gk::OracleHandle &oracle : qpf) {
            const double err = std::abs(gk::qmv_from_qpf(h, p, 0.05, oracle).value - mu);
            worst_qmv = std::max(worst_qmv, err);
            failures[1] += err > 0.05;
        }

        // Partition function Tr e^{H} from mean values, delta = 0.1.
        const double z = gk::exact_partition(h.scaled(-1), 1.0);
        std::vector<gk::OracleHandle> qmv = {
            gk::OracleHandle::exact(),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::plus, seed)),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::minus, seed)),
            gk::OracleHandle::noisy(saturating(gk::JitterSign::random, seed)),
        };
        for (gk::OracleHandle &oracle : qmv) {
            const double rel = std::abs(gk::qpf_from_qmv(h, 0.1, oracle).value / z - 1);
            worst_qpf = std::max(worst_qpf, rel);
            failures[2] += rel > 0.1;
        }
    }
    o.pass = failures[0] == 0 && failures[1] == 0 && failures[2] == 0;
    o.detail = fmt("50 instances: qdos->qpf min est/Z=%.4f (window %.4f..1), qpf->qmv worst err=%.4f (eps 0.05), ",
                   worst_low, gk::kQdosWindowLow, worst_qmv) +
               fmt("qmv->qpf worst rel=%.4f (delta 0.1); failures %.0f/%.0f/%.0f", worst_qpf, failures[0],
                   failures[1], failures[2]);
    return o;
}

// 10 --------------------------------------------------------------------------

Outcome delta_scaling_trend() {
    Outcome o;
    gk::BenchSuite suite = gk::parse_bench_suite(
        R"({"ns": [10], "deltas": [0.2, 0.1, 0.05, 0.025], "methods": ["hutchpp", "compressed"],
            "replicates": 3})");
    const std::vector<gk::BenchRow> rows = gk::parse_bench_csv(gk::bench_csv(gk::run_bench(suite, 10)));
    std::map<std::pair<gk::TraceMethod, double>, std::vector<double>> matvecs;
    for (const gk::BenchRow &r : rows) {
        matvecs[{r.method, r.delta}].push_back(static_cast<double>(r.matvecs));
    }
    std::ostringstream detail;
    detail << "compressed matvec ratios:";
    int regime_pairs = 0;
    for (size_t i = 1; i < suite.deltas.size(); ++i) {
        const double coarse = suite.deltas[i - 1];
        const double fine = suite.deltas[i];
        const double ratio = median(matvecs[{gk::TraceMethod::kCompressedHutchpp, fine}]) /
                             median(matvecs[{gk::TraceMethod::kCompressedHutchpp, coarse}]);
        o.pass = o.pass && ratio <= 2.5;
        detail << fmt(" %.2f", ratio);
    }
    detail << "; hutchpp work ratios:";
    for (size_t i = 1; i < suite.deltas.size(); ++i) {
        const long m0 = static_cast<long>(median(matvecs[{gk::TraceMethod::kHutchpp, suite.deltas[i - 1]}]));
        const long m1 = static_cast<long>(median(matvecs[{gk::TraceMethod::kHutchpp, suite.deltas[i]}]));
        // Residual-dominated: the 2^n (m/3)^2 term exceeds the matvec term at both ends.
        const bool dominated = (m0 / 3.0) * (m0 / 3.0) > m0 && (m1 / 3.0) * (m1 / 3.0) > m1;
        const double ratio = gk::hutchpp_flop_proxy(10, m1) / gk::hutchpp_flop_proxy(10, m0);
        if (dominated) {
            ++regime_pairs;
            o.pass = o.pass && ratio >= 3;
        }
        detail << fmt(" %.2f", ratio) << (dominated ? "" : "(skipped)");
    }
    o.pass = o.pass && regime_pairs > 0;
    o.detail = detail.str();
    return o;
}

// 11 --------------------------------------------------------------------------

Outcome channel_and_pseudodistribution() {
    Outcome o;
    double worst_ratio = INFINITY;
    for (uint64_t i = 0; i < 1000; ++i) {
        const int l = 1 + static_cast<int>(i % 2);
        Eigen::MatrixXcd q = gk::random_hermitian(1 << l, 11000 + i);
        const double ratio = gk::measurement_channel(q).lpNorm<1>() / (std::pow(6.0, -l) * gk::trace_norm(q));
        worst_ratio = std::min(worst_ratio, ratio);
        o.pass = o.pass && ratio >= 1 - 1e-12;
    }
    double worst_slack = INFINITY;
    for (uint64_t i = 0; i < 20; ++i) {
        const int n = 4 + static_cast<int>(i % 2);
        const int k = 1 + static_cast<int>((i / 2) % 2);
        gk::PseudoDensityMatrix sigma = gk::random_pseudo_density(n, k + 1, 11500 + i);
        gk::OneNormCheck r = gk::pseudodistribution_1norm_check(gk::Pseudodistribution::measured(sigma),
                                                                gk::uniform_pair_weights(n),
                                                                gk::uniform_pair_delta(n), k);
        worst_slack = std::min(worst_slack, r.bound - r.lhs);
        o.pass = o.pass && r.holds && r.lhs <= r.bound;
    }
    o.detail = fmt("min ||Lambda(Q)||_1 / (6^-l ||Q||_1) = %.3f over 1000; min bound - lhs = %.3f over 20",
                   worst_ratio, worst_slack);
    return o;
}

struct Criterion {
    int id;
    const char *name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> all = {
        {1, "exact-oracle closed forms", 1, exact_closed_forms},
        {2, "Taylor truncation grid", 1, taylor_grid},
        {3, "PSD surrogate sandwich", 30, surrogate_sandwich},
        {4, "Clifford compression statistics", 300, compression_statistics},
        {5, "2-design moments", 120, two_design_moments},
        {6, "end-to-end partition function", 1200, end_to_end_partition},
        {7, "dense free-energy sandwich", 1800, dense_free_energy_sandwich},
        {8, "rounding entropy inequalities", 600, rounding_inequalities},
        {9, "reduction windows", 600, reduction_windows},
        {10, "delta-scaling trend", 1800, delta_scaling_trend},
        {11, "channel distortion and pseudodistribution bound", 300, channel_and_pseudodistribution},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const Criterion &c : all) {
        if (!selected.empty() && !selected.count(c.id)) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) {
            out.pass = false;
            out.detail += fmt(" [over time limit %.0f s]", c.limit_s);
        }
        failed += !out.pass;
        std::printf("criterion %2d %s  %s  (%s; %.2f s)\n", c.id, out.pass ? "PASS" : "FAIL", c.name,
                    out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
