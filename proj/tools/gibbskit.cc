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

// gibbskit command-line front end.
//
// Every command prints a run record (JSON) on stdout. Exit codes: 0 on
// success, 2 on invalid input, 3 on numerical failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gibbskit/bench.h"
#include "gibbskit/errors.h"
#include "gibbskit/exact.h"
#include "gibbskit/partition.h"
#include "gibbskit/pauli.h"
#include "gibbskit/reductions.h"
#include "gibbskit/relaxation.h"
#include "gibbskit/run_record.h"
#include "gibbskit/workers.h"

namespace {

using gibbskit::RunRecord;
using gibbskit::ValidationError;
using json = nlohmann::json;

struct Common {
    std::optional<uint64_t> seed;
    int workers = gibbskit::default_workers();
    std::string record_path;
};

struct ExactArgs {
    std::string file;
    double beta = 1.0;
};

struct PartitionArgs {
    std::string file;
    double beta = 1.0;
    double delta = 0.1;
    double eta = 0.05;
    std::string method = "compressed";
    int boost = 1;
    std::optional<double> b;
    bool exact_norm = false;
    std::optional<int> k;
    bool compare_exact = false;
};

struct FreeEnergyArgs {
    std::string file;
    double beta = 1.0;
    int k = 2;
    double tol = 1e-8;
    bool no_exact = false;
};

struct ReduceArgs {
    std::string reduction;
    std::string file;
    double beta = 1.0;
    double epsilon = 0.05;
    double delta = 0.1;
    std::string pauli;
    std::string oracle = "exact";
    std::optional<double> jitter;
    bool saturate = false;
    std::string sign = "uniform";
    bool extremal = false;
    int seeds = 1;
    bool trace = true;
};

struct BenchArgs {
    std::string suite;
    std::string out;
};

RunRecord start_record(const std::vector<std::string> &argv, const Common &common) {
    RunRecord r;
    r.command = argv;
    r.seed = gibbskit::resolve_seed(common.seed);
    r.workers = common.workers;
    r.version = gibbskit::library_version();
    return r;
}

void check_workers(int workers) {
    if (workers < 1) {
        throw ValidationError("--workers must be at least 1");
    }
}

json spectrum_summary(const gibbskit::Spectrum &s) {
    const double lo = s.eigenvalues.minCoeff();
    long ground = 0;
    for (double e : s.eigenvalues) {
        if (e - lo <= 1e-9 * std::max(1.0, std::abs(lo))) {
            ++ground;
        }
    }
    return {{"dimension", s.eigenvalues.size()},
            {"min", lo},
            {"max", s.eigenvalues.maxCoeff()},
            {"ground_degeneracy", ground}};
}

void run_exact(const ExactArgs &a, RunRecord &rec) {
    if (!(a.beta > 0) || !std::isfinite(a.beta)) {
        throw ValidationError("--beta must be positive");
    }
    const gibbskit::PauliSumHamiltonian h = gibbskit::load_hamiltonian(a.file);
    const gibbskit::Spectrum s = gibbskit::exact_spectrum(h);
    const double log_z = s.log_trace_exp(-a.beta);
    rec.config = {{"file", a.file}, {"beta", a.beta}};
    rec.result = {{"n", h.num_qubits()},
                  {"Z", s.trace_exp(-a.beta)},
                  {"log_Z", log_z},
                  {"F", -log_z / a.beta},
                  {"spectrum", spectrum_summary(s)}};
}

void run_partition(const PartitionArgs &a, const Common &common, RunRecord &rec) {
    const gibbskit::PauliSumHamiltonian h = gibbskit::load_hamiltonian(a.file);
    gibbskit::PartitionOptions opts;
    opts.method = gibbskit::parse_method(a.method);
    opts.boost = a.boost;
    opts.b_override = a.b;
    opts.exact_norm = a.exact_norm;
    opts.k_override = a.k;
    opts.workers = common.workers;
    gibbskit::PartitionEstimate est = gibbskit::estimate_partition(h, a.beta, a.delta, a.eta, rec.seed, opts);
    rec.config = {{"file", a.file},     {"beta", a.beta},   {"delta", a.delta},
                  {"eta", a.eta},       {"method", a.method}, {"boost", a.boost},
                  {"exact_norm", a.exact_norm}};
    if (a.b) {
        rec.config["b"] = *a.b;
    }
    if (a.k) {
        rec.config["k"] = *a.k;
    }
    const gibbskit::TraceEstimate &t = est.trace;
    rec.result = {{"n", h.num_qubits()},
                  {"value", est.value},
                  {"log_value", est.log_value},
                  {"shift", est.shift},
                  {"b", est.b},
                  {"taylor_order", est.taylor_order},
                  {"k_compress", t.k_compress > 0 ? t.k_compress : h.num_qubits()},
                  {"compression_bypassed", t.compression_bypassed},
                  {"probes", t.probes},
                  {"rank", t.rank},
                  {"repetitions", t.repetitions},
                  {"delta_taylor", est.delta_taylor},
                  {"delta_compress", est.delta_compress},
                  {"delta_hutch", est.delta_hutch},
                  {"exact_fast_path", est.exact_fast_path},
                  {"method", gibbskit::method_name(opts.method)}};
    if (a.beta > 0) {
        rec.result["F"] = -est.log_value / a.beta;
    }
    if (a.compare_exact) {
        const double z = gibbskit::exact_partition(h, a.beta);
        rec.result["Z_exact"] = z;
        rec.result["rel_err_vs_exact"] = std::abs(est.value / z - 1);
    }
    rec.matvecs = {{"trace_operator", t.matvec_count}, {"hamiltonian", est.hamiltonian_matvecs}};
}

void run_free_energy(const FreeEnergyArgs &a, RunRecord &rec) {
    const gibbskit::PauliSumHamiltonian h = gibbskit::load_hamiltonian(a.file);
    if (h.locality() > 2) {
        throw ValidationError("free-energy-dense needs a 2-local Hamiltonian; file has locality " +
                              std::to_string(h.locality()));
    }
    gibbskit::RelaxationOptions opts;
    opts.tol = a.tol;
    const bool with_exact = !a.no_exact && h.num_qubits() <= gibbskit::kExactQubitCap;
    gibbskit::DenseFreeEnergyResult r = gibbskit::dense_free_energy(h, a.beta, a.k, opts, with_exact);
    rec.config = {{"file", a.file}, {"beta", a.beta}, {"k", a.k}, {"tol", a.tol}};
    rec.result = gibbskit::to_json(r, a.tol);
    rec.result["sandwich_holds"] =
        !r.f_exact || (r.f_k_star <= *r.f_exact + 1e-6 && *r.f_exact <= r.f_rounded + 1e-6);
}

gibbskit::OracleHandle make_oracle(const ReduceArgs &a, uint64_t seed) {
    if (a.oracle == "exact") {
        if (a.jitter || a.saturate || a.extremal) {
            throw ValidationError("--jitter, --saturate and --extremal need --oracle noisy");
        }
        return gibbskit::OracleHandle::exact();
    }
    if (a.oracle != "noisy") {
        throw ValidationError("--oracle must be exact or noisy");
    }
    if (!a.jitter && !a.saturate) {
        throw ValidationError("--oracle noisy needs --jitter or --saturate");
    }
    if (a.jitter && a.saturate) {
        throw ValidationError("--jitter and --saturate are exclusive");
    }
    gibbskit::NoiseModel m;
    m.r = a.jitter.value_or(0.0);
    m.saturate = a.saturate;
    m.sign = gibbskit::parse_jitter_sign(a.sign);
    m.extremal = a.extremal;
    m.seed = seed;
    return gibbskit::OracleHandle::noisy(m);
}

void run_reduce(const ReduceArgs &a, RunRecord &rec) {
    if (a.seeds < 1) {
        throw ValidationError("--seeds must be at least 1");
    }
    const gibbskit::PauliSumHamiltonian h = gibbskit::load_hamiltonian(a.file);
    const bool needs_pauli = a.reduction == "qmv-from-qpf";
    if (needs_pauli && a.pauli.empty()) {
        throw ValidationError("qmv-from-qpf needs --pauli");
    }
    if (!needs_pauli && !a.pauli.empty()) {
        throw ValidationError("--pauli only applies to qmv-from-qpf");
    }
    if (a.extremal && a.reduction != "qpf-from-qdos") {
        throw ValidationError("--extremal only applies to qpf-from-qdos");
    }
    gibbskit::PauliString p;
    if (needs_pauli) {
        p = gibbskit::PauliString::parse(a.pauli);
        if (p.num_qubits() != h.num_qubits()) {
            throw ValidationError("--pauli length does not match n");
        }
    }

    // Reference value and the window each reduction promises.
    double reference = 0;
    json window;
    if (a.reduction == "qpf-from-qdos") {
        reference = gibbskit::exact_partition(h, a.beta);
        window = {{"low", gibbskit::kQdosWindowLow * reference}, {"high", reference}};
    } else if (a.reduction == "qmv-from-qpf") {
        reference = gibbskit::exact_gibbs_mean(h, p, -1.0);
        window = {{"low", reference - a.epsilon}, {"high", reference + a.epsilon}};
    } else if (a.reduction == "qpf-from-qmv") {
        reference = gibbskit::exact_partition(h.scaled(-1), 1.0);
        window = {{"low", (1 - a.delta) * reference}, {"high", (1 + a.delta) * reference}};
    } else {
        throw ValidationError("unknown reduction '" + a.reduction + "'");
    }

    json runs = json::array();
    int inside = 0;
    long calls = 0;
    json first_trace;
    for (int s = 0; s < a.seeds; ++s) {
        gibbskit::OracleHandle oracle = make_oracle(a, gibbskit::derive_seed(rec.seed, s));
        oracle.set_trace(a.trace && s == 0);
        gibbskit::ReductionResult r;
        if (a.reduction == "qpf-from-qdos") {
            r = gibbskit::qpf_from_qdos(h, a.beta, oracle);
        } else if (a.reduction == "qmv-from-qpf") {
            r = gibbskit::qmv_from_qpf(h, p, a.epsilon, oracle);
        } else {
            r = gibbskit::qpf_from_qmv(h, a.delta, oracle);
        }
        const bool ok = r.value >= window["low"].get<double>() * (1 - 1e-12) - 1e-300 &&
                        r.value <= window["high"].get<double>() * (1 + 1e-12) + 1e-300;
        inside += ok ? 1 : 0;
        calls += r.oracle_calls;
        runs.push_back({{"value", r.value}, {"within_window", ok}, {"oracle_calls", r.oracle_calls}});
        if (s == 0) {
            first_trace = oracle.trace_json();
            rec.result["stages"] = r.stages;
            rec.result["oracle_tolerance"] = r.oracle_tolerance;
        }
    }
    rec.config = {{"reduction", a.reduction}, {"file", a.file}, {"oracle", a.oracle},
                  {"sign", a.sign},           {"saturate", a.saturate}, {"extremal", a.extremal},
                  {"seeds", a.seeds}};
    if (a.jitter) {
        rec.config["jitter"] = *a.jitter;
    }
    if (a.reduction == "qpf-from-qdos") {
        rec.config["beta"] = a.beta;
    } else if (a.reduction == "qmv-from-qpf") {
        rec.config["epsilon"] = a.epsilon;
        rec.config["pauli"] = a.pauli;
    } else {
        rec.config["delta"] = a.delta;
    }
    rec.result["n"] = h.num_qubits();
    rec.result["reference"] = reference;
    rec.result["window"] = window;
    rec.result["value"] = runs[0]["value"];
    rec.result["runs"] = runs;
    rec.result["summary"] = {{"runs", a.seeds}, {"within_window", inside}, {"all_within", inside == a.seeds}};
    rec.result["oracle"] = first_trace;
    rec.matvecs = {{"oracle_calls", calls}};
}

void run_bench_cmd(const BenchArgs &a, const Common &common, RunRecord &rec) {
    const gibbskit::BenchSuite suite =
        a.suite.empty() ? gibbskit::BenchSuite{} : gibbskit::load_bench_suite(a.suite);
    std::vector<gibbskit::BenchRow> rows = gibbskit::run_bench(suite, rec.seed, common.workers);
    const std::string csv = gibbskit::bench_csv(rows);
    long matvecs = 0;
    int compressed_rows = 0;
    int compressed_ok = 0;
    for (const gibbskit::BenchRow &r : rows) {
        matvecs += r.hamiltonian_matvecs;
        if (r.method == gibbskit::TraceMethod::kCompressedHutchpp && !std::isnan(r.rel_err_vs_exact)) {
            ++compressed_rows;
            compressed_ok += r.rel_err_vs_exact <= r.delta ? 1 : 0;
        }
    }
    rec.config = {{"suite", a.suite.empty() ? "default" : a.suite}, {"out", a.out}};
    rec.result = {{"rows", rows.size()},
                  {"compressed_rows_with_exact", compressed_rows},
                  {"compressed_within_delta", compressed_ok}};
    rec.matvecs = {{"hamiltonian", matvecs}};
    if (a.out.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(a.out);
    if (!out) {
        throw ValidationError("cannot write CSV to '" + a.out + "'");
    }
    out << csv;
}

json error_json(const char *kind, const std::string &message) {
    return {{"error", {{"type", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Partition functions and free energies of local Hamiltonians"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gibbskit::library_version());

    Common common;
    auto add_common = [&common](CLI::App *sub) {
        sub->add_option("--seed", common.seed, "Master seed (falls back to GIBBSKIT_SEED, then 0)");
        sub->add_option("--workers", common.workers, "Worker threads; 1 is the bit-stable reference")
            ->capture_default_str();
        sub->add_option("--record", common.record_path, "Also write the run record to this file");
    };

    ExactArgs ex;
    CLI::App *exact = app.add_subcommand("exact", "Exact Z and F by full diagonalization");
    exact->add_option("file", ex.file, "Hamiltonian JSON")->required();
    exact->add_option("--beta", ex.beta)->capture_default_str();
    add_common(exact);

    PartitionArgs pa;
    CLI::App *partition = app.add_subcommand("partition", "Relative-error estimate of Tr(e^{-beta H})");
    partition->add_option("file", pa.file, "Hamiltonian JSON")->required();
    partition->add_option("--beta", pa.beta)->capture_default_str();
    partition->add_option("--delta", pa.delta)->capture_default_str();
    partition->add_option("--eta", pa.eta)->capture_default_str();
    partition->add_option("--method", pa.method)
        ->check(CLI::IsMember({"hutchinson", "hutchpp", "compressed"}))
        ->capture_default_str();
    partition->add_option("--boost", pa.boost, "Median-boost repetitions (odd)")->capture_default_str();
    partition->add_option("--b", pa.b, "Override the norm bound on beta H");
    partition->add_flag("--exact-norm", pa.exact_norm, "Use the exact operator norm (small n)");
    partition->add_option("--k", pa.k, "Force the compression width");
    partition->add_flag("--compare-exact", pa.compare_exact, "Report the error against diagonalization");
    add_common(partition);

    FreeEnergyArgs fe;
    CLI::App *free_energy =
        app.add_subcommand("free-energy-dense", "Relaxation lower bound and rounded upper bound on F");
    free_energy->add_option("file", fe.file, "2-local Hamiltonian JSON")->required();
    free_energy->add_option("--beta", fe.beta)->capture_default_str();
    free_energy->add_option("--k", fe.k, "Marginal size")->capture_default_str();
    free_energy->add_option("--tol", fe.tol, "Solver tolerance")->capture_default_str();
    free_energy->add_flag("--no-exact", fe.no_exact, "Skip the exact reference");
    add_common(free_energy);

    ReduceArgs re;
    CLI::App *reduce = app.add_subcommand("reduce", "Run a reduction against an exact or jittered oracle");
    reduce->add_option("reduction", re.reduction)
        ->check(CLI::IsMember({"qpf-from-qdos", "qmv-from-qpf", "qpf-from-qmv"}))
        ->required();
    reduce->add_option("file", re.file, "Hamiltonian JSON")->required();
    reduce->add_option("--beta", re.beta, "qpf-from-qdos inverse temperature")->capture_default_str();
    reduce->add_option("--epsilon", re.epsilon, "qmv-from-qpf additive error")->capture_default_str();
    reduce->add_option("--delta", re.delta, "qpf-from-qmv relative error")->capture_default_str();
    reduce->add_option("--pauli", re.pauli, "qmv-from-qpf observable, e.g. ZI");
    reduce->add_option("--oracle", re.oracle)->check(CLI::IsMember({"exact", "noisy"}))->capture_default_str();
    reduce->add_option("--jitter", re.jitter, "Jitter magnitude r");
    reduce->add_flag("--saturate", re.saturate, "Jitter at exactly the demanded tolerance");
    reduce->add_option("--sign", re.sign, "uniform, random, plus, minus, alternate, alternate-minus")
        ->capture_default_str();
    reduce->add_flag("--extremal", re.extremal, "QDOS: positive draws use the widened interval");
    reduce->add_option("--seeds", re.seeds, "Independent oracle seeds to sweep")->capture_default_str();
    add_common(reduce);

    BenchArgs be;
    CLI::App *bench = app.add_subcommand("bench", "Cost/accuracy grid as CSV");
    bench->add_option("suite", be.suite, "Suite JSON (default grid when omitted)");
    bench->add_option("--out", be.out, "CSV path (stdout when omitted)");
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        std::cout << error_json("validation", e.what()).dump(2) << '\n';
        return 2;
    }

    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        check_workers(common.workers);
        RunRecord rec = start_record(args, common);
        const auto t0 = std::chrono::steady_clock::now();
        if (exact->parsed()) {
            run_exact(ex, rec);
        } else if (partition->parsed()) {
            run_partition(pa, common, rec);
        } else if (free_energy->parsed()) {
            run_free_energy(fe, rec);
        } else if (reduce->parsed()) {
            run_reduce(re, rec);
        } else {
            run_bench_cmd(be, common, rec);
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!common.record_path.empty()) {
            gibbskit::write_run_record(rec, common.record_path);
        }
        if (!bench->parsed() || !be.out.empty()) {
            std::cout << rec.to_json().dump(2) << '\n';
        }
        return 0;
    } catch (const ValidationError &e) {
        std::cout << error_json("validation", e.what()).dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gibbskit::NumericalError &e) {
        std::cout << error_json("numerical", e.what()).dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
