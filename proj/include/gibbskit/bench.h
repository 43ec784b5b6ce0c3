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

#ifndef GIBBSKIT_BENCH_H
#define GIBBSKIT_BENCH_H

#include <cstdint>
#include <string>
#include <vector>

#include "gibbskit/pauli.h"
#include "gibbskit/trace_estimation.h"

namespace gibbskit {

/// Random Hamiltonian family used by a suite: `terms` Pauli strings of
/// weight `locality` per instance, rescaled so that sum |coeff| = norm.
struct BenchHamiltonian {
    int locality = 2;
    int terms = 20;
    double norm = 3.0;
    uint64_t seed = 1;
};

/// Grid of (n, method, delta, replicate) runs.
///
/// Suite file (JSON), every field optional:
///   {"ns": [8, 10], "deltas": [0.2, 0.1, 0.05],
///    "methods": ["hutchinson", "hutchpp", "compressed"], "replicates": 3,
///    "beta": 1.0, "eta": 0.05, "boost": 1,
///    "hamiltonian": {"locality": 2, "terms": 20, "norm": 3.0, "seed": 1}}
struct BenchSuite {
    std::vector<int> ns = {8, 10};
    std::vector<double> deltas = {0.2, 0.1, 0.05};
    std::vector<TraceMethod> methods = {TraceMethod::kHutchinson, TraceMethod::kHutchpp,
                                        TraceMethod::kCompressedHutchpp};
    int replicates = 3;
    double beta = 1.0;
    double eta = 0.05;
    int boost = 1;
    BenchHamiltonian hamiltonian;
};

BenchSuite parse_bench_suite(const std::string &json_text);
BenchSuite load_bench_suite(const std::string &path);

/// The fixed instance a suite uses at size n (same for every method and delta).
PauliSumHamiltonian bench_hamiltonian(const BenchHamiltonian &family, int n);

struct BenchRow {
    TraceMethod method = TraceMethod::kHutchpp;
    int n = 0;
    double delta = 0;
    int replicate = 0;
    /// Compression width actually used (n when bypassed or uncompressed).
    int k_compress = 0;
    int taylor_order = 0;
    /// Products with the Taylor surrogate (the estimator's inner operator).
    long matvecs = 0;
    /// Products with the Hamiltonian: matvecs * taylor_order.
    long hamiltonian_matvecs = 0;
    /// Hutch++ probe parameter m.
    int probes = 0;
    double wall_ms = 0;
    /// |estimate / exact - 1|; NaN above the exact cap.
    double rel_err_vs_exact = 0;
};

/// Runs every grid point in order n, delta, method, replicate. Replicate r
/// uses seed derive_seed(master, r), so extending a grid never changes the
/// seeds of existing rows.
std::vector<BenchRow> run_bench(const BenchSuite &suite, uint64_t master_seed, int workers = 1);

/// "method,n,delta,k_compress,taylor_order,matvecs,wall_ms,rel_err_vs_exact"
std::string bench_csv_header();
/// Header line followed by one line per row; rel_err is empty when NaN.
/// Methods are written with their flag names: hutchinson, hutchpp, compressed.
std::string bench_csv(const std::vector<BenchRow> &rows);
/// Parses CSV written by bench_csv (only the CSV columns are filled in).
/// Throws ValidationError when the header differs.
std::vector<BenchRow> parse_bench_csv(const std::string &text);

/// Floating-point work proxy for Hutch++-type rows from CSV columns alone:
/// matvecs * 2^n for the operator products (unit cost per entry) plus
/// 2^n m^2 for orthogonalizing the range sketch, with m = matvecs / 3.
double hutchpp_flop_proxy(int n, long matvecs);

}  // namespace gibbskit

#endif
