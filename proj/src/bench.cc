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

#include "gibbskit/bench.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gibbskit/errors.h"
#include "gibbskit/exact.h"
#include "gibbskit/partition.h"
#include "gibbskit/random_instances.h"
#include "gibbskit/rng.h"

namespace gibbskit {

namespace {

template <typename T>
T field(const nlohmann::json &doc, const char *key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ValidationError(std::string("bench suite field \"") + key + "\" has the wrong type");
    }
}

std::string flag_name(TraceMethod m) {
    return m == TraceMethod::kCompressedHutchpp ? "compressed" : method_name(m);
}

void check_suite(const BenchSuite &s) {
    if (s.ns.empty() || s.deltas.empty() || s.methods.empty()) {
        throw ValidationError("bench suite needs non-empty ns, deltas and methods");
    }
    for (int n : s.ns) {
        if (n < 1 || n > 20) {
            throw ValidationError("bench suite n must lie in [1, 20]");
        }
        if (s.hamiltonian.locality > n) {
            throw ValidationError("bench suite locality exceeds n = " + std::to_string(n));
        }
    }
    for (double d : s.deltas) {
        if (!(d > 0 && d < 1)) {
            throw ValidationError("bench suite deltas must lie in (0, 1)");
        }
    }
    if (s.replicates < 1 || !(s.eta > 0 && s.eta < 1) || !(s.beta >= 0) || s.boost < 1 ||
        s.boost % 2 == 0) {
        throw ValidationError("bench suite needs replicates >= 1, eta in (0, 1), beta >= 0, odd boost");
    }
    if (s.hamiltonian.locality < 1 || s.hamiltonian.terms < 1 || !(s.hamiltonian.norm > 0)) {
        throw ValidationError("bench suite Hamiltonian needs locality >= 1, terms >= 1, norm > 0");
    }
}

}  // namespace

BenchSuite parse_bench_suite(const std::string &json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed bench suite: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("bench suite must be a JSON object");
    }
    BenchSuite s;
    s.ns = field(doc, "ns", s.ns);
    s.deltas = field(doc, "deltas", s.deltas);
    if (doc.contains("methods")) {
        s.methods.clear();
        for (const std::string &name : field(doc, "methods", std::vector<std::string>{})) {
            s.methods.push_back(parse_method(name));
        }
    }
    s.replicates = field(doc, "replicates", s.replicates);
    s.beta = field(doc, "beta", s.beta);
    s.eta = field(doc, "eta", s.eta);
    s.boost = field(doc, "boost", s.boost);
    if (doc.contains("hamiltonian")) {
        const nlohmann::json &h = doc["hamiltonian"];
        if (!h.is_object()) {
            throw ValidationError("bench suite field \"hamiltonian\" must be an object");
        }
        s.hamiltonian.locality = field(h, "locality", s.hamiltonian.locality);
        s.hamiltonian.terms = field(h, "terms", s.hamiltonian.terms);
        s.hamiltonian.norm = field(h, "norm", s.hamiltonian.norm);
        s.hamiltonian.seed = field(h, "seed", s.hamiltonian.seed);
    }
    check_suite(s);
    return s;
}

BenchSuite load_bench_suite(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open bench suite '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_bench_suite(buf.str());
}

PauliSumHamiltonian bench_hamiltonian(const BenchHamiltonian &family, int n) {
    PauliSumHamiltonian h =
        random_k_local(n, family.locality, family.terms, 1.0, derive_seed(family.seed, static_cast<uint64_t>(n)));
    return normalize_norm_bound(h, family.norm);
}

std::vector<BenchRow> run_bench(const BenchSuite &suite, uint64_t master_seed, int workers) {
    check_suite(suite);
    std::vector<BenchRow> rows;
    for (int n : suite.ns) {
        const PauliSumHamiltonian h = bench_hamiltonian(suite.hamiltonian, n);
        const double exact = n <= kExactQubitCap ? exact_partition(h, suite.beta)
                                                 : std::numeric_limits<double>::quiet_NaN();
        for (double delta : suite.deltas) {
            for (TraceMethod method : suite.methods) {
                for (int r = 0; r < suite.replicates; ++r) {
                    PartitionOptions opts;
                    opts.method = method;
                    opts.boost = suite.boost;
                    opts.workers = workers;
                    const uint64_t seed = derive_seed(master_seed, static_cast<uint64_t>(r));
                    const auto t0 = std::chrono::steady_clock::now();
                    PartitionEstimate est = estimate_partition(h, suite.beta, delta, suite.eta, seed, opts);
                    const auto t1 = std::chrono::steady_clock::now();
                    BenchRow row;
                    row.method = method;
                    row.n = n;
                    row.delta = delta;
                    row.replicate = r;
                    row.k_compress = est.trace.k_compress > 0 ? est.trace.k_compress : n;
                    row.taylor_order = est.taylor_order;
                    row.matvecs = est.trace.matvec_count;
                    row.hamiltonian_matvecs = est.hamiltonian_matvecs;
                    row.probes = est.trace.probes;
                    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    row.rel_err_vs_exact = std::abs(est.value / exact - 1);
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::string bench_csv_header() {
    return "method,n,delta,k_compress,taylor_order,matvecs,wall_ms,rel_err_vs_exact";
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
    std::ostringstream out;
    out << bench_csv_header() << '\n';
    out << std::setprecision(17);
    for (const BenchRow &r : rows) {
        out << flag_name(r.method) << ',' << r.n << ',' << r.delta << ',' << r.k_compress << ','
            << r.taylor_order << ',' << r.matvecs << ',' << std::setprecision(6) << r.wall_ms
            << std::setprecision(17) << ',';
        if (!std::isnan(r.rel_err_vs_exact)) {
            out << r.rel_err_vs_exact;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<BenchRow> parse_bench_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != bench_csv_header()) {
        throw ValidationError("bench CSV header mismatch");
    }
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() == 7 && line.back() == ',') {
            cells.emplace_back();
        }
        if (cells.size() != 8) {
            throw ValidationError("bench CSV row has " + std::to_string(cells.size()) + " cells: " + line);
        }
        BenchRow r;
        try {
            r.method = parse_method(cells[0]);
            r.n = std::stoi(cells[1]);
            r.delta = std::stod(cells[2]);
            r.k_compress = std::stoi(cells[3]);
            r.taylor_order = std::stoi(cells[4]);
            r.matvecs = std::stol(cells[5]);
            r.wall_ms = std::stod(cells[6]);
            r.rel_err_vs_exact =
                cells[7].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(cells[7]);
        } catch (const std::logic_error &) {
            throw ValidationError("bench CSV row is not numeric: " + line);
        }
        rows.push_back(r);
    }
    return rows;
}

double hutchpp_flop_proxy(int n, long matvecs) {
    const double d = std::ldexp(1.0, n);
    const double m = static_cast<double>(matvecs) / 3.0;
    return static_cast<double>(matvecs) * d + d * m * m;
}

}  // namespace gibbskit
