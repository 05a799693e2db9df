// Copyright 2026 The gqss Authors
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

// Command-line driver. Exit codes: 0 success, 1 protocol abort, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gqss/harness.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace gqss;

constexpr int kExitOk = 0;
constexpr int kExitAbort = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::uint64_t seed = 1;
    std::size_t rounds = 0;
    std::string noise;
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
    std::string counts_path;
    std::string graph_path;
    std::string triplet;
    std::string pair = "1,2";
    std::string plane = "zy";
    std::string secret;
    double s = 0.5;
    double tol = -1.0;
    std::uint64_t shots = 0;
    std::size_t steps = 24;
    std::size_t resamples = 200;
    bool ideal = false;
    bool transcript = false;
    bool continue_on_fail = false;
};

NoiseSpec noise_of(const Options& o) { return o.noise.empty() ? NoiseSpec::none() : NoiseSpec::parse(o.noise); }

DensityMatrix resource_of(const Options& o) {
    if (o.ideal && !o.noise.empty()) {
        throw ArgumentError("--ideal and --noise are mutually exclusive");
    }
    return apply_noise(DensityMatrix(canonical_resource().state), noise_of(o));
}

json secret_of(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw ArgumentError("--secret expects theta,phi");
    }
    try {
        return json::array({std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))});
    } catch (const std::exception&) {
        throw ArgumentError("--secret expects two numbers, got '" + s + "'");
    }
}

bool json_to_stdout(const Options& o) { return !o.json_path || o.json_path->empty() || *o.json_path == "-"; }

void emit(const json& j, const Options& o) {
    const std::string text = j.dump(2) + "\n";
    if (json_to_stdout(o)) {
        std::cout << text;
        return;
    }
    std::ofstream f(*o.json_path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot write " + *o.json_path);
    }
    f << text;
}

bool csv_to_stdout(const Options& o) { return o.csv_path && (o.csv_path->empty() || *o.csv_path == "-"); }

// Counts and the JSON report cannot share stdout.
void check_csv_target(const Options& o) {
    if (csv_to_stdout(o) && json_to_stdout(o)) {
        throw ArgumentError("--csv needs a file path when the JSON report goes to stdout");
    }
}

template <typename Write>
void emit_csv(const Options& o, Write write) {
    if (!o.csv_path) {
        return;
    }
    if (csv_to_stdout(o)) {
        write(std::cout);
        return;
    }
    std::ofstream f(*o.csv_path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot write " + *o.csv_path);
    }
    write(f);
}

std::vector<CountRecord> sample_settings(const DensityMatrix& rho, const std::vector<std::string>& settings,
                                         std::uint64_t shots, Rng& rng) {
    std::vector<CountRecord> recs;
    for (const auto& s : settings) {
        recs.push_back(sample_counts(rho, s, shots, rng));
    }
    return recs;
}

std::vector<std::string> all_settings(std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t q = 0; q < n; ++q) {
        std::vector<std::string> next;
        for (const auto& p : out) {
            for (char c : {'X', 'Y', 'Z'}) {
                next.push_back(p + c);
            }
        }
        out = std::move(next);
    }
    return out;
}

json state_json(const StateVector& psi) {
    json amps = json::array();
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (std::abs(psi[i]) > 1e-12) {
            amps.push_back({{"basis", detail::bits_string(i, psi.qubits())},
                            {"re", psi[i].real()},
                            {"im", psi[i].imag()}});
        }
    }
    return amps;
}

int cmd_build_state(const Options& o) {
    GraphSpec g = resource_graph();
    if (!o.graph_path.empty()) {
        std::ifstream f(o.graph_path);
        if (!f) {
            throw ArgumentError("cannot read " + o.graph_path);
        }
        try {
            g = GraphSpec::from_json(json::parse(f));
        } catch (const json::exception& e) {
            throw ArgumentError(std::string("bad graph file: ") + e.what());
        }
    }
    const StateVector psi = build_graph_state(g);
    json stab = json::array();
    for (const auto& s : stabilizer_generators(g)) {
        stab.push_back({{"generator", s.to_string()}, {"expectation", expectation(psi, s)}});
    }
    emit({{"graph", g.to_json()}, {"amplitudes", state_json(psi)}, {"stabilizers", stab}}, o);
    return kExitOk;
}

int cmd_estimator(const Options& o, bool witness) {
    check_csv_target(o);
    const DensityMatrix rho = resource_of(o);
    json j;
    if (witness) {
        j = {{"value", witness_value(rho)}, {"ideal_value", kIdealWitnessValue}};
    } else {
        const auto b = fidelity_via_pauli_terms(rho);
        json terms = json::array();
        for (const auto& t : b.per_term) {
            terms.push_back({{"term", t.term.to_string()}, {"value", t.value}});
        }
        j = {{"value", b.fidelity}, {"ideal_value", 1.0}, {"bases", fidelity_bases().size()}, {"terms", terms}};
    }
    if (o.shots > 0) {
        Rng rng(o.seed);
        const auto recs = sample_settings(rho, fidelity_bases(), o.shots, rng);
        const auto stat = witness ? witness_statistic() : fidelity_statistic();
        const auto mc = monte_carlo_error(recs, stat, o.resamples, rng);
        j["exact_value"] = j["value"];
        j["value"] = stat(recs).value_or(mc.mean);
        j["error"] = mc.std;
        j["shots_per_setting"] = o.shots;
        emit_csv(o, [&](std::ostream& f) { write_counts_csv(f, recs); });
    }
    j["noise"] = noise_of(o).to_string();
    emit(j, o);
    return kExitOk;
}

int cmd_access(const Options& o) {
    const DensityMatrix rho = resource_of(o);
    const double tol = o.tol > 0 ? o.tol : (noise_of(o).is_identity() ? 1e-6 : 0.05);
    json rows = json::array();
    for (const auto& v : classify_access(rho, tol)) {
        rows.push_back({{"players", players_string(v.subset)},
                        {"chi_z", v.chi_z},
                        {"chi_y", v.chi_y},
                        {"class", access_class_name(v.classification)}});
    }
    emit({{"noise", noise_of(o).to_string()}, {"tolerance", tol}, {"rows", rows}}, o);
    return kExitOk;
}

int cmd_session(const Options& o, ProtocolId p) {
    json cfg = json::object();
    if (o.rounds > 0) cfg["rounds"] = o.rounds;
    if (!o.noise.empty()) cfg["noise"] = o.noise;
    if (!o.triplet.empty()) cfg["triplet"] = o.triplet;
    if (!o.secret.empty()) cfg["secret"] = secret_of(o.secret);
    if (p == ProtocolId::SQQ) {
        cfg["s"] = o.s;
        cfg["continue_on_fail"] = o.continue_on_fail;
    }
    const auto t = run_session(p, cfg, o.seed);
    emit(session_report(t, o.transcript), o);
    return session_aborted(t) ? kExitAbort : kExitOk;
}

int cmd_sweep(const Options& o) {
    const auto table = plane_sweep(parse_players(o.pair), parse_plane(o.plane), o.steps);
    emit_csv(o, [&](std::ostream& f) { write_sweep_csv(f, table); });
    if (o.json_path || !o.csv_path) {
        json rows = json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"angle_radians", r.angle}, {"values", r.values}});
        }
        emit({{"pair", o.pair}, {"plane", o.plane}, {"columns", table.columns}, {"rows", rows}}, o);
    }
    return kExitOk;
}

int cmd_tomo(const Options& o) {
    check_csv_target(o);
    std::vector<CountRecord> recs;
    if (!o.counts_path.empty()) {
        std::ifstream f(o.counts_path);
        if (!f) {
            throw ArgumentError("cannot read " + o.counts_path);
        }
        recs = read_counts_csv(f);
    } else {
        Rng rng(o.seed);
        recs = sample_settings(resource_of(o), all_settings(5), o.shots ? o.shots : 10000, rng);
        emit_csv(o, [&](std::ostream& f) { write_counts_csv(f, recs); });
    }
    if (recs.empty()) {
        throw ArgumentError("no count records");
    }
    const std::size_t n = recs.front().setting.size();
    // Pool every setting that measures a term.
    std::vector<std::pair<PauliString, double>> ex;
    for (const auto& p : all_pauli_strings(n)) {
        double sum = 0.0;
        std::size_t used = 0;
        for (const auto& r : recs) {
            if (basis_covers(r.setting, p)) {
                if (const auto e = expectation_from_counts(r, p)) {
                    sum += *e;
                    ++used;
                }
            }
        }
        if (used == 0) {
            throw ArgumentError("counts do not cover " + p.to_string());
        }
        ex.emplace_back(p, sum / static_cast<double>(used));
    }
    const DensityMatrix rho = tomography_reconstruct(ex, n);
    json j = {{"qubits", n}, {"settings", recs.size()}, {"purity", overlap(rho, rho)}};
    if (n == 5) {
        j["fidelity"] = fidelity_pure(canonical_resource().state, rho);
        j["witness"] = witness_value(rho);
    }
    emit(j, o);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-state quantum secret sharing simulator"};
    app.require_subcommand(1);
    Options o;

    auto add_json = [&](CLI::App* c) {
        c->add_option("--json", o.json_path, "Write the JSON report here (stdout if omitted or '-')")
            ->expected(0, 1);
    };
    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "RNG seed"); };
    auto add_noise = [&](CLI::App* c) {
        c->add_option("--noise", o.noise, "white:v | depolarizing:p[@q,..] | qber-flip:p");
    };
    auto add_session = [&](CLI::App* c) {
        add_seed(c);
        add_noise(c);
        add_json(c);
        c->add_option("--rounds", o.rounds, "Rounds");
        c->add_option("--triplet", o.triplet, "Retrieving players, e.g. 1,2,4");
        c->add_option("--secret", o.secret, "Secret qubit angles theta,phi");
        c->add_flag("--transcript", o.transcript, "Include the full transcript");
    };

    auto* build = app.add_subcommand("build-state", "Build a graph state and check its stabilizers");
    build->add_option("--graph", o.graph_path, "Graph JSON {n, edges, dealer}");
    add_json(build);

    auto* witness = app.add_subcommand("witness", "Entanglement witness on the (noisy) resource");
    auto* fidelity = app.add_subcommand("fidelity", "Fidelity from stabilizer terms");
    for (auto* c : {witness, fidelity}) {
        add_seed(c);
        add_noise(c);
        add_json(c);
        c->add_flag("--ideal", o.ideal, "Noiseless resource");
        c->add_option("--shots", o.shots, "Shots per setting; enables sampling and error bars");
        c->add_option("--resamples", o.resamples, "Monte Carlo resamples")->check(CLI::Range(100, 100000));
        c->add_option("--csv", o.csv_path, "Write sampled counts (stdout if omitted or '-')")->expected(0, 1);
    }

    auto* access = app.add_subcommand("access", "Holevo access table for every player subset");
    add_noise(access);
    add_json(access);
    access->add_flag("--ideal", o.ideal, "Noiseless resource");
    access->add_option("--tol", o.tol, "Classification tolerance in bits");

    auto* cq = app.add_subcommand("cq", "Classical-secret session");
    auto* qq = app.add_subcommand("qq", "Quantum-secret session");
    auto* hybrid = app.add_subcommand("hybrid", "Quantum secret with a classically shared pad");
    auto* sqq = app.add_subcommand("sqq", "Verified quantum-secret session");
    for (auto* c : {cq, qq, hybrid, sqq}) {
        add_session(c);
    }
    sqq->add_option("--s", o.s, "Test probability")->check(CLI::Range(0.0, 1.0));
    sqq->add_flag("--continue-on-fail", o.continue_on_fail, "Keep running after a failed test (statistics mode)");

    auto* sweep = app.add_subcommand("sweep", "Pair-state overlaps along a Bloch great circle");
    sweep->add_option("--pair", o.pair, "Two players, e.g. 1,2");
    sweep->add_option("--plane", o.plane, "zy | zx | xy");
    sweep->add_option("--steps", o.steps, "Angles");
    sweep->add_option("--csv", o.csv_path, "Write the sweep table (stdout if omitted or '-')")->expected(0, 1);
    add_json(sweep);

    auto* tomo = app.add_subcommand("tomo", "Tomographic reconstruction from counts");
    tomo->add_option("--counts", o.counts_path, "Counts CSV; otherwise simulate every setting");
    tomo->add_option("--shots", o.shots, "Shots per setting when simulating");
    tomo->add_option("--csv", o.csv_path, "Write simulated counts (stdout if omitted or '-')")->expected(0, 1);
    tomo->add_flag("--ideal", o.ideal, "Noiseless resource");
    add_seed(tomo);
    add_noise(tomo);
    add_json(tomo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*build) return cmd_build_state(o);
        if (*witness) return cmd_estimator(o, true);
        if (*fidelity) return cmd_estimator(o, false);
        if (*access) return cmd_access(o);
        if (*cq) return cmd_session(o, ProtocolId::CQ);
        if (*qq) return cmd_session(o, ProtocolId::QQ);
        if (*hybrid) return cmd_session(o, ProtocolId::Hybrid);
        if (*sqq) return cmd_session(o, ProtocolId::SQQ);
        if (*sweep) return cmd_sweep(o);
        if (*tomo) return cmd_tomo(o);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
