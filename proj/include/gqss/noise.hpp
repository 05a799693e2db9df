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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gqss/info_measures.hpp"
#include "gqss/linalg.hpp"
#include "gqss/random.hpp"

namespace gqss {

enum class NoiseKind { White, DepolarizingPerQubit, QberFlip };

inline std::string noise_kind_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::White:
            return "white";
        case NoiseKind::DepolarizingPerQubit:
            return "depolarizing";
        case NoiseKind::QberFlip:
            return "qber-flip";
    }
    return "?";
}

/// white: parameter is the visibility v (rho -> v rho + (1-v) I/d).
/// depolarizing: per-qubit mixing weight p on the target qubits (all if empty).
/// qber-flip: probability of flipping a retrieved classical bit; as a state map,
/// X is applied to the target qubits with that probability.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::White;
    double parameter = 1.0;
    std::vector<std::size_t> targets;

    NoiseSpec() = default;
    NoiseSpec(NoiseKind k, double p, std::vector<std::size_t> t = {}) : kind(k), parameter(p), targets(std::move(t)) {
        if (!(parameter >= 0.0 && parameter <= 1.0)) {
            throw ArgumentError("noise parameter must lie in [0, 1]");
        }
        if (kind == NoiseKind::White && !targets.empty()) {
            throw ArgumentError("white noise acts on the whole register");
        }
    }

    static NoiseSpec none() { return NoiseSpec(NoiseKind::White, 1.0); }
    static NoiseSpec white(double v) { return NoiseSpec(NoiseKind::White, v); }

    bool is_identity() const { return parameter == (kind == NoiseKind::White ? 1.0 : 0.0); }

    /// "white:0.69", "depolarizing:0.05", "depolarizing:0.05@1,2", "qber-flip:0.14" ("flip" also accepted).
    static NoiseSpec parse(std::string_view text) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw ArgumentError("noise spec must look like kind:param");
        }
        const std::string kind(text.substr(0, colon));
        std::string rest(text.substr(colon + 1));
        std::vector<std::size_t> targets;
        if (const auto at = rest.find('@'); at != std::string::npos) {
            std::stringstream ss(rest.substr(at + 1));
            std::string item;
            while (std::getline(ss, item, ',')) {
                targets.push_back(parse_index(item));
            }
            rest.resize(at);
        }
        double p = 0.0;
        try {
            std::size_t used = 0;
            p = std::stod(rest, &used);
            if (used != rest.size()) {
                throw ArgumentError("trailing characters");
            }
        } catch (const std::exception&) {
            throw ArgumentError("bad noise parameter '" + rest + "'");
        }
        if (kind == "white") {
            return NoiseSpec(NoiseKind::White, p, std::move(targets));
        }
        if (kind == "depolarizing" || kind == "depolarizing-per-qubit" || kind == "depol") {
            return NoiseSpec(NoiseKind::DepolarizingPerQubit, p, std::move(targets));
        }
        if (kind == "qber-flip" || kind == "flip") {
            return NoiseSpec(NoiseKind::QberFlip, p, std::move(targets));
        }
        throw ArgumentError("unknown noise kind '" + kind + "'");
    }

    std::string to_string() const {
        std::ostringstream os;
        os << noise_kind_name(kind) << ':' << parameter;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            os << (i ? ',' : '@') << targets[i];
        }
        return os.str();
    }

   private:
    static std::size_t parse_index(const std::string& s) {
        try {
            return static_cast<std::size_t>(std::stoul(s));
        } catch (const std::exception&) {
            throw ArgumentError("bad qubit index '" + s + "'");
        }
    }
};

/// v such that v + (1-v)/2^n = fidelity.
inline double white_noise_visibility(double fidelity, std::size_t n) {
    const double floor = 1.0 / static_cast<double>(std::size_t{1} << n);
    return (fidelity - floor) / (1.0 - floor);
}

inline DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseSpec& spec) {
    const std::size_t n = rho.qubits();
    std::vector<std::size_t> targets = spec.targets;
    if (targets.empty()) {
        for (std::size_t q = 0; q < n; ++q) {
            targets.push_back(q);
        }
    }
    for (auto q : targets) {
        if (q >= n) {
            throw ArgumentError("noise target qubit out of range");
        }
    }
    const double p = spec.parameter;
    switch (spec.kind) {
        case NoiseKind::White: {
            const double d = static_cast<double>(rho.dim());
            Matrix m = rho.matrix() * Complex(p) + Matrix::identity(rho.dim()) * Complex((1.0 - p) / d);
            return DensityMatrix::normalized(std::move(m));
        }
        case NoiseKind::DepolarizingPerQubit: {
            // (1-p) rho + (p/4) sum_{P in IXYZ} P rho P = (1-p) rho + p (I/2 (x) Tr_q rho)
            Matrix m = rho.matrix();
            for (auto q : targets) {
                Matrix acc = m * Complex(1.0 - 0.75 * p);
                for (Pauli P : {Pauli::X, Pauli::Y, Pauli::Z}) {
                    acc += conjugate_local(m, pauli_matrix(P), q, n) * Complex(0.25 * p);
                }
                m = std::move(acc);
            }
            return DensityMatrix::normalized(std::move(m));
        }
        case NoiseKind::QberFlip: {
            Matrix m = rho.matrix();
            for (auto q : targets) {
                m = m * Complex(1.0 - p) + conjugate_local(m, gates::X(), q, n) * Complex(p);
            }
            return DensityMatrix::normalized(std::move(m));
        }
    }
    throw InternalError("unhandled noise kind");
}

/// Classical use of qber-flip: flips `bit` with the spec's probability. Other kinds pass through.
inline int apply_bit_noise(int bit, const NoiseSpec& spec, Rng& rng) {
    if (spec.kind == NoiseKind::QberFlip && spec.parameter > 0.0 && rng.bernoulli(spec.parameter)) {
        return bit ^ 1;
    }
    return bit;
}

// ---------------------------------------------------------------------------
// Counts

/// Outcome bitstrings list qubit 0 first; '0' is the +1 eigenvalue.
struct CountRecord {
    std::string setting;  // one of X, Y, Z per qubit
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;

    void add(const std::string& outcome, std::uint64_t c) {
        if (outcome.size() != setting.size()) {
            throw ArgumentError("outcome '" + outcome + "' does not match setting " + setting);
        }
        counts[outcome] += c;
        shots += c;
    }
};

namespace detail {

inline const Matrix& basis_rotation(char b) {
    // U with U P U^dag = Z, so Z-basis statistics of U rho U^dag are P-basis statistics of rho.
    static const Matrix hx = gates::H();
    static const Matrix hy = gates::H() * gates::S().adjoint();
    static const Matrix id = gates::I();
    switch (b) {
        case 'X':
            return hx;
        case 'Y':
            return hy;
        case 'Z':
            return id;
    }
    throw ArgumentError(std::string("measurement setting letter must be X, Y or Z, got '") + b + "'");
}

inline std::string bits_string(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if (bit_of(index, q, n)) {
            s[q] = '1';
        }
    }
    return s;
}

}  // namespace detail

/// Born distribution over outcome indices for a product Pauli setting.
inline std::vector<double> outcome_probabilities(const DensityMatrix& rho, std::string_view setting) {
    const std::size_t n = rho.qubits();
    if (setting.size() != n) {
        throw ArgumentError("setting length does not match qubit count");
    }
    Matrix m = rho.matrix();
    for (std::size_t q = 0; q < n; ++q) {
        const Matrix& u = detail::basis_rotation(setting[q]);
        if (setting[q] != 'Z') {
            m = conjugate_local(m, u, q, n);
        }
    }
    std::vector<double> p(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        p[i] = std::max(0.0, m(i, i).real());
    }
    return p;
}

inline CountRecord sample_counts(const DensityMatrix& rho, std::string_view setting, std::uint64_t shots, Rng& rng) {
    if (shots == 0) {
        throw ArgumentError("shots must be at least 1");
    }
    const auto p = outcome_probabilities(rho, setting);
    std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
    std::vector<std::uint64_t> hist(p.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++hist[dist(rng.engine())];
    }
    CountRecord rec{std::string(setting), {}, 0};
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] != 0) {
            rec.add(detail::bits_string(i, rho.qubits()), hist[i]);
        }
    }
    return rec;
}

/// Signed expectation of `term` from a record whose setting measures it.
/// Returns nullopt when the record is empty.
inline std::optional<double> expectation_from_counts(const CountRecord& rec, const PauliString& term) {
    if (!term.hermitian()) {
        throw ArgumentError("expectation needs a Hermitian Pauli string");
    }
    if (!basis_covers(rec.setting, term)) {
        throw ArgumentError("setting " + rec.setting + " does not measure " + term.to_string());
    }
    if (rec.shots == 0) {
        return std::nullopt;
    }
    double acc = 0.0;
    for (const auto& [outcome, c] : rec.counts) {
        int parity = 0;
        for (std::size_t q = 0; q < term.qubits(); ++q) {
            if (term[q] != Pauli::I && outcome[q] == '1') {
                parity ^= 1;
            }
        }
        acc += parity ? -static_cast<double>(c) : static_cast<double>(c);
    }
    return term.sign() * acc / static_cast<double>(rec.shots);
}

inline const CountRecord* find_record(const std::vector<CountRecord>& recs, const PauliString& term) {
    for (const auto& r : recs) {
        if (basis_covers(r.setting, term)) {
            return &r;
        }
    }
    return nullptr;
}

/// A statistic computed from count records; returns nullopt if undefined on that data.
using CountStatistic = std::function<std::optional<double>(const std::vector<CountRecord>&)>;

inline CountStatistic expectation_statistic(PauliString term) {
    return [term = std::move(term)](const std::vector<CountRecord>& recs) -> std::optional<double> {
        const auto* r = find_record(recs, term);
        if (!r) {
            throw ArgumentError("no record measures " + term.to_string());
        }
        return expectation_from_counts(*r, term);
    };
}

inline CountStatistic witness_statistic() {
    return [](const std::vector<CountRecord>& recs) -> std::optional<double> {
        const auto w = witness_spec();
        double v = w.constant;
        for (const auto& t : w.terms) {
            const auto* r = find_record(recs, t.op);
            if (!r) {
                throw ArgumentError("no record measures witness term " + t.op.to_string());
            }
            const auto e = expectation_from_counts(*r, t.op);
            if (!e) {
                return std::nullopt;
            }
            v += t.coefficient * *e;
        }
        return v;
    };
}

inline CountStatistic fidelity_statistic() {
    return [](const std::vector<CountRecord>& recs) -> std::optional<double> {
        double f = 1.0;
        for (const auto& t : fidelity_terms()) {
            const auto* r = find_record(recs, t);
            if (!r) {
                throw ArgumentError("no record measures fidelity term " + t.to_string());
            }
            const auto e = expectation_from_counts(*r, t);
            if (!e) {
                return std::nullopt;
            }
            f += *e;
        }
        return f / 32.0;
    };
}

struct MonteCarloResult {
    double mean;
    double std;
    std::size_t retained;
};

/// Poisson resampling of every count. Resample i draws from rng-derived
/// stream i, so the result does not depend on evaluation order.
inline MonteCarloResult monte_carlo_error(const std::vector<CountRecord>& records, const CountStatistic& statistic,
                                          std::size_t resamples, Rng& rng) {
    if (resamples < 100) {
        throw ArgumentError("monte_carlo_error needs at least 100 resamples");
    }
    const std::uint64_t base = rng.engine()();
    std::vector<double> values;
    values.reserve(resamples);
    for (std::size_t i = 0; i < resamples; ++i) {
        Rng r(base);
        Rng stream = r.split(i);
        std::vector<CountRecord> re;
        re.reserve(records.size());
        for (const auto& rec : records) {
            CountRecord copy{rec.setting, {}, 0};
            for (const auto& [outcome, c] : rec.counts) {
                copy.add(outcome, stream.poisson(static_cast<double>(c)));
            }
            re.push_back(std::move(copy));
        }
        if (auto v = statistic(re)) {
            values.push_back(*v);
        }
    }
    if (values.size() * 10 < resamples * 9) {
        throw ArgumentError("statistic undefined on more than 10% of resamples");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(values.size() > 1 ? values.size() - 1 : 1);
    return {mean, std::sqrt(var), values.size()};
}

// ---------------------------------------------------------------------------
// Tomography

/// All 4^n - 1 non-identity unsigned strings, in base-4 order of (I,X,Y,Z).
inline std::vector<PauliString> all_pauli_strings(std::size_t n) {
    std::vector<PauliString> out;
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t k = 1; k < total; ++k) {
        std::vector<Pauli> f(n);
        std::size_t x = k;
        for (std::size_t q = n; q-- > 0;) {
            f[q] = static_cast<Pauli>(x & 3);
            x >>= 2;
        }
        out.emplace_back(std::move(f));
    }
    return out;
}

/// Clips negative eigenvalues and renormalizes.
inline DensityMatrix project_to_states(const Matrix& h) {
    auto eig = hermitian_eig(h);
    const std::size_t d = h.rows();
    Matrix m(d, d);
    double total = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double lam = std::max(eig.values[k], 0.0);
        total += lam;
        if (lam == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                m(r, c) += lam * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
            }
        }
    }
    if (total <= 0.0) {
        return DensityMatrix::maximally_mixed(detail::qubits_for_dim(d));
    }
    return DensityMatrix::normalized(std::move(m));
}

/// Linear inversion; strings absent from the map are taken as expectation 0.
inline DensityMatrix tomography_reconstruct(const std::vector<std::pair<PauliString, double>>& expectations,
                                            std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw ArgumentError("tomography qubit count out of range");
    }
    const std::size_t d = std::size_t{1} << n;
    Matrix m = Matrix::identity(d);
    for (const auto& [p, e] : expectations) {
        if (p.qubits() != n) {
            throw ArgumentError("expectation for " + p.to_string() + " has the wrong qubit count");
        }
        if (!p.hermitian()) {
            throw ArgumentError("tomography needs Hermitian Pauli strings");
        }
        if (p.is_identity()) {
            continue;
        }
        m += p.to_matrix() * Complex(e);  // the sign cancels between p and e
    }
    m *= Complex(1.0 / static_cast<double>(d));
    return project_to_states(m);
}

inline std::vector<std::pair<PauliString, double>> exact_expectations(const DensityMatrix& rho) {
    std::vector<std::pair<PauliString, double>> out;
    for (auto& p : all_pauli_strings(rho.qubits())) {
        const double e = expectation(rho, p);
        out.emplace_back(std::move(p), e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_counts_csv(std::ostream& os, const std::vector<CountRecord>& records) {
    os << "setting,outcome_bitstring,count\n";
    for (const auto& r : records) {
        for (const auto& [outcome, c] : r.counts) {
            os << r.setting << ',' << outcome << ',' << c << '\n';
        }
    }
}

inline std::vector<CountRecord> read_counts_csv(std::istream& is) {
    std::vector<CountRecord> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || (lineno == 1 && line.rfind("setting", 0) == 0)) {
            continue;
        }
        std::stringstream ss(line);
        std::string setting, outcome, count;
        if (!std::getline(ss, setting, ',') || !std::getline(ss, outcome, ',') || !std::getline(ss, count)) {
            throw ArgumentError("counts CSV line " + std::to_string(lineno) + " needs three fields");
        }
        std::uint64_t c = 0;
        try {
            c = std::stoull(count);
        } catch (const std::exception&) {
            throw ArgumentError("counts CSV line " + std::to_string(lineno) + ": bad count");
        }
        auto [it, fresh] = index.try_emplace(setting, out.size());
        if (fresh) {
            out.push_back(CountRecord{setting, {}, 0});
        }
        out[it->second].add(outcome, c);
    }
    return out;
}

}  // namespace gqss
