// Copyright 2026 The qfhe-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfhe/audit.hpp"
#include "qfhe/circuit.hpp"
#include "qfhe/pauli_key.hpp"
#include "qfhe/protocol.hpp"
#include "qfhe/rng.hpp"
#include "qfhe/transport.hpp"

namespace {

using qfhe::Error;
using qfhe::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitProtocol = 4;
constexpr int kExitAudit = 5;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse_error:
            return kExitParse;
        case ErrorKind::protocol_desync:
        case ErrorKind::custody_violation:
        case ErrorKind::encoding_mismatch:
            return kExitProtocol;
        default:
            return kExitUsage;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out << content;
    if (!out.flush()) throw Error(ErrorKind::io_error, "short write to " + path);
}

/// Data is either a ket over basis bits ("|01>", unicode bracket accepted)
/// or a path to an amplitude JSON file {"qubits": q, "amplitudes": [[re,im]...]}.
qfhe::StateVector parse_data(const std::string& spec) {
    if (!spec.empty() && spec.front() == '|') {
        std::string body = spec.substr(1);
        if (body.size() >= 3 && body.compare(body.size() - 3, 3, "\xe2\x9f\xa9") == 0) {
            body.resize(body.size() - 3);
        } else if (!body.empty() && body.back() == '>') {
            body.pop_back();
        }
        return qfhe::StateVector::basis(qfhe::bits_from_string(body));
    }
    const nlohmann::json root = [&] {
        try {
            return nlohmann::json::parse(read_file(spec));
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorKind::parse_error, std::string("data file: ") + e.what());
        }
    }();
    if (!root.is_object() || !root.contains("qubits") || !root["qubits"].is_number_unsigned() ||
        !root.contains("amplitudes") || !root["amplitudes"].is_array()) {
        throw Error(ErrorKind::parse_error,
                    "data file needs {\"qubits\": q, \"amplitudes\": [[re, im], ...]}");
    }
    const std::size_t qubits = root["qubits"].get<std::size_t>();
    const auto& list = root["amplitudes"];
    if (list.size() != (std::size_t{1} << qubits)) {
        throw Error(ErrorKind::parse_error, "amplitude count does not match qubits");
    }
    std::vector<qfhe::cdouble> amps;
    amps.reserve(list.size());
    double norm_sq = 0.0;
    for (const auto& pair : list) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw Error(ErrorKind::parse_error, "amplitudes must be [re, im] pairs");
        }
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        norm_sq += std::norm(amps.back());
    }
    const double norm = std::sqrt(norm_sq);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw Error(ErrorKind::parse_error,
                    "amplitudes have norm " + std::to_string(norm) + ", expected 1 within 1e-9");
    }
    for (auto& a : amps) a /= norm;
    return qfhe::StateVector::from_amplitudes(std::move(amps));
}

std::string state_to_json(const qfhe::StateVector& state) {
    nlohmann::json root;
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const qfhe::cdouble a = state.amplitude(i);
        list.push_back({a.real(), a.imag()});
    }
    root["amplitudes"] = std::move(list);
    root["qubits"] = state.num_qubits();
    return root.dump() + "\n";
}

/// Small deterministic state generator for the audit suites.
qfhe::StateVector random_state(std::size_t qubits, std::mt19937_64& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<qfhe::cdouble> amps(std::size_t{1} << qubits);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = {dist(gen), dist(gen)};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
    return qfhe::StateVector::from_amplitudes(std::move(amps));
}

struct KeygenArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_keygen(const KeygenArgs& args) {
    qfhe::RandomBitSource rng(args.seed);
    const qfhe::PauliKey key = qfhe::keygen(args.n, args.m, rng);
    const std::string text = qfhe::key_to_string(key) + "\n";
    if (args.out.empty()) {
        std::cout << text;
    } else {
        write_file(args.out, text);
    }
    return kExitOk;
}

struct RunArgs {
    std::string circuit_path;
    std::string key_path;
    std::string data_spec;
    std::string encoding;
    std::size_t reps = 1;
    std::string transport = "inproc";
    std::string schedule = "lazy";
    std::uint64_t seed = 0;
    std::uint64_t run_id = 0;
    std::string out;
    std::string transcript_path;
};

int cmd_run(const RunArgs& args) {
    qfhe::EvaluationPlan plan;
    plan.circuit = qfhe::load_circuit(args.circuit_path);
    plan.encoding = qfhe::bits_from_string(args.encoding);
    plan.repetitions = args.reps;

    const qfhe::PauliKey ek = qfhe::key_from_string([&] {
        std::string text = read_file(args.key_path);
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        return text;
    }());
    const qfhe::StateVector data = parse_data(args.data_spec);

    qfhe::DelegationOptions options;
    options.schedule = args.schedule == "precomputed" ? qfhe::ScheduleMode::precomputed
                                                      : qfhe::ScheduleMode::lazy;
    options.threaded = args.transport == "socket";
    options.run_id = args.run_id;

    qfhe::RandomBitSource rng(args.seed);
    std::unique_ptr<qfhe::Transport> transport;
    if (args.transport == "socket") {
        transport = std::make_unique<qfhe::SocketTransport>();
    } else {
        transport = std::make_unique<qfhe::InProcTransport>();
    }

    const qfhe::DelegationResult result =
        qfhe::run_delegation(data, ek, plan, *transport, rng, options);

    std::cout << qfhe::audit::complexity_counters(result.transcript).to_text();
    if (!args.out.empty()) write_file(args.out, state_to_json(result.plain));
    if (!args.transcript_path.empty()) {
        write_file(args.transcript_path, result.transcript.to_json_lines());
    }
    return kExitOk;
}

struct AuditArgs {
    std::string suite = "all";
    std::size_t n = 2;
    std::uint64_t seed = 0;
    bool json = false;
};

int audit_conjugation(const AuditArgs& args) {
    const qfhe::audit::ConjugationReport report = qfhe::audit::conjugation_suite();
    std::cout << (args.json ? report.to_json() + "\n" : report.to_text());
    return report.all_pass ? kExitOk : kExitAudit;
}

int audit_mixing(const AuditArgs& args) {
    std::mt19937_64 gen(args.seed);
    bool pass = true;
    std::ostringstream text;
    if (args.n <= 3) {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double dev = qfhe::audit::qotp_mixing_check(args.n, random_state(args.n, gen));
            if (dev > worst) worst = dev;
        }
        const double basis_dev =
            qfhe::audit::qotp_mixing_check(args.n, qfhe::StateVector(args.n));
        if (basis_dev > worst) worst = basis_dev;
        pass = worst < 1e-10;
        if (args.json) {
            nlohmann::json root;
            root["max_deviation"] = worst;
            root["mode"] = "exhaustive";
            root["n"] = args.n;
            root["pass"] = pass;
            text << root.dump() << "\n";
        } else {
            text << "qotp mixing (exhaustive, n=" << args.n << "): max deviation " << worst
                 << (pass ? " (pass)" : " (FAIL)") << "\n";
        }
    } else {
        const qfhe::audit::SampledMixingResult result = qfhe::audit::qotp_mixing_check_sampled(
            args.n, random_state(args.n, gen), 10000, args.seed);
        pass = result.max_deviation < result.stderr_bound;
        if (args.json) {
            nlohmann::json root;
            root["max_deviation"] = result.max_deviation;
            root["mode"] = "sampled";
            root["n"] = args.n;
            root["pass"] = pass;
            root["samples"] = result.samples;
            root["stderr_bound"] = result.stderr_bound;
            text << root.dump() << "\n";
        } else {
            text << "qotp mixing (sampled, n=" << args.n << ", " << result.samples
                 << " keys): deviation " << result.max_deviation << " vs bound "
                 << result.stderr_bound << (pass ? " (pass)" : " (FAIL)") << "\n";
        }
    }
    std::cout << text.str();
    return pass ? kExitOk : kExitAudit;
}

int audit_privacy(const AuditArgs& args) {
    std::mt19937_64 gen(args.seed);
    double worst_dev = 0.0;
    double worst_diff = 0.0;
    for (int i = 0; i < 10; ++i) {
        const qfhe::StateVector incoming = random_state(2, gen);
        const auto avg0 = qfhe::audit::interaction_averaged_state(0, incoming, 1);
        const auto avg1 = qfhe::audit::interaction_averaged_state(1, incoming, 1);
        worst_dev = std::max(worst_dev, avg0.max_entry_distance(qfhe::maximally_mixed(1)));
        worst_dev = std::max(worst_dev, avg1.max_entry_distance(qfhe::maximally_mixed(1)));
        worst_diff = std::max(worst_diff, avg0.max_entry_distance(avg1.entries()));
    }
    const bool pass = worst_dev < 1e-10 && worst_diff < 1e-10;
    if (args.json) {
        nlohmann::json root;
        root["max_deviation"] = worst_dev;
        root["max_xbit_difference"] = worst_diff;
        root["pass"] = pass;
        std::cout << root.dump() << "\n";
    } else {
        std::cout << "interaction privacy: max deviation from I/2 " << worst_dev
                  << ", max x-bit difference " << worst_diff << (pass ? " (pass)" : " (FAIL)")
                  << "\n";
    }
    return pass ? kExitOk : kExitAudit;
}

int cmd_audit(const AuditArgs& args) {
    if (args.suite == "conjugation") return audit_conjugation(args);
    if (args.suite == "mixing") return audit_mixing(args);
    if (args.suite == "privacy") return audit_privacy(args);
    int rc = audit_conjugation(args);
    const int mixing_rc = audit_mixing(args);
    if (rc == kExitOk) rc = mixing_rc;
    const int privacy_rc = audit_privacy(args);
    if (rc == kExitOk) rc = privacy_rc;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QOTP-based homomorphic evaluation simulator"};
    app.require_subcommand(1);

    KeygenArgs keygen_args;
    CLI::App* keygen_cmd = app.add_subcommand("keygen", "generate an encryption key");
    keygen_cmd->add_option("--n", keygen_args.n, "data qubits")->required();
    keygen_cmd->add_option("--m", keygen_args.m, "encoding qubits");
    keygen_cmd->add_option("--seed", keygen_args.seed, "random seed")->envname("QFHE_SEED");
    keygen_cmd->add_option("--out", keygen_args.out, "key file path (stdout when omitted)");

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "delegate one circuit evaluation");
    run_cmd->add_option("--circuit", run_args.circuit_path, "circuit JSON path")->required();
    run_cmd->add_option("--key", run_args.key_path, "key file path")->required();
    run_cmd->add_option("--data", run_args.data_spec, "ket string or amplitude JSON path")
        ->required();
    run_cmd->add_option("--encoding", run_args.encoding, "encoding bits, e.g. 01");
    run_cmd->add_option("--reps", run_args.reps, "circuit repetitions");
    run_cmd->add_option("--transport", run_args.transport, "inproc or socket")
        ->check(CLI::IsMember({"inproc", "socket"}));
    run_cmd->add_option("--schedule", run_args.schedule, "lazy or precomputed")
        ->check(CLI::IsMember({"lazy", "precomputed"}));
    run_cmd->add_option("--seed", run_args.seed, "random seed for the (r, r') draws")
        ->envname("QFHE_SEED");
    run_cmd->add_option("--run-id", run_args.run_id, "run identifier")->envname("QFHE_RUN_ID");
    run_cmd->add_option("--out", run_args.out, "result state JSON path");
    run_cmd->add_option("--transcript", run_args.transcript_path, "transcript JSON-lines path");

    AuditArgs audit_args;
    CLI::App* audit_cmd = app.add_subcommand("audit", "run the security audit suites");
    audit_cmd->add_option("--suite", audit_args.suite, "conjugation, mixing, privacy or all")
        ->check(CLI::IsMember({"conjugation", "mixing", "privacy", "all"}));
    audit_cmd->add_option("--n", audit_args.n, "register size for the mixing check");
    audit_cmd->add_option("--seed", audit_args.seed, "random seed for audit states")
        ->envname("QFHE_SEED");
    audit_cmd->add_flag("--json", audit_args.json, "emit JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*keygen_cmd) return cmd_keygen(keygen_args);
        if (*run_cmd) return cmd_run(run_args);
        if (*audit_cmd) return cmd_audit(audit_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
