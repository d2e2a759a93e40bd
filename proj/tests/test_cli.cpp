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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "qfhe/pauli_key.hpp"
#include "qfhe/uqc.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << content;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("qfhe_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& name) { return scratch_dir() / name; }

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_file("stdout_" + std::to_string(counter));
    const fs::path err_path = scratch_file("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(QFHE_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    result.code = WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(QFHE_FIXTURE_DIR) + "/" + name;
}

std::string trim_newlines(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

}  // namespace

TEST_CASE("keygen emits the canonical key form and roundtrips") {
    const CliResult result = run_cli("keygen --n 2 --m 1 --seed 7");
    CHECK(result.code == 0);
    CHECK(result.out.rfind("qfhe-key v1 n=2 m=1 x=", 0) == 0);

    const qfhe::PauliKey key = qfhe::key_from_string(trim_newlines(result.out));
    CHECK(key.n() == 2);
    CHECK(key.m() == 1);
    // Fresh keys never mask the encoding register.
    CHECK(key.x_bits()[2] == 0);
    CHECK(key.z_bits()[2] == 0);

    const fs::path key_path = scratch_file("roundtrip.key");
    const CliResult to_file =
        run_cli("keygen --n 2 --m 1 --seed 7 --out " + key_path.string());
    CHECK(to_file.code == 0);
    CHECK(slurp(key_path) == result.out);
}

TEST_CASE("keygen is deterministic per seed") {
    const CliResult a = run_cli("keygen --n 16 --seed 1");
    const CliResult b = run_cli("keygen --n 16 --seed 1");
    const CliResult c = run_cli("keygen --n 16 --seed 2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("keygen honors the QFHE_SEED environment fallback") {
    const CliResult flagged = run_cli("keygen --n 4 --m 1 --seed 11");
    const CliResult env = run_cli("keygen --n 4 --m 1");
    CHECK(env.code == 0);
    // No flag, no env: seed defaults to zero.
    CHECK(env.out == run_cli("keygen --n 4 --m 1 --seed 0").out);
    CliResult from_env;
    {
        static int counter = 0;
        const fs::path out_path = scratch_file("env_out_" + std::to_string(counter++));
        const std::string cmd = "QFHE_SEED=11 " + std::string(QFHE_CLI_PATH) +
                                " keygen --n 4 --m 1 > " + out_path.string() + " 2> /dev/null";
        const int status = std::system(cmd.c_str());
        REQUIRE(WIFEXITED(status));
        from_env.code = WEXITSTATUS(status);
        from_env.out = slurp(out_path);
    }
    CHECK(from_env.code == 0);
    CHECK(from_env.out == flagged.out);
}

TEST_CASE("keygen rejects n = 0 with the precondition exit code") {
    const CliResult result = run_cli("keygen --n 0 --seed 1");
    CHECK(result.code == 2);
    CHECK(result.err.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("keygen").code == 2);
    CHECK(run_cli("not-a-command").code == 2);
    CHECK(run_cli("run --circuit missing_everything_else.json").code == 2);
    CHECK(run_cli("audit --suite bogus").code == 2);
}

TEST_CASE("run evaluates the shipped selector fixture") {
    const fs::path key_path = scratch_file("zero11.key");
    write_text(key_path, "qfhe-key v1 n=1 m=1 x=0 z=0\n");
    const fs::path out_path = scratch_file("selector_ix.state.json");
    const fs::path transcript_path = scratch_file("selector_ix.transcript.jsonl");

    const CliResult result = run_cli(
        "run --circuit " + fixture("selector_ix.qc.json") + " --key " + key_path.string() +
        " --data \"|0>\" --encoding 1 --out " + out_path.string() + " --transcript " +
        transcript_path.string());
    CHECK(result.code == 0);
    CHECK(result.out.find("complexity counters: pass") != std::string::npos);

    const nlohmann::json state = nlohmann::json::parse(slurp(out_path));
    CHECK(state["qubits"] == 1);
    REQUIRE(state["amplitudes"].size() == 2);

    // Expected result straight from the circuit matrix: the e = 1 block of
    // the fixture applied to |0>.
    const qfhe::Circuit circuit = qfhe::load_circuit(fixture("selector_ix.qc.json"));
    const Eigen::MatrixXcd block = oracle::data_block_unitary(circuit, {1});
    Eigen::VectorXcd input = Eigen::VectorXcd::Zero(2);
    input(0) = 1.0;
    const Eigen::VectorXcd expected = block * input;
    for (int i = 0; i < 2; ++i) {
        const qfhe::cdouble got(state["amplitudes"][i][0].get<double>(),
                                state["amplitudes"][i][1].get<double>());
        CHECK(std::abs(got - expected(i)) < 1e-9);
    }
    CHECK(std::abs(expected(1) - qfhe::cdouble(1, 0)) < 1e-12);

    // No R gates: transcript is eval_start, eval_done, trailer.
    std::istringstream lines(slurp(transcript_path));
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 3);
}

TEST_CASE("run with an empty circuit returns the input data") {
    const fs::path circuit_path = scratch_file("empty.qc.json");
    write_text(circuit_path, "{\"gates\":[],\"m\":0,\"n\":2}\n");
    const fs::path key_path = scratch_file("zero20.key");
    write_text(key_path, "qfhe-key v1 n=2 m=0 x=0 z=0\n");
    const fs::path out_path = scratch_file("empty.state.json");

    const CliResult result =
        run_cli("run --circuit " + circuit_path.string() + " --key " + key_path.string() +
                " --data \"|10>\" --out " + out_path.string());
    CHECK(result.code == 0);
    const nlohmann::json state = nlohmann::json::parse(slurp(out_path));
    CHECK(state["qubits"] == 2);
    CHECK(state["amplitudes"][2][0].get<double>() == doctest::Approx(1.0));
    CHECK(state["amplitudes"][0][0].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("two R gates over two repetitions log eight transfer messages") {
    const fs::path circuit_path = scratch_file("two_r.qc.json");
    write_text(circuit_path,
               "{\"gates\":[{\"g\":\"R\",\"q\":[1]},{\"g\":\"R\",\"q\":[2]}],"
               "\"m\":0,\"n\":2}\n");
    const fs::path key_path = scratch_file("zero20b.key");
    write_text(key_path, "qfhe-key v1 n=2 m=0 x=0 z=0\n");
    const fs::path transcript_path = scratch_file("two_r.transcript.jsonl");

    const CliResult result =
        run_cli("run --circuit " + circuit_path.string() + " --key " + key_path.string() +
                " --data \"|00>\" --reps 2 --seed 3 --transcript " + transcript_path.string());
    CHECK(result.code == 0);

    std::istringstream lines(slurp(transcript_path));
    std::string line;
    std::string last;
    std::size_t transfer_lines = 0;
    while (std::getline(lines, line)) {
        if (line.find("send_qubit") != std::string::npos ||
            line.find("return_qubit") != std::string::npos) {
            ++transfer_lines;
        }
        last = line;
    }
    CHECK(transfer_lines == 8);
    const nlohmann::json trailer = nlohmann::json::parse(last);
    CHECK(trailer["counters"]["qubit_transfer_messages"] == 8);
    CHECK(trailer["shape"]["repetitions"] == 2);
}

TEST_CASE("identical seeded runs are byte-identical") {
    const fs::path circuit_path = scratch_file("seeded.qc.json");
    write_text(circuit_path,
               "{\"gates\":[{\"g\":\"H\",\"q\":[1]},{\"g\":\"R\",\"q\":[1]},"
               "{\"g\":\"CNOT\",\"q\":[1,2]}],\"m\":0,\"n\":2}\n");
    const fs::path key_path = scratch_file("seeded.key");
    REQUIRE(run_cli("keygen --n 2 --seed 21 --out " + key_path.string()).code == 0);

    auto one_run = [&](const std::string& tag) {
        const fs::path out_path = scratch_file("seeded_" + tag + ".state.json");
        const fs::path transcript_path = scratch_file("seeded_" + tag + ".jsonl");
        const CliResult result = run_cli(
            "run --circuit " + circuit_path.string() + " --key " + key_path.string() +
            " --data \"|00>\" --seed 5 --run-id 9 --out " + out_path.string() +
            " --transcript " + transcript_path.string());
        REQUIRE(result.code == 0);
        return std::pair<std::string, std::string>(slurp(out_path), slurp(transcript_path));
    };
    const auto first = one_run("a");
    const auto second = one_run("b");
    CHECK(first.first == second.first);
    CHECK(first.second == second.second);
}

TEST_CASE("run maps failures to distinct exit codes") {
    const fs::path key_path = scratch_file("zero11b.key");
    write_text(key_path, "qfhe-key v1 n=1 m=1 x=0 z=0\n");

    SUBCASE("malformed circuit file exits 3") {
        const fs::path bad = scratch_file("bad.qc.json");
        write_text(bad, "{\"gates\": oops\n");
        const CliResult result = run_cli("run --circuit " + bad.string() + " --key " +
                                         key_path.string() + " --data \"|0>\" --encoding 1");
        CHECK(result.code == 3);
        CHECK(result.err.find("error:") != std::string::npos);
    }
    SUBCASE("malformed key file exits 3") {
        const fs::path bad_key = scratch_file("bad.key");
        write_text(bad_key, "qfhe-key v2 nope\n");
        const CliResult result =
            run_cli("run --circuit " + fixture("selector_ix.qc.json") + " --key " +
                    bad_key.string() + " --data \"|0>\" --encoding 1");
        CHECK(result.code == 3);
    }
    SUBCASE("unnormalized data file exits 3") {
        const fs::path data = scratch_file("unnormalized.json");
        write_text(data, "{\"qubits\":1,\"amplitudes\":[[0.5,0],[0.5,0]]}\n");
        const CliResult result =
            run_cli("run --circuit " + fixture("selector_ix.qc.json") + " --key " +
                    key_path.string() + " --data " + data.string() + " --encoding 1");
        CHECK(result.code == 3);
    }
    SUBCASE("a disturbed encoding register exits 4") {
        const fs::path circuit_path = scratch_file("desync.qc.json");
        write_text(circuit_path,
                   "{\"gates\":[{\"g\":\"H\",\"q\":[2]}],\"m\":1,\"n\":1}\n");
        const CliResult result =
            run_cli("run --circuit " + circuit_path.string() + " --key " + key_path.string() +
                    " --data \"|0>\" --encoding 0 --reps 2");
        CHECK(result.code == 4);
        CHECK(result.err.find("error:") != std::string::npos);
    }
    SUBCASE("missing circuit file exits 2") {
        const CliResult result =
            run_cli("run --circuit /nonexistent/missing.qc.json --key " + key_path.string() +
                    " --data \"|0>\" --encoding 1");
        CHECK(result.code == 2);
    }
    SUBCASE("key sized for a different circuit exits 2") {
        const fs::path wide_key = scratch_file("wide.key");
        REQUIRE(run_cli("keygen --n 3 --seed 2 --out " + wide_key.string()).code == 0);
        const CliResult result =
            run_cli("run --circuit " + fixture("selector_ix.qc.json") + " --key " +
                    wide_key.string() + " --data \"|0>\" --encoding 1");
        CHECK(result.code == 2);
    }
}

TEST_CASE("run works over the socket transport") {
    const fs::path key_path = scratch_file("zero11c.key");
    write_text(key_path, "qfhe-key v1 n=1 m=1 x=0 z=0\n");
    const fs::path out_path = scratch_file("socket.state.json");
    const CliResult result = run_cli(
        "run --circuit " + fixture("selector_ix_rframe.qc.json") + " --key " +
        key_path.string() + " --data \"|0>\" --encoding 1 --transport socket --seed 4 --out " +
        out_path.string());
    CHECK(result.code == 0);
    const nlohmann::json state = nlohmann::json::parse(slurp(out_path));
    // The r-framed selector with e = 1 applies R X R.
    const qfhe::Circuit circuit = qfhe::load_circuit(fixture("selector_ix_rframe.qc.json"));
    const Eigen::MatrixXcd block = oracle::data_block_unitary(circuit, {1});
    Eigen::VectorXcd input = Eigen::VectorXcd::Zero(2);
    input(0) = 1.0;
    const Eigen::VectorXcd expected = block * input;
    Eigen::VectorXcd got(2);
    for (int i = 0; i < 2; ++i) {
        got(i) = qfhe::cdouble(state["amplitudes"][i][0].get<double>(),
                               state["amplitudes"][i][1].get<double>());
    }
    CHECK(oracle::overlap(got, expected) >= 1.0 - 1e-9);
}

TEST_CASE("audit subcommands report and pass") {
    SUBCASE("conjugation text") {
        const CliResult result = run_cli("audit --suite conjugation");
        CHECK(result.code == 0);
        CHECK(result.out.find("56 cases") != std::string::npos);
        CHECK(result.out.find("all pass") != std::string::npos);
    }
    SUBCASE("conjugation json") {
        const CliResult result = run_cli("audit --suite conjugation --json");
        CHECK(result.code == 0);
        const nlohmann::json report = nlohmann::json::parse(result.out);
        CHECK(report["all_pass"] == true);
        CHECK(report["cases"].size() == 56);
    }
    SUBCASE("exhaustive mixing reports a zero deviation for n = 1") {
        const CliResult result = run_cli("audit --suite mixing --n 1 --seed 2");
        CHECK(result.code == 0);
        CHECK(result.out.find("exhaustive") != std::string::npos);
        CHECK(result.out.find("(pass)") != std::string::npos);
    }
    SUBCASE("sampled mixing for n = 4") {
        const CliResult result = run_cli("audit --suite mixing --n 4 --seed 2 --json");
        CHECK(result.code == 0);
        const nlohmann::json report = nlohmann::json::parse(result.out);
        CHECK(report["mode"] == "sampled");
        CHECK(report["samples"] == 10000);
        CHECK(report["pass"] == true);
    }
    SUBCASE("privacy") {
        const CliResult result = run_cli("audit --suite privacy --seed 3");
        CHECK(result.code == 0);
        CHECK(result.out.find("(pass)") != std::string::npos);
    }
    SUBCASE("aggregate") {
        const CliResult result = run_cli("audit --suite all --n 2 --seed 3");
        CHECK(result.code == 0);
        CHECK(result.out.find("conjugation suite") != std::string::npos);
        CHECK(result.out.find("qotp mixing") != std::string::npos);
        CHECK(result.out.find("interaction privacy") != std::string::npos);
    }
}
