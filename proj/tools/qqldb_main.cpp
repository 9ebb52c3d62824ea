// Copyright 2026 The qqldb Authors
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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <unistd.h>

#include "qqldb/repl.hpp"
#include "qqldb/session.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qqldb: a quantum query language database simulator"};
    std::string script;
    qqldb::SessionConfig config;
    bool quiet = false;
    app.add_option("--script", script, "Run a QQL script instead of the interactive shell")->check(CLI::ExistingFile);
    app.add_option("--max-qubits", config.max_qubits, "Largest register (data + temp qubits) allowed")
        ->check(CLI::Range(1u, 30u))
        ->capture_default_str();
    app.add_option("--seed", config.seed, "Seed for MEASURE statements without SEED")->capture_default_str();
    app.add_option("--epsilon", config.epsilon, "Smallest outcome probability accepted by post-selection")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_flag("--quiet", quiet, "No banner or prompts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qqldb::kExitUsage;
    }

    qqldb::Session session(config);
    if (!script.empty()) return qqldb::run_script(script, session, std::cout, std::cerr);

    const bool interactive = isatty(fileno(stdin)) != 0 && !quiet;
    if (interactive) std::cout << "qqldb shell; statements end with ';' (Ctrl-D to quit)\n";
    return qqldb::repl_loop(std::cin, std::cout, std::cerr, session, qqldb::ReplOptions{interactive});
}
