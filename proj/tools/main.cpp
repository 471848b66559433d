// main.cpp — qugauge driver: argument parsing, config loading, error mapping
// Exit codes: 0 all deltas inside their gates, 1 a tolerance failed, 2 usage
// or config error. Errors go to stderr as one-line JSON objects so CI can
// parse them; data goes to stdout or to output.path from the config.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

void print_error_json(const std::string& message) {
    nlohmann::json j;
    j["error"] = message;
    std::cerr << j.dump() << "\n";
}

int write_payload(const qugauge::cli::RunConfig& cfg, const std::string& payload) {
    if (cfg.output.path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out) {
        print_error_json("cannot open output path \"" + cfg.output.path + "\"");
        return 2;
    }
    out << payload;
    out.close();
    if (!out) {
        print_error_json("failed while writing \"" + cfg.output.path + "\"");
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qugauge — two-level dynamics, geometric phases, and entanglement "
                 "entropies, every closed form cross-checked against brute-force oracles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qugauge::cli::qugauge_version);

    std::string config_path;
    int jobs = 1;
    bool meta = false;
    const std::pair<const char*, const char*> commands[] = {
        {"evolve", "closed-form doublet evolution vs an RK4 trajectory"},
        {"phases", "geometric phases, energy variance, and path-length invariants"},
        {"gauge-check", "evolution, covariant, and gauge-transformed residuals"},
        {"entropy", "static and dynamic linear entropies vs the purification tensor"},
        {"sweep", "one report row per value of a swept parameter"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "JSON run configuration file")->required();
        sub->add_option("--jobs", jobs, "worker threads for sweep points")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--meta", meta, "prepend tool/version/command metadata keys");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        print_error_json(std::string("usage: ") + e.what());
        return 2;
    }

    try {
        const qugauge::cli::RunConfig cfg = qugauge::cli::parse_config_file(config_path);
        const std::string name = app.get_subcommands().front()->get_name();
        const qugauge::cli::CommandResult result =
            qugauge::cli::run_command(name, cfg, {jobs, meta});
        const int write_rc = write_payload(cfg, result.payload);
        return write_rc != 0 ? write_rc : result.exit_code;
    } catch (const std::exception& e) {
        print_error_json(e.what());
        return 2;
    }
}
