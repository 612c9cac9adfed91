// wqed.cpp — command-line front end: simulate / validate / platforms

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wqed/errors.hpp"
#include "wqed/run.hpp"

namespace {

int do_simulate(const std::string& config_path, const std::vector<std::string>& sets,
                const std::string& output_dir, int threads, bool quiet) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str() + "\n";
    for (const std::string& s : sets) {
        if (s.find('=') == std::string::npos) {
            std::cerr << "error: --set expects key=value, got '" << s << "'\n";
            return 1;
        }
        text += s + "\n";
    }
    if (!output_dir.empty()) text += "output_dir = " + output_dir + "\n";
    if (threads >= 0) text += "threads = " + std::to_string(threads) + "\n";

    const wqed::RunConfig cfg = wqed::parse_config(text);
    const wqed::RunManifest man = wqed::run(cfg);
    if (!quiet) {
        std::printf("wrote %zu artifact(s) to %s in %.2f s\n", man.files.size(),
                    cfg.output_dir.c_str(), man.wall_time_s);
        for (const auto& f : man.files)
            std::printf("  %s  (%llu bytes, fnv1a64 %s)\n", f.name.c_str(),
                        (unsigned long long)f.bytes, f.fnv1a64.c_str());
        for (const auto& [k, v] : man.diagnostics)
            std::printf("  %s = %.10g\n", k.c_str(), v);
    }
    if (!man.validation_passed) {
        if (!quiet) std::printf("validation FAILED\n");
        return 3;
    }
    return 0;
}

int do_validate(bool quiet) {
    const auto results = wqed::validate_suite();
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.pass;
        if (!quiet)
            std::printf("%s  %-28s delta=%.3e tol=%.3e\n", r.pass ? "PASS" : "FAIL",
                        r.name.c_str(), r.delta, r.tolerance);
    }
    if (!ok && quiet)
        for (const auto& r : results)
            if (!r.pass)
                std::fprintf(stderr, "FAIL %s delta=%.3e tol=%.3e\n", r.name.c_str(),
                             r.delta, r.tolerance);
    return ok ? 0 : 3;
}

int do_platforms(const std::string& data_path, bool data_set, const char* argv0,
                 double distance, double gamma, double vg) {
    if (distance > 0.0 || gamma > 0.0 || vg > 0.0) {
        if (!(distance > 0.0 && gamma > 0.0 && vg > 0.0)) {
            std::cerr << "error: --distance, --gamma, and --vg must be given together\n";
            return 1;
        }
        std::printf("eta = %.6g\n", distance * gamma / vg);
        return 0;
    }
    std::vector<std::filesystem::path> candidates{data_path};
    if (!data_set) {
        // Fall back to the table shipped next to the binary's source tree.
        std::error_code ec;
        auto exe = std::filesystem::canonical(argv0, ec);
        if (!ec)
            for (auto dir = exe.parent_path(); dir.has_parent_path() &&
                                              dir != dir.parent_path();
                 dir = dir.parent_path())
                candidates.push_back(dir / "data" / "platforms.csv");
    }
    for (const auto& p : candidates)
        if (std::ifstream in(p); in) {
            std::cout << in.rdbuf();
            return 0;
        }
    std::cerr << "error: cannot read platform table '" << data_path << "'\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-emitter waveguide QED: non-Markovian collective emission toolkit"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run a scenario from a config file");
    std::string config_path;
    std::vector<std::string> sets;
    std::string output_dir;
    int threads = -1;
    bool quiet = false;
    sim->add_option("config", config_path, "key = value config file")->required();
    sim->add_option("--set", sets, "override a config key (key=value), repeatable");
    sim->add_option("--output-dir", output_dir, "artifact directory (overrides config)");
    sim->add_option("--threads", threads, "worker threads (0 = hardware)");
    sim->add_flag("--quiet", quiet, "suppress the run summary");

    auto* val = app.add_subcommand("validate", "run the cross-solver oracle suite");
    bool vquiet = false;
    val->add_flag("--quiet", vquiet, "only report failures");

    auto* plat = app.add_subcommand("platforms",
                                    "print the platform table, or eta for -d/--gamma/--vg");
    std::string data_path = "data/platforms.csv";
    double distance = 0.0, pgamma = 0.0, vg = 0.0;
    auto* data_opt = plat->add_option("--data", data_path, "platform table path");
    plat->add_option("-d,--distance", distance, "emitter separation (m)");
    plat->add_option("--gamma", pgamma, "total emission rate (1/s)");
    plat->add_option("--vg", vg, "group velocity (m/s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return do_simulate(config_path, sets, output_dir, threads, quiet);
        if (val->parsed()) return do_validate(vquiet);
        return do_platforms(data_path, data_opt->count() > 0, argv[0], distance, pgamma, vg);
    } catch (const wqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 2;
    }
}
