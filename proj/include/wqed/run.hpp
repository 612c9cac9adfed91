// run.hpp — Scenario runner: flat key=value configs in, CSV/JSON artifacts
// and a digest manifest out

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wqed/field.hpp"
#include "wqed/model.hpp"

namespace wqed {

enum class Scenario {
    Amplitude,        // Fig. 2: |c(tau)|^2 for the eta_list presets
    Intensity,        // Fig. 4: space-time intensity maps, both parities
    Cooperativity,    // C vs eta, both parities
    NonMarkovianity,  // Fig. S2: coherence backflow trace + scalar N
    Entropy,          // Fig. S3: S(tau) and the steady-state curve vs eta
    CriticalScan,     // instantaneous rate vs eta at fixed beta
    RateScan,         // Fig. 3: gamma_max/gamma and eta_c vs beta
    Validate,         // cross-solver oracle suite
};

enum class SolverChoice { BranchSum, Series, DDE, All };

struct RunConfig {
    Scenario scenario{Scenario::Amplitude};
    // Model
    double gamma{1.0};
    double beta{1.0};
    double eta{0.5};
    int winding{1};
    // Initial state: parity, or the general Bloch pair when general_state
    // (config key state = parity | general).
    Parity parity{Parity::Sup};
    bool general_state{false};
    double theta{0.0};
    double phi{0.0};
    SolverChoice solver{SolverChoice::BranchSum};
    // Grids
    double tau_max{10.0};
    int tau_points{1001};
    double xi_min{-2.0};
    double xi_max{2.0};
    int xi_points{401};
    double eta_min{0.01};
    double eta_max{2.0};
    int eta_points{100};
    double beta_min{0.01};
    double beta_max{1.0};
    int beta_points{100};
    // Amplitude presets: comma list of eta values plus the words
    // "critical" (eta_c(beta)) and "independent" (the no-feedback curve).
    std::string eta_list{"0,0.25,critical,1,2,independent"};
    // Solver/measure knobs
    FieldMode field_mode{FieldMode::Envelope};
    double step_hint{0.01};
    int theta_samples{9};
    int n_max{0};
    double tolerance{1e-6};
    std::string output_dir{"out"};
    int threads{0};  // 0 = hardware concurrency

    bool operator==(const RunConfig&) const = default;
};

struct ValidationResult {
    std::string name;
    double delta{0.0};      // measured deviation
    double tolerance{0.0};  // allowed deviation
    bool pass{false};
};

struct RunManifest {
    struct FileEntry {
        std::string name;  // relative to output_dir
        std::uint64_t bytes{0};
        std::string fnv1a64;  // hex content digest
    };
    std::string config_text;  // render(config) echo
    std::string library_version;
    double wall_time_s{0.0};
    std::map<std::string, double> diagnostics;
    std::vector<FileEntry> files;
    std::vector<ValidationResult> validation;  // Validate scenario only
    bool validation_passed{true};
};

// Parses the documented flat key = value format ('#' comments).  Unknown
// keys, malformed values, and out-of-range settings raise ConfigError naming
// the key.
RunConfig parse_config(const std::string& text);

// Canonical config text; parse_config(render(c)) == c.
std::string render(const RunConfig& config);

// Executes the scenario, writes CSV artifacts plus run_manifest.json into
// config.output_dir, and returns the manifest.  Raises ConfigError before
// any computation for an unusable config or output directory.
RunManifest run(const RunConfig& config);

// The cross-solver oracle suite behind the Validate scenario.
std::vector<ValidationResult> validate_suite();

}  // namespace wqed
