// Error taxonomy shared by all modules. The CLI maps each type to a distinct
// process exit code (see cli/commands.cpp).
#pragma once

#include <stdexcept>
#include <string>

namespace fractal_spectra {

// Malformed or out-of-contract input data (bad config, invalid word, bad letter).
struct invalid_input_error : std::runtime_error {
    explicit invalid_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internally inconsistent mathematical data (e.g. spectral radius at the
// theoretical exclusion point, singular exact solve that should not happen).
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem exceeds a resource cap (level cap, dense matrix cap).
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Required precomputed inputs are absent and recomputation was disabled.
struct missing_input_error : std::runtime_error {
    explicit missing_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Divergent iteration (renewal sum with expansive matrix).
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fractal_spectra
