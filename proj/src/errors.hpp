#pragma once

#include <stdexcept>
#include <string>

namespace invsim {

// Guard or singularity violation during numeric evaluation (maps to exit code 2).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration, file contents or I/O failure (maps to exit code 3).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace invsim
