#pragma once
#include <stdexcept>
#include <string>

namespace nlslab {

// Bad input file, unknown key, out-of-range parameter. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN in the field, Newton breakdown, singular modulation matrix. CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nlslab
