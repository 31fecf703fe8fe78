#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rotor {

struct RunConfig {
    std::string subcommand;
    std::filesystem::path map_file;
    bool strict_expansion = false;

    std::optional<std::string> alpha; ///< exact rational text
    long r = 2;
    std::size_t n = 10;
    std::optional<long> weight;
    std::size_t samples = 101;
    std::size_t m = 2;
    std::size_t k = 4;
    std::optional<std::string> epsilon;
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    std::optional<std::filesystem::path> out;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one subcommand. Results go to `out` (or to config.out, written
/// atomically, for CSV and JSON artifacts); diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "%.12g".
std::string format_real(double value);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace rotor
