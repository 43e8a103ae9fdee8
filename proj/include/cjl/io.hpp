// Serialisation helpers: column tables to CSV/JSON, domain records to JSON,
// checked file writes and SHA-256 digests.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cjl/cone_spectra.hpp"
#include "cjl/decay_fit.hpp"
#include "cjl/jacobi_solver.hpp"

namespace cjl::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    Table& add(std::string name, std::vector<double> column);
    std::size_t rows() const;
};

// Header row, then every `stride`-th row (the last row is always kept).
// Numbers use %.10g.
std::string to_csv(const Table& table, std::size_t stride = 1);
nlohmann::json to_json(const Table& table, std::size_t stride = 1);

std::string format_number(double x);

nlohmann::json to_json(const SpectralData& sd);
nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const DecayFit& fit, const RootMatch& match);
nlohmann::json to_json(const DecayReport& rep);
nlohmann::json to_json(const NearOrigin& no);

// Writes bytes to path, creating nothing but the file itself.
void write_file(const std::filesystem::path& path, const std::string& bytes);
// Creates the directory (and parents) and checks that a file can be written there.
void ensure_writable_dir(const std::filesystem::path& dir);

std::string sha256_hex(const std::string& bytes);

}  // namespace cjl::io
