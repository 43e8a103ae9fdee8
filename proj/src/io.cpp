#include "cjl/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

namespace cjl::io {

Table& Table::add(std::string name, std::vector<double> column) {
    if (!columns.empty() && column.size() != columns.front().size())
        throw std::invalid_argument("Table: column '" + name + "' has the wrong length");
    names.push_back(std::move(name));
    columns.push_back(std::move(column));
    return *this;
}

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.front().size(); }

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

namespace {

std::vector<std::size_t> kept_rows(std::size_t rows, std::size_t stride) {
    if (stride == 0) stride = 1;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows; i += stride) out.push_back(i);
    if (rows > 0 && out.back() != rows - 1) out.push_back(rows - 1);
    return out;
}

}  // namespace

std::string to_csv(const Table& table, std::size_t stride) {
    std::string out;
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        if (c) out += ',';
        out += table.names[c];
    }
    out += '\n';
    for (std::size_t i : kept_rows(table.rows(), stride)) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_number(table.columns[c][i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& table, std::size_t stride) {
    const auto rows = kept_rows(table.rows(), stride);
    nlohmann::json cols = nlohmann::json::object();
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        auto arr = nlohmann::json::array();
        for (std::size_t i : rows) arr.push_back(table.columns[c][i]);
        cols[table.names[c]] = std::move(arr);
    }
    return {{"columns", table.names}, {"data", cols}};
}

nlohmann::json to_json(const SpectralData& sd) {
    auto roots = nlohmann::json::array();
    for (const auto& r : sd.indicial_roots) roots.push_back({r.minus, r.plus});
    return {{"N", sd.N},
            {"lambdas", sd.lambdas},
            {"Lambda_re", sd.Lambda_re},
            {"Lambda_im", sd.Lambda_im},
            {"indicial_roots", roots},
            {"j0", sd.j0},
            {"stable", sd.stable}};
}

nlohmann::json to_json(const DecayFit& fit) {
    return {{"exponent", fit.exponent},
            {"log_coeff", fit.log_coeff},
            {"window", {fit.window.lo, fit.window.hi}},
            {"residual_rms", fit.residual_rms},
            {"oscillatory", fit.oscillatory}};
}

nlohmann::json to_json(const DecayFit& fit, const RootMatch& match) {
    auto j = to_json(fit);
    j["nearest_root"] = match.nearest_root;
    j["gap"] = match.gap;
    j["nondegenerate"] = match.nondegenerate;
    return j;
}

nlohmann::json to_json(const DecayReport& rep) {
    auto wins = nlohmann::json::array();
    for (const auto& w : rep.windows)
        wins.push_back({{"k", w.k}, {"lo", std::ldexp(1.0, w.k)}, {"hi", std::ldexp(1.0, w.k + 1)},
                        {"sup", w.sup}, {"checked", w.checked}});
    return {{"weight", rep.weight},
            {"windows", wins},
            {"non_increasing", rep.non_increasing},
            {"worst_ratio", rep.worst_ratio},
            {"trend_exponent", rep.trend_exponent}};
}

nlohmann::json to_json(const NearOrigin& no) {
    return {{"exponent", no.exponent},
            {"log_coeff", no.log_coeff},
            {"log_detected", no.log_detected},
            {"leading_coeff", no.leading_coeff},
            {"predicted_coeff", no.predicted_coeff},
            {"window", {no.raw.window.lo, no.raw.window.hi}}};
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    if (!f) throw IoError("write failed for " + path.string());
}

void ensure_writable_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    const auto probe = dir / ".cjl_write_probe";
    write_file(probe, "");
    std::filesystem::remove(probe, ec);
}

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace cjl::io
