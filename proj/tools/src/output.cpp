// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh_cli/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace unruh::cli {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    auto const [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void CsvTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns_.size())
        throw std::logic_error("CsvTable: row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::render(std::string const& config_hash) const
{
    std::ostringstream out;
    for (auto const& c : comments_)
        out << "# " << c << "\r\n";
    out << "# config_sha256: " << config_hash << "\r\n";
    out << "# units:";
    for (auto const& c : columns_)
        out << ' ' << c.name << '[' << (c.unit.empty() ? "1" : c.unit) << ']';
    out << "\r\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << csv_field(columns_[i].name);
    out << "\r\n";
    for (auto const& row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out << ',';
            std::visit(
                [&out](auto const& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_number(v);
                    else if constexpr (std::is_same_v<T, long long>)
                        out << v;
                    else
                        out << csv_field(v);
                },
                row[i]);
        }
        out << "\r\n";
    }
    return out.str();
}

std::string render_pgm(std::span<double const> values, std::size_t rows, std::size_t cols,
                       std::string const& comment)
{
    if (values.size() != rows * cols)
        throw std::logic_error("render_pgm: size mismatch");
    double lo = INFINITY, hi = -INFINITY;
    for (double v : values)
    {
        if (v > 0 && std::isfinite(v))
        {
            lo = std::min(lo, std::log10(v));
            hi = std::max(hi, std::log10(v));
        }
    }
    std::ostringstream out;
    out << "P2\n# " << comment << "\n";
    if (std::isfinite(lo))
        out << "# log10 range " << format_number(lo) << " .. " << format_number(hi) << "\n";
    out << cols << ' ' << rows << "\n255\n";
    double const span = hi > lo ? hi - lo : 1;
    for (std::size_t r = 0; r < rows; ++r)
    {
        // Highest row index at the top of the image.
        std::size_t const src = rows - 1 - r;
        for (std::size_t c = 0; c < cols; ++c)
        {
            double const v = values[src * cols + c];
            int level = 0;
            if (std::isinf(v) && v > 0)
                level = 255;
            else if (v > 0 && std::isfinite(lo))
                level = static_cast<int>(std::lround(255 * (std::log10(v) - lo) / span));
            out << (c ? " " : "") << std::clamp(level, 0, 255);
        }
        out << "\n";
    }
    return out.str();
}

std::string sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1)
        throw std::runtime_error("sha256: digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < length; ++i)
    {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

Manifest::Manifest(std::filesystem::path directory) : dir_(std::move(directory))
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec)
        throw OutputError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void Manifest::write_file(std::string const& name, std::string const& content)
{
    auto const path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw OutputError("cannot open '" + path.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f)
        throw OutputError("failed to write '" + path.string() + "'");
    auto const it = std::find_if(files_.begin(), files_.end(), [&](Entry const& e) { return e.name == name; });
    Entry entry{name, sha256_hex(content), content.size()};
    if (it != files_.end())
        *it = entry;
    else
        files_.push_back(entry);
}

void Manifest::set(std::string const& key, Scalar value)
{
    values_[key] = std::move(value);
}

std::vector<std::string> Manifest::files() const
{
    std::vector<std::string> out;
    for (auto const& e : files_)
        out.push_back(e.name);
    return out;
}

void Manifest::write() const
{
    nlohmann::ordered_json j;
    for (auto const& [key, value] : values_)
    {
        std::visit(
            [&](auto const& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>)
                {
                    if (std::isfinite(v))
                        j[key] = v;
                    else
                        j[key] = format_number(v);
                }
                else
                    j[key] = v;
            },
            value);
    }
    auto& list = j["files"] = nlohmann::ordered_json::array();
    for (auto const& e : files_)
        list.push_back({{"path", e.name}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    std::string const text = j.dump(2) + "\n";
    auto const path = dir_ / "manifest.json";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw OutputError("cannot open '" + path.string() + "' for writing");
    f << text;
    f.close();
    if (!f)
        throw OutputError("failed to write '" + path.string() + "'");
}

}  // namespace unruh::cli
