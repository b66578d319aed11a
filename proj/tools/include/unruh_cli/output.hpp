// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file output.hpp
//! Output artifacts: CSV tables with a commented header, log-scaled PGM
//! renderings of grids, and the JSON manifest listing every file with its
//! SHA-256 checksum.
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace unruh::cli {

//! Failure to create or write an output file.
class OutputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Column
{
    std::string name;
    std::string unit;  //!< empty for dimensionless
};

using Cell = std::variant<double, long long, std::string>;

class CsvTable
{
  public:
    explicit CsvTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

    void add_comment(std::string line) { comments_.push_back(std::move(line)); }
    void add_row(std::vector<Cell> row);

    std::size_t rows() const { return rows_.size(); }
    std::string render(std::string const& config_hash) const;

  private:
    std::vector<Column> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<Cell>> rows_;
};

//! Shortest round-trip text for a double ("nan", "inf", "-inf" otherwise).
std::string format_number(double v);
//! RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(std::string const& s);

//! Plain-text graymap (P2) of a row-major grid after log10 scaling. Cells
//! that are zero, negative or NaN render black, +inf renders white.
std::string render_pgm(std::span<double const> values, std::size_t rows, std::size_t cols,
                       std::string const& comment);

std::string sha256_hex(std::string_view data);

//! Collects written files and run metadata; writes manifest.json last.
class Manifest
{
  public:
    using Scalar = std::variant<double, long long, bool, std::string>;

    explicit Manifest(std::filesystem::path directory);

    std::filesystem::path const& directory() const { return dir_; }

    //! Writes `content` to directory/name and records its checksum.
    void write_file(std::string const& name, std::string const& content);
    void set(std::string const& key, Scalar value);
    void write() const;

    std::vector<std::string> files() const;

  private:
    struct Entry
    {
        std::string name;
        std::string sha256;
        std::size_t bytes;
    };
    std::filesystem::path dir_;
    std::vector<Entry> files_;
    std::map<std::string, Scalar> values_;
};

}  // namespace unruh::cli
