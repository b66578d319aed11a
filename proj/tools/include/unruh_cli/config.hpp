// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file config.hpp
//! Reader for the run-configuration format: a TOML subset with [sections],
//! `key = value` pairs, comments, strings, integers, floats, booleans and
//! homogeneous arrays (which may span lines). Inline tables, dotted keys,
//! dates and multi-line strings are not supported.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace unruh::cli {

//! Schema or syntax problem, tied to a line of the source (0 if none).
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(int line, std::string const& message);
    int line() const { return line_; }
    std::string const& message() const { return message_; }

  private:
    int line_;
    std::string message_;
};

struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;

struct ConfigValue
{
    std::variant<bool, std::int64_t, double, std::string, ConfigArray> data;
    int line{0};

    bool is_bool() const { return data.index() == 0; }
    bool is_integer() const { return data.index() == 1; }
    bool is_float() const { return data.index() == 2; }
    bool is_number() const { return is_integer() || is_float(); }
    bool is_string() const { return data.index() == 3; }
    bool is_array() const { return data.index() == 4; }
    std::string_view type_name() const;
};

struct ConfigSection
{
    std::string name;
    int line{0};
    std::map<std::string, ConfigValue> entries;
};

struct ConfigDocument
{
    //! Keys before the first header live in the section named "".
    std::map<std::string, ConfigSection> sections;

    bool has(std::string_view section) const { return sections.count(std::string(section)) > 0; }
};

ConfigDocument parse_config(std::string_view text);

}  // namespace unruh::cli
