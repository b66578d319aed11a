// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include "unruh_cli/config.hpp"

#include <cctype>
#include <charconv>

namespace unruh::cli {

ConfigError::ConfigError(int line, std::string const& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line),
      message_(message)
{
}

std::string_view ConfigValue::type_name() const
{
    switch (data.index())
    {
    case 0: return "boolean";
    case 1: return "integer";
    case 2: return "float";
    case 3: return "string";
    default: return "array";
    }
}

namespace {

bool is_bare_key_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Parser
{
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ConfigDocument run()
    {
        ConfigDocument doc;
        ConfigSection* current = &doc.sections[""];
        current->line = 1;
        while (!at_end())
        {
            skip_blank();
            if (at_end())
                break;
            char const c = peek();
            if (c == '\n')
            {
                advance();
                continue;
            }
            if (c == '#')
            {
                skip_comment();
                continue;
            }
            if (c == '[')
            {
                int const header_line = line_;
                advance();
                skip_blank();
                if (!at_end() && peek() == '[')
                    fail("arrays of tables are not supported");
                std::string const name = read_key();
                skip_blank();
                expect(']');
                end_of_line();
                if (doc.sections.count(name) && name != "")
                    fail("duplicate section [" + name + "]", header_line);
                current = &doc.sections[name];
                current->name = name;
                current->line = header_line;
                continue;
            }
            int const key_line = line_;
            std::string const key = read_key();
            skip_blank();
            expect('=');
            skip_blank();
            ConfigValue value = read_value();
            value.line = key_line;
            end_of_line();
            if (current->entries.count(key))
                fail("duplicate key '" + key + "'", key_line);
            current->entries.emplace(key, std::move(value));
        }
        if (doc.sections[""].entries.empty())
            doc.sections.erase("");
        return doc;
    }

  private:
    std::string_view text_;
    std::size_t pos_{0};
    int line_{1};

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance()
    {
        if (text_[pos_] == '\n')
            ++line_;
        ++pos_;
    }

    [[noreturn]] void fail(std::string const& message, int line = 0) const
    {
        throw ConfigError(line > 0 ? line : line_, message);
    }

    void skip_blank()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
            ++pos_;
    }

    void skip_comment()
    {
        while (!at_end() && peek() != '\n')
            ++pos_;
    }

    // Blanks, comments and newlines inside arrays.
    void skip_layout()
    {
        for (;;)
        {
            skip_blank();
            if (at_end())
                return;
            if (peek() == '#')
                skip_comment();
            else if (peek() == '\n')
                advance();
            else
                return;
        }
    }

    void expect(char c)
    {
        if (at_end() || peek() != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    void end_of_line()
    {
        skip_blank();
        if (!at_end() && peek() == '#')
            skip_comment();
        if (at_end())
            return;
        if (peek() != '\n')
            fail("unexpected text after value");
        advance();
    }

    std::string read_key()
    {
        if (!at_end() && peek() == '"')
            return read_string();
        std::size_t const start = pos_;
        while (!at_end() && is_bare_key_char(peek()))
            ++pos_;
        if (pos_ == start)
            fail("expected a key");
        if (!at_end() && peek() == '.')
            fail("dotted keys are not supported");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_string()
    {
        expect('"');
        std::string out;
        while (true)
        {
            if (at_end() || peek() == '\n')
                fail("unterminated string");
            char const c = peek();
            ++pos_;
            if (c == '"')
                break;
            if (c != '\\')
            {
                out.push_back(c);
                continue;
            }
            if (at_end())
                fail("unterminated string");
            char const e = peek();
            ++pos_;
            switch (e)
            {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            default: fail(std::string("unsupported escape '\\") + e + "'");
            }
        }
        return out;
    }

    ConfigValue read_value()
    {
        if (at_end() || peek() == '\n' || peek() == '#')
            fail("missing value");
        char const c = peek();
        if (c == '"')
            return {read_string()};
        if (c == '[')
            return read_array();
        std::size_t const start = pos_;
        while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ','
               && peek() != ']' && peek() != '#')
            ++pos_;
        std::string_view const token = text_.substr(start, pos_ - start);
        if (token == "true")
            return {true};
        if (token == "false")
            return {false};
        return parse_number(token);
    }

    ConfigValue parse_number(std::string_view token)
    {
        if (token.empty())
            fail("missing value");
        std::string cleaned;
        for (std::size_t i = 0; i < token.size(); ++i)
        {
            if (token[i] == '_')
            {
                bool const digits_around = i > 0 && i + 1 < token.size()
                                           && std::isdigit(static_cast<unsigned char>(token[i - 1]))
                                           && std::isdigit(static_cast<unsigned char>(token[i + 1]));
                if (!digits_around)
                    fail("invalid number '" + std::string(token) + "'");
                continue;
            }
            cleaned.push_back(token[i]);
        }
        std::string_view body = cleaned;
        if (!body.empty() && body.front() == '+')
            body.remove_prefix(1);
        bool const is_float = body.find_first_of(".eE") != std::string_view::npos
                              || body == "inf" || body == "-inf" || body == "nan";
        if (is_float)
        {
            if (body == "inf" || body == "-inf" || body == "nan" || body == "-nan")
                fail("non-finite numbers are not allowed");
            double v = 0;
            auto const [end, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
            if (ec != std::errc{} || end != body.data() + body.size())
                fail("invalid number '" + std::string(token) + "'");
            return {v};
        }
        std::int64_t v = 0;
        auto const [end, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec == std::errc::result_out_of_range)
            fail("integer out of range '" + std::string(token) + "'");
        if (ec != std::errc{} || end != body.data() + body.size())
            fail("invalid value '" + std::string(token) + "' (strings must be quoted)");
        return {v};
    }

    ConfigValue read_array()
    {
        int const open_line = line_;
        expect('[');
        ConfigArray items;
        skip_layout();
        while (true)
        {
            if (at_end())
                fail("unterminated array", open_line);
            if (peek() == ']')
            {
                advance();
                break;
            }
            int const item_line = line_;
            ConfigValue item = read_value();
            item.line = item_line;
            if (!items.empty())
            {
                bool const same = items.front().data.index() == item.data.index()
                                  || (items.front().is_number() && item.is_number());
                if (!same)
                    fail("arrays must be homogeneous (" + std::string(items.front().type_name())
                             + " and " + std::string(item.type_name()) + ")",
                         item_line);
            }
            items.push_back(std::move(item));
            skip_layout();
            if (at_end())
                fail("unterminated array", open_line);
            if (peek() == ',')
            {
                advance();
                skip_layout();
                continue;
            }
            if (peek() != ']')
                fail("expected ',' or ']' in array");
        }
        return {std::move(items)};
    }
};

}  // namespace

ConfigDocument parse_config(std::string_view text)
{
    return Parser(text).run();
}

}  // namespace unruh::cli
