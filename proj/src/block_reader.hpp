#pragma once

// Lexer shared by the DEFCAT and GTRUTH formats: comments, blank lines,
// `[section]` headers and `key = value` entries, all with line numbers.

#include "defcon/diagnostic.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace defcon::detail {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct Block {
    std::size_t header_line = 0;
    std::vector<Entry> entries;
};

struct BlockDocument {
    std::optional<std::string> provenance;
    std::vector<Block> blocks;
};

/// Splits `text` into `[header]` blocks. Lexical errors are appended to
/// `diags`; offending lines are skipped so later lines are still checked.
BlockDocument read_blocks(std::string_view text, std::string_view header,
                          std::vector<Diagnostic>& diags);

std::string_view trim(std::string_view s);

/// Comma-separated tokens, trimmed. Returns nullopt if any element is empty.
std::optional<std::vector<std::string>> split_list(std::string_view value);

/// Parses a double-quoted string with \" and \\ escapes.
std::optional<std::string> unquote(std::string_view value);
std::string quote(std::string_view raw);

/// [A-Za-z0-9_] segments joined by single dots.
bool is_identifier(std::string_view s, bool allow_dots);

}  // namespace defcon::detail
