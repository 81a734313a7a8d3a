#include "block_reader.hpp"

#include <cctype>

namespace defcon::detail {

namespace {

constexpr std::string_view kProvenancePrefix = "provenance:";

void error(std::vector<Diagnostic>& diags, std::size_t line, std::string message) {
    diags.push_back({line, Severity::error, std::move(message)});
}

// Index of the first '#' outside a double-quoted string, or npos. Sets
// `unterminated` when a quote is left open.
std::size_t comment_start(std::string_view line, bool& unterminated) {
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == '#') {
            unterminated = false;
            return i;
        }
    }
    unterminated = in_quotes;
    return std::string_view::npos;
}

}  // namespace

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

BlockDocument read_blocks(std::string_view text, std::string_view header,
                          std::vector<Diagnostic>& diags) {
    BlockDocument doc;
    const std::string header_line = "[" + std::string(header) + "]";
    // false while inside an unknown [section]; its entries are skipped.
    bool in_known_section = true;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        const std::string_view stripped = trim(raw);
        if (stripped.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        if (stripped.front() == '#') {
            const std::string_view body = trim(stripped.substr(1));
            if (doc.blocks.empty() && body.starts_with(kProvenancePrefix)) {
                doc.provenance = std::string(trim(body.substr(kProvenancePrefix.size())));
            }
            if (eol == text.size()) break;
            continue;
        }

        bool unterminated = false;
        const std::size_t hash = comment_start(raw, unterminated);
        const std::string_view content = trim(raw.substr(0, hash));
        if (unterminated) {
            error(diags, line_no, "unterminated string");
        } else if (content.front() == '[') {
            if (content == header_line) {
                doc.blocks.push_back({line_no, {}});
                in_known_section = true;
            } else {
                error(diags, line_no,
                      "unknown section '" + std::string(content) + "', expected '" + header_line + "'");
                in_known_section = false;
            }
        } else if (const std::size_t eq = content.find('='); eq == std::string_view::npos) {
            error(diags, line_no, "malformed line, expected 'key = value'");
        } else if (const std::string_view key = trim(content.substr(0, eq)); key.empty()) {
            error(diags, line_no, "malformed line, missing key before '='");
        } else if (!in_known_section) {
            // already reported at the section header
        } else if (doc.blocks.empty()) {
            error(diags, line_no, "key '" + std::string(key) + "' outside of a " + header_line + " block");
        } else {
            doc.blocks.back().entries.push_back(
                {std::string(key), std::string(trim(content.substr(eq + 1))), line_no});
        }
        if (eol == text.size()) break;
    }
    return doc;
}

std::optional<std::vector<std::string>> split_list(std::string_view value) {
    std::vector<std::string> out;
    if (trim(value).empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = value.find(',', pos);
        const std::string_view item =
            trim(value.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (item.empty()) return std::nullopt;
        out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::optional<std::string> unquote(std::string_view value) {
    if (value.size() < 2 || value.front() != '"' || value.back() != '"') return std::nullopt;
    std::string out;
    const std::string_view body = value.substr(1, value.size() - 2);
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '\\') {
            if (i + 1 >= body.size()) return std::nullopt;
            const char next = body[++i];
            if (next != '"' && next != '\\') return std::nullopt;
            out.push_back(next);
        } else if (c == '"') {
            return std::nullopt;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string quote(std::string_view raw) {
    std::string out = "\"";
    for (const char c : raw) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

bool is_identifier(std::string_view s, bool allow_dots) {
    if (s.empty()) return false;
    bool segment_empty = true;
    for (const char c : s) {
        if (c == '.') {
            if (!allow_dots || segment_empty) return false;
            segment_empty = true;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            segment_empty = false;
        } else {
            return false;
        }
    }
    return !segment_empty;
}

}  // namespace defcon::detail
