#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taxo {

// Malformed or inconsistent input data (bad file, unknown identifier,
// violated invariant). The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Whitespace-split tokens, empties dropped.
std::vector<std::string> split_ws(std::string_view s);

/// Split on a single delimiter, keeping empty fields.
std::vector<std::string> split_on(std::string_view s, char delim);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Word tokens for bag-of-words contexts: lowercased maximal runs of
/// alphanumeric characters (ASCII; multi-byte UTF-8 sequences are kept
/// inside a token).
std::vector<std::string> word_tokens(std::string_view text);

uint64_t fnv1a64(std::string_view bytes);
std::string hex64(uint64_t v);

/// True iff the first code point is an uppercase letter. Covers ASCII and
/// Latin-1/Latin Extended-A uppercase ranges, which is what wiki category
/// names use in practice.
bool starts_uppercase(std::string_view s);

} // namespace taxo
