#include "taxo/common.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace taxo {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split_on(std::string_view s, char delim) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == delim) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(to_lower(cur));
            cur.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c) || c >= 0x80) {
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

namespace {

// Decode the first UTF-8 code point; returns 0xFFFD on malformed input.
uint32_t first_codepoint(std::string_view s) {
    if (s.empty()) return 0xFFFD;
    unsigned char c0 = static_cast<unsigned char>(s[0]);
    if (c0 < 0x80) return c0;
    int extra = 0;
    uint32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) { cp = c0 & 0x1F; extra = 1; }
    else if ((c0 & 0xF0) == 0xE0) { cp = c0 & 0x0F; extra = 2; }
    else if ((c0 & 0xF8) == 0xF0) { cp = c0 & 0x07; extra = 3; }
    else return 0xFFFD;
    if (s.size() < static_cast<size_t>(extra) + 1) return 0xFFFD;
    for (int i = 1; i <= extra; ++i) {
        unsigned char c = static_cast<unsigned char>(s[static_cast<size_t>(i)]);
        if ((c & 0xC0) != 0x80) return 0xFFFD;
        cp = (cp << 6) | (c & 0x3F);
    }
    return cp;
}

} // namespace

bool starts_uppercase(std::string_view s) {
    uint32_t cp = first_codepoint(s);
    if (cp >= 'A' && cp <= 'Z') return true;
    if (cp >= 0xC0 && cp <= 0xD6) return true;          // À..Ö
    if (cp >= 0xD8 && cp <= 0xDE) return true;          // Ø..Þ
    if (cp == 0x152 || cp == 0x178) return true;        // Œ, Ÿ
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2) == 0;  // Ā, Ă, ... pattern
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2) == 1;  // Ĺ, Ļ, ...
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2) == 0;  // Ŋ, Ō, ...
    return false;
}

} // namespace taxo
