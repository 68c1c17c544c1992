#pragma once

#include <string>
#include <vector>

namespace taxo {

/// pre/head/pos decomposition of a category name around its head noun.
/// Joining pre + head + pos with single spaces reconstructs the name
/// (modulo collapsed whitespace); head is always a single token.
struct NameParts {
    std::string pre;
    std::string head;
    std::string pos;

    bool operator==(const NameParts&) const = default;
};

/// Splits a name at the first particle (of/in/from/by/for/to/with/and):
/// head = last token before it (or last token overall), pre = tokens
/// before head, pos = particle and everything after.
NameParts decompose_name(const std::string& name);

/// Plural test for a bare token: shipped irregular/invariant dictionary
/// first, then -ies/-es/-s suffix rules with -ss/-us/-is exceptions.
bool is_plural_token(const std::string& token);

/// True iff the head token of the name is plural.
bool is_plural_head(const std::string& name);

/// Singular form of a token (identity when already singular/unknown).
std::string singularize(const std::string& token);

/// True iff some whole lowercased token of the name equals a meta term.
bool is_meta_category(const std::string& name, const std::vector<std::string>& meta_terms);

/// First character is an uppercase letter (Unicode-aware for the Latin
/// ranges wiki names use).
bool starts_capitalized(const std::string& name);

/// The shipped 22-term meta list (overridable via load_term_list).
const std::vector<std::string>& default_meta_terms();

/// One lowercase term per line, '#' comments and blank lines skipped.
std::vector<std::string> load_term_list(std::istream& in);

/// Head nouns of the leading noun phrase(s) of a token stream:
/// optional article, then tokens up to a particle / coordinator /
/// relative marker / post-modifier; coordinated phrases split on
/// {and, or, ","}. Heads are lowercased and singularized.
std::vector<std::string> leading_np_heads(const std::vector<std::string>& tokens);

/// Tokens for noun-phrase scanning: lowercased word runs plus marker
/// tokens for punctuation ("," for comma/semicolon, "." for the rest).
std::vector<std::string> np_tokens(std::string_view text);

} // namespace taxo
