#pragma once

#include <string>
#include <string_view>

namespace taxo {

/// Classic five-step suffix-stripping stemmer (the 1980 algorithm).
/// Expects a lowercase word; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

} // namespace taxo
