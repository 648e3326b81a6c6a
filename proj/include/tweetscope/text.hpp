#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tweetscope {

/// Lowercase a UTF-8 string code point by code point. Invalid byte sequences
/// are replaced by U+FFFD.
std::string to_lower_utf8(std::string_view text);

/// Split tweet text into lowercase tokens.
///
/// URL chunks (http://, https://, www.) and @mentions are removed, a leading
/// '#' is stripped so the hashtag body survives as one token, and everything
/// that is not a letter, a digit, or a hyphen/apostrophe between two word
/// characters acts as a separator.
std::vector<std::string> tokenize(std::string_view text);

/// Porter stemmer (reference implementation rules). Tokens holding digits,
/// hyphens, or non-ASCII characters come back unchanged.
std::string porter_stem(std::string_view token);

}  // namespace tweetscope
