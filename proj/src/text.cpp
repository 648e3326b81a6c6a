#include "tweetscope/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace tweetscope {

namespace {

std::vector<UChar32> decode_lower(std::string_view text) {
    std::vector<UChar32> out;
    out.reserve(text.size());
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        if (c < 0) {
            c = 0xFFFD;
        } else if (c == 0x2019) {
            c = '\'';
        } else {
            c = u_tolower(c);
        }
        out.push_back(c);
    }
    return out;
}

void append_utf8(std::string& out, UChar32 c) {
    char buf[U8_MAX_LENGTH];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, c);
    out.append(buf, static_cast<std::size_t>(n));
}

bool is_word_char(UChar32 c) {
    return u_isalnum(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

bool is_space(UChar32 c) {
    return u_isUWhiteSpace(c) || c == '\t' || c == '\n' || c == '\r';
}

bool starts_with(const std::vector<UChar32>& cps, std::size_t pos, std::size_t end,
                 std::string_view prefix) {
    if (end - pos < prefix.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (cps[pos + i] != static_cast<UChar32>(prefix[i])) {
            return false;
        }
    }
    return true;
}

void tokenize_chunk(const std::vector<UChar32>& cps, std::size_t begin, std::size_t end,
                    std::vector<std::string>& out) {
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    };

    std::size_t i = begin;
    while (i < end) {
        const UChar32 c = cps[i];
        if (current.empty()) {
            if (starts_with(cps, i, end, "http://") || starts_with(cps, i, end, "https://") ||
                starts_with(cps, i, end, "www.")) {
                return;  // rest of the chunk is the URL
            }
            if (c == '@' && i + 1 < end && (is_word_char(cps[i + 1]) || cps[i + 1] == '_')) {
                ++i;
                while (i < end && (is_word_char(cps[i]) || cps[i] == '_')) {
                    ++i;
                }
                continue;
            }
        }
        if (is_word_char(c)) {
            append_utf8(current, c);
        } else if ((c == '-' || c == '\'') && !current.empty() && i + 1 < end &&
                   is_word_char(cps[i + 1])) {
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
        ++i;
    }
    flush();
}

}  // namespace

std::string to_lower_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (UChar32 c : decode_lower(text)) {
        append_utf8(out, c);
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    const std::vector<UChar32> cps = decode_lower(text);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && is_space(cps[i])) {
            ++i;
        }
        std::size_t end = i;
        while (end < cps.size() && !is_space(cps[end])) {
            ++end;
        }
        if (end > i) {
            tokenize_chunk(cps, i, end, tokens);
        }
        i = end;
    }
    return tokens;
}

}  // namespace tweetscope
