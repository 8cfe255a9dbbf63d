#include "vaxwatch/core/normalize.hpp"

#include <array>
#include <cstdint>

namespace vaxwatch::core {

namespace {

// Decomposition targets for U+00C0..U+017F after stripping combining marks
// and lowercasing. nullptr means the codepoint is already in folded form.
// Table generated from the Unicode NFKD data for this range.
constexpr std::array<const char*, 0x180 - 0xC0> kLatinFold = {
    "a", "a", "a", "a", "a", "a",
    "\xc3\xa6", "c", "e", "e", "e", "e",
    "i", "i", "i", "i", "\xc3\xb0", "n",
    "o", "o", "o", "o", "o", nullptr,
    "\xc3\xb8", "u", "u", "u", "u", "y",
    "\xc3\xbe", nullptr, "a", "a", "a", "a",
    "a", "a", nullptr, "c", "e", "e",
    "e", "e", "i", "i", "i", "i",
    nullptr, "n", "o", "o", "o", "o",
    "o", nullptr, nullptr, "u", "u", "u",
    "u", "y", nullptr, "y", "a", "a",
    "a", "a", "a", "a", "c", "c",
    "c", "c", "c", "c", "c", "c",
    "d", "d", "\xc4\x91", nullptr, "e", "e",
    "e", "e", "e", "e", "e", "e",
    "e", "e", "g", "g", "g", "g",
    "g", "g", "g", "g", "h", "h",
    "\xc4\xa7", nullptr, "i", "i", "i", "i",
    "i", "i", "i", "i", "i", nullptr,
    "ij", "ij", "j", "j", "k", "k",
    nullptr, "l", "l", "l", "l", "l",
    "l", "l\xc2\xb7", "l\xc2\xb7", "\xc5\x82", nullptr, "n",
    "n", "n", "n", "n", "n", "\xca\xbcn",
    "\xc5\x8b", nullptr, "o", "o", "o", "o",
    "o", "o", "\xc5\x93", nullptr, "r", "r",
    "r", "r", "r", "r", "s", "s",
    "s", "s", "s", "s", "s", "s",
    "t", "t", "t", "t", "\xc5\xa7", nullptr,
    "u", "u", "u", "u", "u", "u",
    "u", "u", "u", "u", "u", "u",
    "w", "w", "y", "y", "y", "z",
    "z", "z", "z", "z", "z", "s",
};

// Decodes one UTF-8 sequence at `pos`. On malformed input consumes a single
// byte and reports it verbatim (cp set to the byte value, valid = false).
struct Decoded {
    char32_t cp;
    std::size_t length;
    bool valid;
};

Decoded decode_utf8(std::string_view s, std::size_t pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) return {b0, 1, true};

    auto cont = [&](std::size_t i) {
        return pos + i < s.size() &&
               (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
    };
    auto bits = [&](std::size_t i) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[pos + i]) & 0x3F);
    };

    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x1F) << 6) | bits(1);
        if (cp >= 0x80) return {cp, 2, true};
    } else if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x0F) << 12) | (bits(1) << 6) | bits(2);
        if (cp >= 0x800) return {cp, 3, true};
    } else if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (static_cast<char32_t>(b0 & 0x07) << 18) | (bits(1) << 12) |
                      (bits(2) << 6) | bits(3);
        if (cp >= 0x10000 && cp <= 0x10FFFF) return {cp, 4, true};
    }
    return {b0, 1, false};
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_combining_mark(char32_t cp) {
    return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
           (cp >= 0x20D0 && cp <= 0x20FF) || (cp >= 0xFE20 && cp <= 0xFE2F);
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case ' ': case '\t': case '\n': case '\v': case '\f': case '\r':
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Folds a single codepoint: lowercase ASCII, decompose/lowercase the Latin
// ranges, drop combining marks, squash spacing to ' '. Appends to out.
void fold_codepoint(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        if (cp >= 'A' && cp <= 'Z') cp += 32;
        out.push_back(static_cast<char>(cp));
        return;
    }
    if (is_combining_mark(cp)) return;
    if (is_unicode_space(cp)) {
        out.push_back(' ');
        return;
    }
    if (cp >= 0xC0 && cp < 0x180) {
        if (const char* f = kLatinFold[cp - 0xC0]) {
            out.append(f);
            return;
        }
        encode_utf8(cp, out);
        return;
    }
    switch (cp) {
        case 0x00A8: case 0x00AF: case 0x00B4: case 0x00B8: out.push_back(' '); return;
        case 0x00AA: out.push_back('a'); return;
        case 0x00BA: out.push_back('o'); return;
        case 0x00B9: out.push_back('1'); return;
        case 0x00B2: out.push_back('2'); return;
        case 0x00B3: out.push_back('3'); return;
        case 0xFB00: out.append("ff"); return;
        case 0xFB01: out.append("fi"); return;
        case 0xFB02: out.append("fl"); return;
        case 0xFB03: out.append("ffi"); return;
        case 0xFB04: out.append("ffl"); return;
        case 0xFB05: case 0xFB06: out.append("st"); return;
        default: encode_utf8(cp, out); return;
    }
}

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
}

// Token characters in normalized text: ASCII alphanumerics plus any
// non-ASCII codepoint that is not punctuation or spacing.
bool is_token_codepoint(char32_t cp) {
    if (cp < 0x80) return is_ascii_alnum(static_cast<char>(cp));
    if (is_unicode_space(cp)) return false;
    if (cp >= 0x00A1 && cp <= 0x00BF) return false;
    if (cp == 0x00D7 || cp == 0x00F7) return false;
    if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    return true;
}

}  // namespace

std::string normalize_text(std::string_view s) {
    std::string folded;
    folded.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        Decoded d = decode_utf8(s, pos);
        if (d.valid) {
            fold_codepoint(d.cp, folded);
        } else {
            folded.push_back(s[pos]);  // malformed byte kept verbatim
        }
        pos += d.length;
    }

    // Collapse whitespace runs and trim.
    std::string out;
    out.reserve(folded.size());
    bool pending_space = false;
    for (char c : folded) {
        if (c == ' ') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        Decoded d = decode_utf8(normalized, pos);
        bool in_token = d.valid && is_token_codepoint(d.cp);
        if (in_token) {
            current.append(normalized.substr(pos, d.length));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
        pos += d.length;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace vaxwatch::core
