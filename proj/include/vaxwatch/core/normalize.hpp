#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vaxwatch::core {

/// Canonical text form used for keyword and gazetteer matching: Unicode
/// compatibility decomposition (Latin ranges), combining marks stripped,
/// lowercased, whitespace runs collapsed to single spaces, trimmed.
/// Idempotent: normalize_text(normalize_text(s)) == normalize_text(s).
std::string normalize_text(std::string_view s);

/// Splits an already-normalized string into tokens at non-alphanumeric
/// boundaries. '#' and other ASCII punctuation are boundaries, so hashtags
/// yield their bare word. Non-ASCII letters count as token characters;
/// non-ASCII punctuation and spacing do not.
std::vector<std::string> tokenize(std::string_view normalized);

}  // namespace vaxwatch::core
