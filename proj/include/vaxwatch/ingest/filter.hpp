#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaxwatch/core/types.hpp"
#include "vaxwatch/ingest/keywords.hpp"

namespace vaxwatch::ingest {

/// Whole-token keyword matching over normalized text: a keyword hits iff it
/// equals a token ('#' is a boundary, so hashtags match their bare word);
/// multi-word keywords match as contiguous token runs. Returns matches in
/// first-occurrence order, deduplicated.
std::vector<std::string> match_keywords(std::string_view text, const KeywordSet& keywords);

struct FilterStats {
    std::uint64_t passed = 0;
    std::uint64_t dropped = 0;
};

/// Pure keyword filter: keeps exactly the posts with at least one match,
/// preserving order.
std::vector<core::Post> filter_stream(std::span<const core::Post> posts,
                                      const KeywordSet& keywords,
                                      FilterStats* stats = nullptr);

/// Same, but each post is tested against the keyword version active at its
/// timestamp. Posts dated before the first version never match.
std::vector<core::Post> filter_stream(std::span<const core::Post> posts,
                                      const KeywordTimeline& timeline,
                                      FilterStats* stats = nullptr);

}  // namespace vaxwatch::ingest
