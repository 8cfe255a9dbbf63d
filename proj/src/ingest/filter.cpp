#include "vaxwatch/ingest/filter.hpp"

#include <set>

#include "vaxwatch/core/normalize.hpp"

namespace vaxwatch::ingest {

std::vector<std::string> match_keywords(std::string_view text, const KeywordSet& keywords) {
    std::vector<std::string> matched;
    if (keywords.keywords.empty()) return matched;

    const std::vector<std::string> tokens = core::tokenize(core::normalize_text(text));
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::string window;
        for (std::size_t len = 1; len <= keywords.max_tokens && i + len <= tokens.size();
             ++len) {
            if (len > 1) window.push_back(' ');
            window += tokens[i + len - 1];
            if (keywords.contains(window) && seen.insert(window).second)
                matched.push_back(window);
        }
    }
    return matched;
}

namespace {

template <typename Lookup>
std::vector<core::Post> filter_impl(std::span<const core::Post> posts, Lookup&& lookup,
                                    FilterStats* stats) {
    std::vector<core::Post> out;
    for (const core::Post& post : posts) {
        const KeywordSet* active = lookup(post);
        bool keep = active && !match_keywords(post.text, *active).empty();
        if (keep) {
            out.push_back(post);
            if (stats) ++stats->passed;
        } else if (stats) {
            ++stats->dropped;
        }
    }
    return out;
}

}  // namespace

std::vector<core::Post> filter_stream(std::span<const core::Post> posts,
                                      const KeywordSet& keywords, FilterStats* stats) {
    return filter_impl(posts, [&](const core::Post&) { return &keywords; }, stats);
}

std::vector<core::Post> filter_stream(std::span<const core::Post> posts,
                                      const KeywordTimeline& timeline, FilterStats* stats) {
    return filter_impl(
        posts, [&](const core::Post& p) { return timeline.active_at(p.timestamp); }, stats);
}

}  // namespace vaxwatch::ingest
