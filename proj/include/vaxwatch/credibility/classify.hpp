#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaxwatch/core/source_list.hpp"
#include "vaxwatch/core/types.hpp"
#include "vaxwatch/credibility/suffix_table.hpp"

namespace vaxwatch::credibility {

/// A post URL after canonicalization and source-list lookup.
struct ClassifiedUrl {
    std::string raw_url;
    std::string canonical_domain;  // empty when parsing failed
    core::CredibilityClass credibility = core::CredibilityClass::Unknown;
    bool is_youtube = false;
    std::optional<std::string> youtube_id;
    bool parse_failed = false;

    friend bool operator==(const ClassifiedUrl&, const ClassifiedUrl&) = default;
};

/// Maximal http/https substrings of free text, in order, duplicates kept.
/// Trailing sentence punctuation is not part of the URL.
std::vector<std::string> extract_urls(std::string_view text);

/// Minimal split of an http/https URL. Fails on other schemes.
struct ParsedUrl {
    std::string host;  // lowercased, no port, no userinfo
    std::string path;  // leading '/', may be empty
    std::string query; // without '?'
};
std::optional<ParsedUrl> parse_http_url(std::string_view url);

/// Registrable domain of the URL's host: lowercase, one leading "www."
/// stripped, reduced per the suffix table. nullopt when the URL does not
/// parse as http/https.
std::optional<std::string> canonical_domain(std::string_view url, const SuffixTable& table);

/// Video ID for watch?v=, youtu.be/, /embed/ and /shorts/ URL shapes on
/// YouTube hosts; exactly 11 characters of [A-Za-z0-9_-] or nothing.
std::optional<std::string> extract_youtube_id(std::string_view url);

/// Optional short-URL expansion consulted before canonicalization.
/// CSV with header "short_url,expanded_url".
class RedirectMap {
  public:
    RedirectMap() = default;
    static RedirectMap load(std::istream& in, std::string_view source_name = "redirects");
    static RedirectMap load_file(const std::filesystem::path& path);

    std::optional<std::string> expand(const std::string& url) const;
    std::size_t size() const { return map_.size(); }

  private:
    std::map<std::string, std::string> map_;
};

/// Deterministic URL classifier over immutable source lists; safe for
/// unlimited parallel use.
class UrlClassifier {
  public:
    explicit UrlClassifier(core::SourceLists lists,
                           const SuffixTable* table = &SuffixTable::bundled(),
                           RedirectMap redirects = {});

    ClassifiedUrl classify(std::string_view raw_url) const;

    const core::SourceLists& lists() const { return lists_; }

  private:
    core::SourceLists lists_;
    const SuffixTable* table_;
    RedirectMap redirects_;
};

/// Post plus its classified URLs, the unit the analytics consume.
struct ClassifiedPost {
    core::Post post;
    std::vector<ClassifiedUrl> urls;

    bool has_class(core::CredibilityClass c) const {
        for (const auto& u : urls)
            if (u.credibility == c) return true;
        return false;
    }
};

std::vector<ClassifiedPost> classify_posts(std::vector<core::Post> posts,
                                           const UrlClassifier& classifier);

}  // namespace vaxwatch::credibility
