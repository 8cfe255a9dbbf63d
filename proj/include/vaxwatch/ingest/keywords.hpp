#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "vaxwatch/core/time.hpp"

namespace vaxwatch::ingest {

/// The set of filter keywords active from a given day. Keywords are stored
/// normalized; multi-word keywords are space-joined token sequences.
struct KeywordSet {
    core::Date version_date;
    std::set<std::string> keywords;
    std::size_t max_tokens = 1;

    bool contains(const std::string& normalized) const {
        return keywords.find(normalized) != keywords.end();
    }
};

/// Versioned keyword history. The tracked keyword list only grows: each
/// version adds entries on top of the previous one, mirroring a collection
/// that picks up trending hashtags over time.
class KeywordTimeline {
  public:
    /// File format: one keyword per line, '#' comments; an optional
    /// "[YYYY-MM-DD]" line starts a new version block whose keywords become
    /// active on that day. Files without version headers yield a single
    /// always-active version. Duplicate version dates are a load error.
    static KeywordTimeline load(std::istream& in, std::string_view source_name = "keywords");
    static KeywordTimeline load_file(const std::filesystem::path& path);
    static KeywordTimeline single(KeywordSet set);

    /// The cumulative set active on `day`, or nullptr before the first
    /// version date.
    const KeywordSet* active_at(core::Date day) const;
    const KeywordSet* active_at(core::Instant t) const;

    const std::vector<KeywordSet>& versions() const { return versions_; }

  private:
    std::vector<KeywordSet> versions_;  // ascending version_date, cumulative
};

}  // namespace vaxwatch::ingest
