#include "vaxwatch/ingest/keywords.hpp"

#include <algorithm>
#include <istream>
#include <map>

#include "vaxwatch/core/io.hpp"
#include "vaxwatch/core/normalize.hpp"
#include "vaxwatch/core/types.hpp"

namespace vaxwatch::ingest {

using core::Date;
using core::LoadError;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

KeywordTimeline KeywordTimeline::load(std::istream& in, std::string_view source_name) {
    // Collect raw keyword lists per version date, then fold cumulatively.
    std::map<Date, std::vector<std::string>> sections;
    Date current{0};  // implicit always-active version for headerless files
    bool explicit_header = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view entry = trim(line);
        if (auto hash = entry.find('#'); hash != std::string_view::npos)
            entry = trim(entry.substr(0, hash));
        if (entry.empty()) continue;

        if (entry.front() == '[' && entry.back() == ']') {
            auto date = core::parse_date(entry.substr(1, entry.size() - 2));
            if (!date) {
                throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                                ": invalid version header '" + std::string(entry) + "'");
            }
            if (sections.count(*date)) {
                throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                                ": duplicate version date " + core::format_date(*date));
            }
            current = *date;
            explicit_header = true;
            sections[current];
            continue;
        }

        std::string normalized = core::normalize_text(entry);
        if (normalized.empty()) {
            throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                            ": keyword normalizes to nothing");
        }
        sections[current].push_back(std::move(normalized));
    }
    if (!explicit_header && sections.empty())
        throw LoadError(std::string(source_name) + ": no keywords");

    KeywordTimeline timeline;
    KeywordSet cumulative;
    for (auto& [date, words] : sections) {
        cumulative.version_date = date;
        for (auto& w : words) {
            std::size_t tokens = core::tokenize(w).size();
            if (tokens == 0) continue;
            cumulative.max_tokens = std::max(cumulative.max_tokens, tokens);
            cumulative.keywords.insert(std::move(w));
        }
        if (cumulative.keywords.empty()) {
            throw LoadError(std::string(source_name) + ": version " + core::format_date(date) +
                            " has no keywords");
        }
        timeline.versions_.push_back(cumulative);
    }
    return timeline;
}

KeywordTimeline KeywordTimeline::load_file(const std::filesystem::path& path) {
    std::ifstream in = core::open_input(path);
    return load(in, path.string());
}

KeywordTimeline KeywordTimeline::single(KeywordSet set) {
    KeywordTimeline timeline;
    timeline.versions_.push_back(std::move(set));
    return timeline;
}

const KeywordSet* KeywordTimeline::active_at(Date day) const {
    const KeywordSet* active = nullptr;
    for (const auto& v : versions_) {
        if (v.version_date <= day) active = &v;
    }
    return active;
}

const KeywordSet* KeywordTimeline::active_at(core::Instant t) const {
    return active_at(t.day());
}

}  // namespace vaxwatch::ingest
