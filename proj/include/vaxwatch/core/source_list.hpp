#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

#include "vaxwatch/core/types.hpp"

namespace vaxwatch::core {

/// Labeled set of lowercase registrable news domains. Entries carry no
/// scheme, path, port or leading "www.".
struct SourceList {
    CredibilityClass label = CredibilityClass::Unknown;
    std::set<std::string> domains;

    bool contains(std::string_view domain) const {
        return domains.find(std::string(domain)) != domains.end();
    }
};

/// One domain per line, UTF-8, '#' starts a comment. Entries are lowercased
/// and a single leading "www." is stripped; entries with a scheme, path,
/// port or embedded whitespace are rejected.
SourceList load_source_list(std::istream& in, CredibilityClass label,
                            std::string_view source_name = "source list");
SourceList load_source_list_file(const std::filesystem::path& path, CredibilityClass label);

/// The low/high pair. Disjointness is validated at construction; an overlap
/// is a load error naming the offending domain.
struct SourceLists {
    SourceList low;
    SourceList high;

    CredibilityClass classify(std::string_view domain) const {
        if (low.contains(domain)) return CredibilityClass::Low;
        if (high.contains(domain)) return CredibilityClass::High;
        return CredibilityClass::Unknown;
    }
};

SourceLists make_source_lists(SourceList low, SourceList high);
SourceLists load_source_lists(const std::filesystem::path& low_path,
                              const std::filesystem::path& high_path);

}  // namespace vaxwatch::core
