#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>

namespace vaxwatch::credibility {

/// Public-suffix rules for reducing a host to its registrable domain.
/// Supports exact rules, "*." wildcard rules and "!" exception rules; hosts
/// matching no rule fall back to the rightmost label, per the standard
/// suffix-list algorithm.
class SuffixTable {
  public:
    /// The snapshot compiled into the library (see suffix_snapshot.cpp).
    static const SuffixTable& bundled();

    /// Plain-text rule list, one rule per line, "//" comments.
    static SuffixTable parse(std::istream& in);
    static SuffixTable parse_text(std::string_view text);
    static SuffixTable load_file(const std::filesystem::path& path);

    /// `host` must be a lowercase hostname without scheme or port. Returns
    /// the registrable domain, or the host itself when it is already a
    /// public suffix (or a single label / IP literal).
    std::string registrable_domain(std::string_view host) const;

    std::size_t rule_count() const {
        return exact_.size() + wildcard_.size() + exception_.size();
    }

  private:
    std::unordered_set<std::string> exact_;
    std::unordered_set<std::string> wildcard_;   // base after "*."
    std::unordered_set<std::string> exception_;  // rule after "!"
};

}  // namespace vaxwatch::credibility
