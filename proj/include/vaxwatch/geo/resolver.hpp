#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaxwatch/core/gazetteer.hpp"
#include "vaxwatch/core/types.hpp"

namespace vaxwatch::geo {

/// Immutable place-name index over a gazetteer, supporting lookup of every
/// entry name occurring as a contiguous token run inside a free-text
/// location string.
class Gazetteer {
  public:
    struct Match {
        std::string name;  // normalized entry name
        core::PlaceKind kind = core::PlaceKind::Municipality;
        std::string region_code;

        friend bool operator==(const Match&, const Match&) = default;
    };

    /// Duplicate (name, kind) pairs are a load error.
    static Gazetteer build(std::vector<core::GazetteerEntry> entries);

    std::size_t size() const { return size_; }

    /// The paper's naive longest-match rule: normalize the string, find all
    /// entry names occurring as contiguous token runs, keep the one with
    /// the greatest character length; ties go to Region over Province over
    /// Municipality, then lexicographically smaller name. Nothing matches
    /// an empty or unmatched string.
    std::optional<Match> resolve(std::string_view location) const;

    /// Region populations for regions that declare one.
    const std::map<std::string, std::uint64_t>& region_populations() const {
        return region_populations_;
    }

  private:
    struct Slot {
        core::PlaceKind kind;
        std::string region_code;
    };
    // name -> candidate entries, best kind first
    std::map<std::string, std::vector<Slot>> names_;
    std::map<std::string, std::uint64_t> region_populations_;
    std::size_t size_ = 0;
    std::size_t max_tokens_ = 1;
};

/// Resolution outcome for one author. `match` is empty when the location
/// text matched no gazetteer name.
struct GeoResolution {
    std::string user_id;
    std::optional<Gazetteer::Match> match;
};

/// Resolves each distinct Twitter author once, using the author_location of
/// their most recent post. Authors whose chosen post has an empty location
/// are skipped entirely; unmatched non-empty locations still produce an
/// entry (with no match).
std::map<std::string, GeoResolution> geolocate_users(std::span<const core::Post> posts,
                                                     const Gazetteer& gazetteer);

}  // namespace vaxwatch::geo
