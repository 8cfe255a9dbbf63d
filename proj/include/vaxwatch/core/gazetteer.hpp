#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vaxwatch/core/types.hpp"

namespace vaxwatch::core {

enum class PlaceKind { Municipality, Province, Region };

std::string_view place_kind_name(PlaceKind k);
std::optional<PlaceKind> place_kind_from_name(std::string_view name);

/// Normalized Italian place name mapped to its region.
struct GazetteerEntry {
    std::string name_normalized;
    PlaceKind kind = PlaceKind::Municipality;
    std::string region_code;
    std::optional<std::uint64_t> population;  // regions only

    friend bool operator==(const GazetteerEntry&, const GazetteerEntry&) = default;
};

/// CSV with header "name,kind,region_code,population". Names are normalized
/// on load; kinds are municipality/province/region; population may only be
/// set on region rows.
std::vector<GazetteerEntry> load_gazetteer(std::istream& in,
                                           std::string_view source_name = "gazetteer");
std::vector<GazetteerEntry> load_gazetteer_file(const std::filesystem::path& path);

}  // namespace vaxwatch::core
