#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vaxwatch/core/time.hpp"

namespace vaxwatch::core {

/// Raised by loaders and parsers on unusable input files.
class LoadError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Platform { Twitter, Facebook };

std::string_view platform_name(Platform p);
std::optional<Platform> platform_from_name(std::string_view name);

enum class CredibilityClass { Low, High, Unknown };

std::string_view credibility_name(CredibilityClass c);
std::optional<CredibilityClass> credibility_from_name(std::string_view name);

/// One social-media item. Immutable after construction; share_weight is the
/// cross-platform comparison unit (1 per tweet, the share count per
/// Facebook post).
struct Post {
    Platform platform = Platform::Twitter;
    std::string post_id;
    Instant timestamp;
    std::string text;
    std::string author_id;
    std::string author_location;  // empty when the profile discloses none
    std::uint64_t share_weight = 0;
    std::vector<std::string> urls;

    friend bool operator==(const Post&, const Post&) = default;
};

/// The 20 Italian regions, as lowercase accent-free identifiers.
inline constexpr std::array<std::string_view, 20> kRegionCodes = {
    "abruzzo",        "basilicata", "calabria", "campania",
    "emilia_romagna", "friuli_venezia_giulia",  "lazio",
    "liguria",        "lombardia",  "marche",   "molise",
    "piemonte",       "puglia",     "sardegna", "sicilia",
    "toscana",        "trentino_alto_adige",    "umbria",
    "valle_daosta",   "veneto",
};

bool is_region_code(std::string_view code);

}  // namespace vaxwatch::core
