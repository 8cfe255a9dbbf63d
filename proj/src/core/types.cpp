#include "vaxwatch/core/types.hpp"

#include <algorithm>

namespace vaxwatch::core {

std::string_view platform_name(Platform p) {
    return p == Platform::Twitter ? "twitter" : "facebook";
}

std::optional<Platform> platform_from_name(std::string_view name) {
    if (name == "twitter") return Platform::Twitter;
    if (name == "facebook") return Platform::Facebook;
    return std::nullopt;
}

std::string_view credibility_name(CredibilityClass c) {
    switch (c) {
        case CredibilityClass::Low: return "low";
        case CredibilityClass::High: return "high";
        default: return "unknown";
    }
}

std::optional<CredibilityClass> credibility_from_name(std::string_view name) {
    if (name == "low") return CredibilityClass::Low;
    if (name == "high") return CredibilityClass::High;
    if (name == "unknown") return CredibilityClass::Unknown;
    return std::nullopt;
}

bool is_region_code(std::string_view code) {
    return std::find(kRegionCodes.begin(), kRegionCodes.end(), code) != kRegionCodes.end();
}

}  // namespace vaxwatch::core
