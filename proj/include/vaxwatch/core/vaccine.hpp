#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vaxwatch/core/time.hpp"

namespace vaxwatch::core {

/// One day of administered doses for one region, from the open-data feed.
struct VaccineRecord {
    Date date;
    std::string region_code;
    std::uint64_t doses_administered = 0;

    friend bool operator==(const VaccineRecord&, const VaccineRecord&) = default;
};

/// CSV with header "date,region_code,doses_administered". At most one row
/// per (date, region); duplicates are a load error.
std::vector<VaccineRecord> load_vaccine_records(std::istream& in,
                                                std::string_view source_name = "doses");
std::vector<VaccineRecord> load_vaccine_records_file(const std::filesystem::path& path);

}  // namespace vaxwatch::core
