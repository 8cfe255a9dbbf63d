#include "vaxwatch/core/vaccine.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/core/io.hpp"
#include "vaxwatch/core/types.hpp"

namespace vaxwatch::core {

std::vector<VaccineRecord> load_vaccine_records(std::istream& in, std::string_view source_name) {
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() < 3 || row[0] != "date" || row[1] != "region_code" ||
        row[2] != "doses_administered") {
        throw LoadError(std::string(source_name) +
                        ": expected header 'date,region_code,doses_administered'");
    }

    std::vector<VaccineRecord> records;
    std::set<std::pair<std::int32_t, std::string>> seen;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        auto fail = [&](const std::string& what) -> void {
            throw LoadError(std::string(source_name) + " row " + std::to_string(rowno) +
                            ": " + what);
        };
        if (row.size() < 3) fail("expected 3 columns");

        VaccineRecord r;
        auto date = parse_date(row[0]);
        if (!date) fail("invalid date '" + row[0] + "'");
        r.date = *date;

        r.region_code = row[1];
        std::transform(r.region_code.begin(), r.region_code.end(), r.region_code.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!is_region_code(r.region_code)) fail("invalid region code '" + row[1] + "'");

        std::uint64_t doses = 0;
        auto [ptr, ec] = std::from_chars(row[2].data(), row[2].data() + row[2].size(), doses);
        if (ec != std::errc() || ptr != row[2].data() + row[2].size())
            fail("invalid dose count '" + row[2] + "'");
        r.doses_administered = doses;

        if (!seen.insert({r.date.days, r.region_code}).second)
            fail("duplicate (date, region) pair " + row[0] + "/" + r.region_code);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<VaccineRecord> load_vaccine_records_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    return load_vaccine_records(in, path.string());
}

}  // namespace vaxwatch::core
