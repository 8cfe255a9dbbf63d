#include "vaxwatch/core/gazetteer.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/core/io.hpp"
#include "vaxwatch/core/normalize.hpp"

namespace vaxwatch::core {

std::string_view place_kind_name(PlaceKind k) {
    switch (k) {
        case PlaceKind::Municipality: return "municipality";
        case PlaceKind::Province: return "province";
        default: return "region";
    }
}

std::optional<PlaceKind> place_kind_from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "municipality") return PlaceKind::Municipality;
    if (lower == "province") return PlaceKind::Province;
    if (lower == "region") return PlaceKind::Region;
    return std::nullopt;
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

[[noreturn]] void fail(std::string_view source, std::size_t row, const std::string& what) {
    throw LoadError(std::string(source) + " row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::vector<GazetteerEntry> load_gazetteer(std::istream& in, std::string_view source_name) {
    CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() < 3 || row[0] != "name" || row[1] != "kind" ||
        row[2] != "region_code") {
        throw LoadError(std::string(source_name) +
                        ": expected header 'name,kind,region_code,population'");
    }

    std::vector<GazetteerEntry> entries;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;  // blank trailing line
        if (row.size() < 3) fail(source_name, rowno, "expected at least 3 columns");

        GazetteerEntry e;
        e.name_normalized = normalize_text(row[0]);
        if (e.name_normalized.empty()) fail(source_name, rowno, "empty place name");

        auto kind = place_kind_from_name(row[1]);
        if (!kind) fail(source_name, rowno, "unknown kind '" + row[1] + "'");
        e.kind = *kind;

        e.region_code = row[2];
        std::transform(e.region_code.begin(), e.region_code.end(), e.region_code.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!is_region_code(e.region_code))
            fail(source_name, rowno, "invalid region code '" + row[2] + "'");

        if (row.size() >= 4 && !row[3].empty()) {
            auto pop = parse_uint(row[3]);
            if (!pop) fail(source_name, rowno, "invalid population '" + row[3] + "'");
            if (e.kind != PlaceKind::Region)
                fail(source_name, rowno, "population is only allowed on region rows");
            e.population = pop;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<GazetteerEntry> load_gazetteer_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    return load_gazetteer(in, path.string());
}

}  // namespace vaxwatch::core
