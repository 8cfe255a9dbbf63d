#include "vaxwatch/analytics/reports.hpp"

#include <charconv>
#include <cstdlib>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/core/io.hpp"

namespace vaxwatch::analytics {

using core::CredibilityClass;
using core::LoadError;
using core::Platform;
using nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

std::string format_double(double d) {
    // nlohmann emits the shortest decimal that round-trips.
    return json(d).dump();
}

namespace {

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_uint(const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

[[noreturn]] void bad_row(std::string_view file, std::size_t rowno, const std::string& what) {
    throw LoadError(std::string(file) + " row " + std::to_string(rowno) + ": " + what);
}

void expect_header(core::CsvReader& reader, std::string_view file,
                   const std::vector<std::string>& expected) {
    std::vector<std::string> row;
    if (!reader.next(row) || row != expected)
        throw LoadError(std::string(file) + ": unexpected header");
}

json correlation_to_json(const std::optional<Correlation>& c, const std::string& method) {
    if (!c) return nullptr;
    json j;
    j["method"] = method;
    j["coefficient"] = c->coefficient;
    j["p_value"] = c->p_value;
    j["n"] = c->n;
    return j;
}

std::optional<Correlation> correlation_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_object() || !j.contains("coefficient") || !j.contains("p_value") ||
        !j.contains("n"))
        throw LoadError("correlations.json: malformed correlation object");
    Correlation c;
    c.coefficient = j["coefficient"].get<double>();
    c.p_value = j["p_value"].get<double>();
    c.n = j["n"].get<std::size_t>();
    return c;
}

}  // namespace

std::string volume_series_csv(std::span<const DailySeries> series) {
    std::ostringstream out;
    out << "date,platform,volume,low_count,high_count\n";
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            out << core::format_date(p.date) << ',' << platform_name(s.platform) << ','
                << p.volume << ',' << p.low_count << ',' << p.high_count << '\n';
        }
    }
    return out.str();
}

std::string fraction_series_csv(std::span<const FractionSeries> series) {
    std::ostringstream out;
    out << "date,platform,low_fraction,high_fraction\n";
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            out << core::format_date(p.date) << ',' << platform_name(s.platform) << ','
                << format_double(p.low_fraction) << ',' << format_double(p.high_fraction)
                << '\n';
        }
    }
    return out.str();
}

std::string leaderboard_csv(std::span<const LeaderboardEntry> entries) {
    std::ostringstream out;
    out << "rank,name,credibility,twitter_shares,facebook_shares,is_total_low\n";
    std::size_t rank = 0;
    for (const auto& e : entries) {
        ++rank;
        out << rank << ',' << core::csv_escape(e.name) << ','
            << credibility_name(e.credibility) << ',' << e.twitter_shares << ','
            << e.facebook_shares << ',' << (e.is_total_low ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string region_stats_csv(std::span<const RegionStat> regions) {
    std::ostringstream out;
    out << "region_code,users_located,mean_user_low_fraction,total_doses,population,"
           "doses_per_million\n";
    for (const auto& r : regions) {
        out << r.region_code << ',' << r.users_located << ',';
        if (r.mean_user_low_fraction) out << format_double(*r.mean_user_low_fraction);
        out << ',' << r.total_doses << ',' << r.population << ','
            << format_double(r.doses_per_million) << '\n';
    }
    return out.str();
}

std::string correlations_json(const CorrelationReport& report) {
    json j;
    j["cross_platform_sources"] =
        correlation_to_json(report.cross_platform_sources, "spearman");
    j["cross_platform_scope"] = report.cross_platform_scope;
    j["cross_platform_note"] = report.cross_platform_note;
    j["users_vs_population"] =
        correlation_to_json(report.users_vs_population, "pearson");
    j["users_vs_population_note"] = report.users_vs_population_note;
    return j.dump(2) + "\n";
}

std::string videos_csv(std::span<const youtube::VideoRecord> videos) {
    std::ostringstream out;
    out << "video_id,status,title,channel_id,view_count,tweet_shares,facebook_shares\n";
    for (const auto& v : videos) {
        std::vector<std::string> fields = {
            v.video_id,
            std::string(video_status_name(v.status)),
            v.title.value_or(""),
            v.channel_id.value_or(""),
            v.view_count ? std::to_string(*v.view_count) : "",
            std::to_string(v.tweet_shares),
            std::to_string(v.facebook_shares),
        };
        out << core::csv_row(fields) << '\n';
    }
    return out.str();
}

std::string write_snapshot(const std::filesystem::path& dir, const SnapshotData& data) {
    std::filesystem::create_directories(dir);

    const std::vector<std::pair<std::string_view, std::string>> files = {
        {kVolumeFile, volume_series_csv(data.volumes)},
        {kFractionsFile, fraction_series_csv(data.fractions)},
        {kLeaderboardTwitterFile, leaderboard_csv(data.leaderboard_twitter)},
        {kLeaderboardFacebookFile, leaderboard_csv(data.leaderboard_facebook)},
        {kRegionsFile, region_stats_csv(data.regions)},
        {kCorrelationsFile, correlations_json(data.correlations)},
        {kVideosFile, videos_csv(data.videos)},
    };

    json manifest_files;
    std::string combined;
    for (const auto& [name, contents] : files) {
        core::write_file(dir / name, contents);
        manifest_files[std::string(name)] = fnv1a64_hex(contents);
        combined += name;
        combined.push_back('\0');
        combined += contents;
        combined.push_back('\0');
    }
    const std::string snapshot_id = fnv1a64_hex(combined);

    json manifest;
    manifest["snapshot_id"] = snapshot_id;
    manifest["generated_at"] = data.meta.generated_at;
    if (data.meta.window) {
        manifest["window"] = {{"from", core::format_date(data.meta.window->from)},
                              {"to", core::format_date(data.meta.window->to)}};
    } else {
        manifest["window"] = nullptr;
    }
    manifest["keyword_version"] =
        data.meta.keyword_version.empty() ? json(nullptr) : json(data.meta.keyword_version);
    manifest["counts"] = data.meta.counts;
    manifest["files"] = manifest_files;
    core::write_file(dir / kManifestFile, manifest.dump(2) + "\n");
    return snapshot_id;
}

std::vector<DailySeries> parse_volume_series_csv(std::istream& in) {
    core::CsvReader reader(in);
    expect_header(reader, kVolumeFile,
                  {"date", "platform", "volume", "low_count", "high_count"});
    std::vector<DailySeries> series = {{Platform::Twitter, {}}, {Platform::Facebook, {}}};
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 5) bad_row(kVolumeFile, rowno, "expected 5 columns");
        auto date = core::parse_date(row[0]);
        auto platform = core::platform_from_name(row[1]);
        auto volume = parse_uint(row[2]);
        auto low = parse_uint(row[3]);
        auto high = parse_uint(row[4]);
        if (!date || !platform || !volume || !low || !high)
            bad_row(kVolumeFile, rowno, "malformed fields");
        if (*low > *volume || *high > *volume)
            bad_row(kVolumeFile, rowno, "class count exceeds volume");
        auto& target = series[*platform == Platform::Twitter ? 0 : 1];
        if (!target.points.empty() && !(target.points.back().date < *date))
            bad_row(kVolumeFile, rowno, "dates not strictly increasing");
        target.points.push_back(DailyStat{*date, *volume, *low, *high});
    }
    return series;
}

std::vector<FractionSeries> parse_fraction_series_csv(std::istream& in) {
    core::CsvReader reader(in);
    expect_header(reader, kFractionsFile,
                  {"date", "platform", "low_fraction", "high_fraction"});
    std::vector<FractionSeries> series = {{Platform::Twitter, {}}, {Platform::Facebook, {}}};
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 4) bad_row(kFractionsFile, rowno, "expected 4 columns");
        auto date = core::parse_date(row[0]);
        auto platform = core::platform_from_name(row[1]);
        auto low = parse_double(row[2]);
        auto high = parse_double(row[3]);
        if (!date || !platform || !low || !high)
            bad_row(kFractionsFile, rowno, "malformed fields");
        if (*low < 0.0 || *low > 1.0 || *high < 0.0 || *high > 1.0)
            bad_row(kFractionsFile, rowno, "fraction outside [0,1]");
        auto& target = series[*platform == Platform::Twitter ? 0 : 1];
        if (!target.points.empty() && !(target.points.back().date < *date))
            bad_row(kFractionsFile, rowno, "dates not strictly increasing");
        target.points.push_back(FractionPoint{*date, *low, *high});
    }
    return series;
}

std::vector<LeaderboardEntry> parse_leaderboard_csv(std::istream& in) {
    core::CsvReader reader(in);
    expect_header(reader, "leaderboard",
                  {"rank", "name", "credibility", "twitter_shares", "facebook_shares",
                   "is_total_low"});
    std::vector<LeaderboardEntry> entries;
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 6) bad_row("leaderboard", rowno, "expected 6 columns");
        auto rank = parse_uint(row[0]);
        auto credibility = core::credibility_from_name(row[2]);
        auto tw = parse_uint(row[3]);
        auto fb = parse_uint(row[4]);
        if (!rank || *rank != entries.size() + 1 || row[1].empty() || !credibility || !tw ||
            !fb || (row[5] != "true" && row[5] != "false"))
            bad_row("leaderboard", rowno, "malformed fields");
        entries.push_back(LeaderboardEntry{row[1], *credibility, *tw, *fb, row[5] == "true"});
    }
    return entries;
}

std::vector<RegionStat> parse_region_stats_csv(std::istream& in) {
    core::CsvReader reader(in);
    expect_header(reader, kRegionsFile,
                  {"region_code", "users_located", "mean_user_low_fraction", "total_doses",
                   "population", "doses_per_million"});
    std::vector<RegionStat> regions;
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 6) bad_row(kRegionsFile, rowno, "expected 6 columns");
        RegionStat r;
        r.region_code = row[0];
        auto users = parse_uint(row[1]);
        auto doses = parse_uint(row[3]);
        auto population = parse_uint(row[4]);
        auto dpm = parse_double(row[5]);
        if (!core::is_region_code(r.region_code) || !users || !doses || !population || !dpm)
            bad_row(kRegionsFile, rowno, "malformed fields");
        if (!row[2].empty()) {
            auto mean = parse_double(row[2]);
            if (!mean || *mean < 0.0 || *mean > 1.0)
                bad_row(kRegionsFile, rowno, "mean fraction outside [0,1]");
            r.mean_user_low_fraction = mean;
        }
        r.users_located = *users;
        r.total_doses = *doses;
        r.population = *population;
        r.doses_per_million = *dpm;
        regions.push_back(std::move(r));
    }
    return regions;
}

std::vector<youtube::VideoRecord> parse_videos_csv(std::istream& in) {
    core::CsvReader reader(in);
    expect_header(reader, kVideosFile,
                  {"video_id", "status", "title", "channel_id", "view_count", "tweet_shares",
                   "facebook_shares"});
    std::vector<youtube::VideoRecord> videos;
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 7) bad_row(kVideosFile, rowno, "expected 7 columns");
        youtube::VideoRecord v;
        v.video_id = row[0];
        auto status = youtube::video_status_from_name(row[1]);
        auto tw = parse_uint(row[5]);
        auto fb = parse_uint(row[6]);
        if (v.video_id.empty() || !status || !tw || !fb)
            bad_row(kVideosFile, rowno, "malformed fields");
        v.status = *status;
        if (v.status == youtube::VideoStatus::Available) {
            v.title = row[2];
            v.channel_id = row[3];
            auto views = parse_uint(row[4]);
            if (!views) bad_row(kVideosFile, rowno, "missing view count");
            v.view_count = views;
        } else if (!row[2].empty() || !row[3].empty() || !row[4].empty()) {
            bad_row(kVideosFile, rowno, "removed video with metadata");
        }
        v.tweet_shares = *tw;
        v.facebook_shares = *fb;
        videos.push_back(std::move(v));
    }
    return videos;
}

CorrelationReport parse_correlations_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw LoadError("correlations.json: invalid JSON");
    CorrelationReport report;
    report.cross_platform_sources = correlation_from_json(j.value("cross_platform_sources", json()));
    report.cross_platform_scope = j.value("cross_platform_scope", "low");
    report.cross_platform_note = j.value("cross_platform_note", "");
    report.users_vs_population = correlation_from_json(j.value("users_vs_population", json()));
    report.users_vs_population_note = j.value("users_vs_population_note", "");
    return report;
}

}  // namespace vaxwatch::analytics
