#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaxwatch/analytics/aggregate.hpp"
#include "vaxwatch/youtube/enrich.hpp"

namespace vaxwatch::analytics {

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double d);

// Snapshot directory layout. The manifest is written last and carries a
// content hash per file, so readers can tell a complete snapshot from a
// half-written one.
inline constexpr std::string_view kVolumeFile = "volume_series.csv";
inline constexpr std::string_view kFractionsFile = "fraction_series.csv";
inline constexpr std::string_view kLeaderboardTwitterFile = "leaderboard_twitter.csv";
inline constexpr std::string_view kLeaderboardFacebookFile = "leaderboard_facebook.csv";
inline constexpr std::string_view kRegionsFile = "region_stats.csv";
inline constexpr std::string_view kCorrelationsFile = "correlations.json";
inline constexpr std::string_view kVideosFile = "videos.csv";
inline constexpr std::string_view kManifestFile = "manifest.json";

struct CorrelationReport {
    std::optional<Correlation> cross_platform_sources;
    std::string cross_platform_scope = "low";
    std::string cross_platform_note;  // reason when the value is absent
    std::optional<Correlation> users_vs_population;
    std::string users_vs_population_note;
};

struct SnapshotMeta {
    std::string snapshot_id;  // filled in by write_snapshot
    std::string generated_at;
    std::optional<DateWindow> window;
    std::string keyword_version;  // empty when not supplied
    std::map<std::string, std::uint64_t> counts;
};

/// Everything one aggregation run publishes.
struct SnapshotData {
    SnapshotMeta meta;
    std::vector<DailySeries> volumes;
    std::vector<FractionSeries> fractions;
    std::vector<LeaderboardEntry> leaderboard_twitter;
    std::vector<LeaderboardEntry> leaderboard_facebook;
    std::vector<RegionStat> regions;
    CorrelationReport correlations;
    std::vector<youtube::VideoRecord> videos;
};

// Deterministic serializers: identical data yields identical bytes.
std::string volume_series_csv(std::span<const DailySeries> series);
std::string fraction_series_csv(std::span<const FractionSeries> series);
std::string leaderboard_csv(std::span<const LeaderboardEntry> entries);
std::string region_stats_csv(std::span<const RegionStat> regions);
std::string correlations_json(const CorrelationReport& report);
std::string videos_csv(std::span<const youtube::VideoRecord> videos);

/// Writes all report files, then the manifest. Returns the snapshot id
/// (hash over the report file bytes).
std::string write_snapshot(const std::filesystem::path& dir, const SnapshotData& data);

// Parsers for the same files; all throw core::LoadError on malformed or
// invariant-violating input.
std::vector<DailySeries> parse_volume_series_csv(std::istream& in);
std::vector<FractionSeries> parse_fraction_series_csv(std::istream& in);
std::vector<LeaderboardEntry> parse_leaderboard_csv(std::istream& in);
std::vector<RegionStat> parse_region_stats_csv(std::istream& in);
std::vector<youtube::VideoRecord> parse_videos_csv(std::istream& in);
CorrelationReport parse_correlations_json(std::string_view text);

}  // namespace vaxwatch::analytics
