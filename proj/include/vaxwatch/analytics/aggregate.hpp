#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaxwatch/analytics/stats.hpp"
#include "vaxwatch/core/time.hpp"
#include "vaxwatch/core/types.hpp"
#include "vaxwatch/core/vaccine.hpp"
#include "vaxwatch/credibility/classify.hpp"
#include "vaxwatch/geo/resolver.hpp"

namespace vaxwatch::analytics {

using credibility::ClassifiedPost;

/// Per-day, per-platform aggregate. Volume counts tweets on Twitter and
/// sums share_weight on Facebook; low/high counts use the same weighting
/// and count a post toward a class iff it carries at least one URL of that
/// class.
struct DailyStat {
    core::Date date;
    std::uint64_t volume = 0;
    std::uint64_t low_count = 0;
    std::uint64_t high_count = 0;

    friend bool operator==(const DailyStat&, const DailyStat&) = default;
};

struct DailySeries {
    core::Platform platform = core::Platform::Twitter;
    std::vector<DailyStat> points;  // consecutive days, ascending
};

/// Inclusive day range.
struct DateWindow {
    core::Date from;
    core::Date to;
};

std::optional<DateWindow> corpus_window(std::span<const ClassifiedPost> posts);

/// One aligned series per platform over `window` (default: the corpus day
/// range), zero-filled on silent days. Empty corpus with no window yields
/// empty series.
std::vector<DailySeries> daily_volume(std::span<const ClassifiedPost> posts,
                                      std::optional<DateWindow> window = std::nullopt);

struct FractionPoint {
    core::Date date;
    double low_fraction = 0.0;
    double high_fraction = 0.0;

    friend bool operator==(const FractionPoint&, const FractionPoint&) = default;
};

struct FractionSeries {
    core::Platform platform = core::Platform::Twitter;
    std::vector<FractionPoint> points;
};

/// low_count/volume and high_count/volume per day; zero-volume days emit
/// (0, 0) so the series stays aligned for plotting.
FractionSeries credibility_fractions(const DailySeries& stats);

/// Unweighted arithmetic mean over days of the per-day fraction for the
/// given class (Low or High). Throws std::invalid_argument on an empty
/// series or the Unknown class.
double mean_daily_fraction(const FractionSeries& series, core::CredibilityClass cls);

inline constexpr std::string_view kTotalLowName = "ALL_LOW_CREDIBILITY";

/// Leaderboard row: a classified news domain, or the pseudo-entry
/// aggregating all low-credibility domains.
struct LeaderboardEntry {
    std::string name;
    core::CredibilityClass credibility = core::CredibilityClass::Unknown;
    std::uint64_t twitter_shares = 0;
    std::uint64_t facebook_shares = 0;
    bool is_total_low = false;

    friend bool operator==(const LeaderboardEntry&, const LeaderboardEntry&) = default;
};

/// Top-k observed Low/High domains by the platform's share metric plus the
/// ALL_LOW_CREDIBILITY pseudo-entry, merged in sorted position (metric
/// descending, ties by name). Unknown domains never appear. A post names a
/// domain at most once regardless of how many of its links point there.
std::vector<LeaderboardEntry> build_leaderboard(std::span<const ClassifiedPost> posts,
                                                std::size_t k, core::Platform rank_platform);

/// Which source list(s) enter the cross-platform popularity test.
enum class SourceScope { Low, High, LowAndHigh };

/// Spearman correlation of per-domain share tallies on Twitter vs Facebook,
/// over domains of the given scope with a nonzero tally on at least one
/// platform (absent means tally 0 on the other).
Correlation cross_platform_source_correlation(std::span<const ClassifiedPost> posts,
                                              SourceScope scope = SourceScope::Low);

/// Regional join of user activity, credibility behavior and open dose data.
struct RegionStat {
    std::string region_code;
    std::uint64_t users_located = 0;
    std::optional<double> mean_user_low_fraction;  // absent with no located users
    std::uint64_t total_doses = 0;
    std::uint64_t population = 0;
    double doses_per_million = 0.0;

    friend bool operator==(const RegionStat&, const RegionStat&) = default;
};

struct RegionStatsOptions {
    std::optional<DateWindow> doses_window;
    /// When true, pools tweets across a region's users instead of averaging
    /// per-user fractions (sensitivity variant).
    bool pooled_fractions = false;
};

/// One row per region carrying a population; regions seen in resolutions or
/// dose records but lacking a population are excluded and reported in
/// `diagnostics`. The per-user fraction averages each located user's
/// (low-link tweets / tweets); users without tweets are skipped.
std::vector<RegionStat> region_stats(const std::map<std::string, geo::GeoResolution>& resolutions,
                                     std::span<const ClassifiedPost> posts,
                                     std::span<const core::VaccineRecord> doses,
                                     const geo::Gazetteer& gazetteer,
                                     const RegionStatsOptions& options = {},
                                     std::vector<std::string>* diagnostics = nullptr);

/// Pearson correlation of (located users, population) across all regions
/// with a known population. Throws std::invalid_argument when fewer than 3
/// regions have located users.
Correlation users_vs_population_correlation(
    const std::map<std::string, geo::GeoResolution>& resolutions,
    const geo::Gazetteer& gazetteer);

}  // namespace vaxwatch::analytics
