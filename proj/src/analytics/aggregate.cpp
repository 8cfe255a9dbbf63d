#include "vaxwatch/analytics/aggregate.hpp"

#include <algorithm>
#include <set>

namespace vaxwatch::analytics {

using core::CredibilityClass;
using core::Date;
using core::Platform;

std::optional<DateWindow> corpus_window(std::span<const ClassifiedPost> posts) {
    if (posts.empty()) return std::nullopt;
    Date lo = posts.front().post.timestamp.day();
    Date hi = lo;
    for (const auto& cp : posts) {
        Date d = cp.post.timestamp.day();
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return DateWindow{lo, hi};
}

std::vector<DailySeries> daily_volume(std::span<const ClassifiedPost> posts,
                                      std::optional<DateWindow> window) {
    if (!window) window = corpus_window(posts);
    std::vector<DailySeries> out = {{Platform::Twitter, {}}, {Platform::Facebook, {}}};
    if (!window) return out;

    const std::size_t days = static_cast<std::size_t>(window->to.days - window->from.days) + 1;
    for (auto& series : out) {
        series.points.resize(days);
        for (std::size_t i = 0; i < days; ++i)
            series.points[i].date = Date{window->from.days + static_cast<std::int32_t>(i)};
    }

    for (const auto& cp : posts) {
        const Date d = cp.post.timestamp.day();
        if (d < window->from || d > window->to) continue;
        const std::size_t idx = static_cast<std::size_t>(d.days - window->from.days);
        DailyStat& stat =
            out[cp.post.platform == Platform::Twitter ? 0 : 1].points[idx];
        const std::uint64_t weight =
            cp.post.platform == Platform::Twitter ? 1 : cp.post.share_weight;
        stat.volume += weight;
        if (cp.has_class(CredibilityClass::Low)) stat.low_count += weight;
        if (cp.has_class(CredibilityClass::High)) stat.high_count += weight;
    }
    return out;
}

FractionSeries credibility_fractions(const DailySeries& stats) {
    FractionSeries series;
    series.platform = stats.platform;
    series.points.reserve(stats.points.size());
    for (const DailyStat& s : stats.points) {
        FractionPoint p;
        p.date = s.date;
        if (s.volume > 0) {
            p.low_fraction = static_cast<double>(s.low_count) / static_cast<double>(s.volume);
            p.high_fraction = static_cast<double>(s.high_count) / static_cast<double>(s.volume);
        }
        series.points.push_back(p);
    }
    return series;
}

double mean_daily_fraction(const FractionSeries& series, CredibilityClass cls) {
    if (series.points.empty())
        throw std::invalid_argument("mean_daily_fraction: empty series");
    if (cls == CredibilityClass::Unknown)
        throw std::invalid_argument("mean_daily_fraction: class must be Low or High");
    double sum = 0.0;
    for (const FractionPoint& p : series.points)
        sum += cls == CredibilityClass::Low ? p.low_fraction : p.high_fraction;
    return sum / static_cast<double>(series.points.size());
}

namespace {

struct DomainTally {
    CredibilityClass credibility = CredibilityClass::Unknown;
    std::uint64_t twitter = 0;
    std::uint64_t facebook = 0;
};

// Per-domain share tallies over classified (Low/High) domains; a post
// contributes to a domain at most once.
std::map<std::string, DomainTally> tally_domains(std::span<const ClassifiedPost> posts) {
    std::map<std::string, DomainTally> tallies;
    for (const auto& cp : posts) {
        std::map<std::string, CredibilityClass> seen;
        for (const auto& url : cp.urls) {
            if (url.credibility == CredibilityClass::Unknown) continue;
            seen.emplace(url.canonical_domain, url.credibility);
        }
        for (const auto& [domain, cls] : seen) {
            DomainTally& t = tallies[domain];
            t.credibility = cls;
            if (cp.post.platform == Platform::Twitter)
                t.twitter += 1;
            else
                t.facebook += cp.post.share_weight;
        }
    }
    return tallies;
}

std::uint64_t metric_of(const LeaderboardEntry& e, Platform platform) {
    return platform == Platform::Twitter ? e.twitter_shares : e.facebook_shares;
}

}  // namespace

std::vector<LeaderboardEntry> build_leaderboard(std::span<const ClassifiedPost> posts,
                                                std::size_t k, Platform rank_platform) {
    const auto tallies = tally_domains(posts);

    std::vector<LeaderboardEntry> domains;
    LeaderboardEntry total_low;
    total_low.name = std::string(kTotalLowName);
    total_low.credibility = CredibilityClass::Low;
    total_low.is_total_low = true;

    for (const auto& [domain, t] : tallies) {
        domains.push_back(LeaderboardEntry{domain, t.credibility, t.twitter, t.facebook, false});
        if (t.credibility == CredibilityClass::Low) {
            total_low.twitter_shares += t.twitter;
            total_low.facebook_shares += t.facebook;
        }
    }

    auto by_rank = [&](const LeaderboardEntry& a, const LeaderboardEntry& b) {
        const std::uint64_t ma = metric_of(a, rank_platform);
        const std::uint64_t mb = metric_of(b, rank_platform);
        if (ma != mb) return ma > mb;
        return a.name < b.name;
    };

    std::sort(domains.begin(), domains.end(), by_rank);
    if (domains.size() > k) domains.resize(k);
    domains.push_back(total_low);
    std::sort(domains.begin(), domains.end(), by_rank);
    return domains;
}

Correlation cross_platform_source_correlation(std::span<const ClassifiedPost> posts,
                                              SourceScope scope) {
    const auto tallies = tally_domains(posts);
    std::vector<double> twitter, facebook;
    for (const auto& [domain, t] : tallies) {
        const bool in_scope =
            scope == SourceScope::LowAndHigh ||
            (scope == SourceScope::Low && t.credibility == CredibilityClass::Low) ||
            (scope == SourceScope::High && t.credibility == CredibilityClass::High);
        if (!in_scope || (t.twitter == 0 && t.facebook == 0)) continue;
        twitter.push_back(static_cast<double>(t.twitter));
        facebook.push_back(static_cast<double>(t.facebook));
    }
    return spearman(twitter, facebook);
}

std::vector<RegionStat> region_stats(const std::map<std::string, geo::GeoResolution>& resolutions,
                                     std::span<const ClassifiedPost> posts,
                                     std::span<const core::VaccineRecord> doses,
                                     const geo::Gazetteer& gazetteer,
                                     const RegionStatsOptions& options,
                                     std::vector<std::string>* diagnostics) {
    // Per-user tweet tallies for located users.
    struct UserActivity {
        std::uint64_t tweets = 0;
        std::uint64_t low_tweets = 0;
    };
    std::map<std::string, UserActivity> activity;
    for (const auto& cp : posts) {
        if (cp.post.platform != Platform::Twitter) continue;
        if (!resolutions.count(cp.post.author_id)) continue;
        UserActivity& a = activity[cp.post.author_id];
        ++a.tweets;
        if (cp.has_class(CredibilityClass::Low)) ++a.low_tweets;
    }

    const auto& populations = gazetteer.region_populations();
    std::set<std::string> candidates;
    for (const auto& [code, _] : populations) candidates.insert(code);
    for (const auto& [_, res] : resolutions)
        if (res.match) candidates.insert(res.match->region_code);
    for (const auto& rec : doses) candidates.insert(rec.region_code);

    std::vector<RegionStat> out;
    for (const auto& code : candidates) {
        auto pop = populations.find(code);
        if (pop == populations.end()) {
            if (diagnostics)
                diagnostics->push_back("region '" + code +
                                       "' has no population; excluded from region stats");
            continue;
        }

        RegionStat stat;
        stat.region_code = code;
        stat.population = pop->second;

        double fraction_sum = 0.0;
        std::uint64_t users_with_tweets = 0;
        std::uint64_t pooled_tweets = 0, pooled_low = 0;
        for (const auto& [user_id, res] : resolutions) {
            if (!res.match || res.match->region_code != code) continue;
            ++stat.users_located;
            auto it = activity.find(user_id);
            if (it == activity.end() || it->second.tweets == 0) continue;
            ++users_with_tweets;
            fraction_sum += static_cast<double>(it->second.low_tweets) /
                            static_cast<double>(it->second.tweets);
            pooled_tweets += it->second.tweets;
            pooled_low += it->second.low_tweets;
        }
        if (options.pooled_fractions) {
            if (pooled_tweets > 0)
                stat.mean_user_low_fraction =
                    static_cast<double>(pooled_low) / static_cast<double>(pooled_tweets);
        } else if (users_with_tweets > 0) {
            stat.mean_user_low_fraction = fraction_sum / static_cast<double>(users_with_tweets);
        }

        for (const auto& rec : doses) {
            if (rec.region_code != code) continue;
            if (options.doses_window && (rec.date < options.doses_window->from ||
                                         rec.date > options.doses_window->to))
                continue;
            stat.total_doses += rec.doses_administered;
        }
        stat.doses_per_million = static_cast<double>(stat.total_doses) * 1e6 /
                                 static_cast<double>(stat.population);
        out.push_back(std::move(stat));
    }
    return out;
}

Correlation users_vs_population_correlation(
    const std::map<std::string, geo::GeoResolution>& resolutions,
    const geo::Gazetteer& gazetteer) {
    std::map<std::string, std::uint64_t> users;
    for (const auto& [_, res] : resolutions)
        if (res.match) ++users[res.match->region_code];

    std::size_t regions_with_users = 0;
    std::vector<double> xs, ys;
    for (const auto& [code, population] : gazetteer.region_populations()) {
        auto it = users.find(code);
        const std::uint64_t count = it == users.end() ? 0 : it->second;
        if (count > 0) ++regions_with_users;
        xs.push_back(static_cast<double>(count));
        ys.push_back(static_cast<double>(population));
    }
    if (regions_with_users < 3)
        throw std::invalid_argument(
            "users_vs_population_correlation: need located users in at least 3 regions");
    return pearson(xs, ys);
}

}  // namespace vaxwatch::analytics
