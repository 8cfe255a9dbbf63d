#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "vaxwatch/analytics/aggregate.hpp"
#include "vaxwatch/analytics/reports.hpp"

using namespace vaxwatch;
using namespace vaxwatch::analytics;
using core::CredibilityClass;
using core::Platform;

namespace {

credibility::ClassifiedUrl url_of(CredibilityClass cls, std::string domain) {
    credibility::ClassifiedUrl u;
    u.raw_url = "https://" + domain + "/x";
    u.canonical_domain = std::move(domain);
    u.credibility = cls;
    return u;
}

ClassifiedPost post_on(Platform platform, std::string id, std::string day,
                       std::vector<credibility::ClassifiedUrl> urls,
                       std::uint64_t share_weight = 1, std::string author = "u") {
    ClassifiedPost cp;
    cp.post.platform = platform;
    cp.post.post_id = std::move(id);
    cp.post.timestamp = *core::parse_instant(day + "T12:00:00Z");
    cp.post.author_id = std::move(author);
    cp.post.share_weight = platform == Platform::Twitter ? 1 : share_weight;
    cp.urls = std::move(urls);
    return cp;
}

const DailySeries& series_of(const std::vector<DailySeries>& all, Platform p) {
    for (const auto& s : all)
        if (s.platform == p) return s;
    throw std::logic_error("platform series missing");
}

}  // namespace

TEST_CASE("daily_volume counts tweets and sums facebook weight") {
    std::vector<ClassifiedPost> posts = {
        post_on(Platform::Twitter, "t1", "2021-01-05", {}),
        post_on(Platform::Twitter, "t2", "2021-01-05", {url_of(CredibilityClass::Low, "a.it")}),
        post_on(Platform::Facebook, "f1", "2021-01-05",
                {url_of(CredibilityClass::High, "b.it")}, 7),
    };
    auto volumes = daily_volume(posts);
    const auto& tw = series_of(volumes, Platform::Twitter);
    const auto& fb = series_of(volumes, Platform::Facebook);
    REQUIRE(tw.points.size() == 1);
    CHECK(tw.points[0].volume == 2);
    CHECK(tw.points[0].low_count == 1);
    CHECK(tw.points[0].high_count == 0);
    CHECK(fb.points[0].volume == 7);
    CHECK(fb.points[0].high_count == 7);
}

TEST_CASE("daily_volume on an empty corpus yields empty aligned series") {
    auto volumes = daily_volume({});
    CHECK(volumes.size() == 2);
    CHECK(volumes[0].points.empty());
    CHECK(volumes[1].points.empty());
}

TEST_CASE("multi-class posts count toward both classes") {
    std::vector<ClassifiedPost> posts = {
        post_on(Platform::Twitter, "t1", "2021-01-05",
                {url_of(CredibilityClass::Low, "a.it"), url_of(CredibilityClass::High, "b.it")}),
    };
    auto volumes = daily_volume(posts);
    const auto& tw = series_of(volumes, Platform::Twitter);
    CHECK(tw.points[0].low_count == 1);
    CHECK(tw.points[0].high_count == 1);
    CHECK(tw.points[0].volume == 1);
}

TEST_CASE("30-day synthetic volume matches an independent recount") {
    std::mt19937 rng(30);
    std::uniform_int_distribution<int> day(0, 29);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<std::uint64_t> weight(0, 40);

    std::vector<ClassifiedPost> posts;
    std::map<std::pair<int, bool>, std::array<std::uint64_t, 3>> expected;
    for (int i = 0; i < 2000; ++i) {
        const int d = day(rng);
        char buf[11];
        std::snprintf(buf, sizeof buf, "2021-01-%02d", d + 1);
        const bool tw = i % 2 == 0;
        std::vector<credibility::ClassifiedUrl> urls;
        const int k = kind(rng);
        if (k == 0) urls.push_back(url_of(CredibilityClass::Low, "low.it"));
        if (k == 1) urls.push_back(url_of(CredibilityClass::High, "high.it"));
        if (k == 2) urls.push_back(url_of(CredibilityClass::Unknown, "x.it"));
        std::uint64_t w = weight(rng);
        posts.push_back(post_on(tw ? Platform::Twitter : Platform::Facebook,
                                "p" + std::to_string(i), buf, urls, w));
        const std::uint64_t effective = tw ? 1 : w;
        auto& slot = expected[{d, tw}];
        slot[0] += effective;
        if (k == 0) slot[1] += effective;
        if (k == 1) slot[2] += effective;
    }

    auto volumes = daily_volume(posts);
    for (const auto& s : volumes) {
        const bool tw = s.platform == Platform::Twitter;
        REQUIRE(s.points.size() == 30);
        for (int d = 0; d < 30; ++d) {
            auto it = expected.find({d, tw});
            const auto want =
                it == expected.end() ? std::array<std::uint64_t, 3>{0, 0, 0} : it->second;
            CHECK(s.points[d].volume == want[0]);
            CHECK(s.points[d].low_count == want[1]);
            CHECK(s.points[d].high_count == want[2]);
        }
    }
}

TEST_CASE("aggregates are invariant under post order permutation") {
    std::vector<ClassifiedPost> posts;
    for (int i = 0; i < 60; ++i) {
        posts.push_back(post_on(i % 2 ? Platform::Twitter : Platform::Facebook,
                                "p" + std::to_string(i), i % 3 ? "2021-01-04" : "2021-01-06",
                                i % 4 == 0 ? std::vector<credibility::ClassifiedUrl>{url_of(
                                                 CredibilityClass::Low, "l.it")}
                                           : std::vector<credibility::ClassifiedUrl>{},
                                static_cast<std::uint64_t>(i), "u" + std::to_string(i % 7)));
    }
    auto volumes_a = daily_volume(posts);
    auto leaderboard_a = build_leaderboard(posts, 10, Platform::Twitter);

    std::mt19937 rng(4);
    std::shuffle(posts.begin(), posts.end(), rng);
    auto volumes_b = daily_volume(posts);
    auto leaderboard_b = build_leaderboard(posts, 10, Platform::Twitter);

    for (std::size_t s = 0; s < 2; ++s) {
        REQUIRE(volumes_a[s].points.size() == volumes_b[s].points.size());
        for (std::size_t i = 0; i < volumes_a[s].points.size(); ++i)
            CHECK(volumes_a[s].points[i] == volumes_b[s].points[i]);
    }
    CHECK(leaderboard_a == leaderboard_b);
}

TEST_CASE("credibility fractions divide by volume, zero days stay zero") {
    DailySeries stats;
    stats.platform = Platform::Twitter;
    stats.points = {
        {*core::parse_date("2021-01-01"), 100, 2, 13},
        {*core::parse_date("2021-01-02"), 0, 0, 0},
    };
    FractionSeries fractions = credibility_fractions(stats);
    REQUIRE(fractions.points.size() == 2);
    CHECK(fractions.points[0].low_fraction == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(fractions.points[0].high_fraction == doctest::Approx(0.13).epsilon(1e-15));
    CHECK(fractions.points[1].low_fraction == 0.0);
    CHECK(fractions.points[1].high_fraction == 0.0);
    for (const auto& p : fractions.points) {
        CHECK(p.low_fraction >= 0.0);
        CHECK(p.low_fraction <= 1.0);
        CHECK(p.high_fraction >= 0.0);
        CHECK(p.high_fraction <= 1.0);
    }
}

TEST_CASE("mean_daily_fraction is the unweighted day mean") {
    FractionSeries series;
    series.points = {{*core::parse_date("2021-01-01"), 0.01, 0.1},
                     {*core::parse_date("2021-01-02"), 0.03, 0.2}};
    CHECK(mean_daily_fraction(series, CredibilityClass::Low) ==
          doctest::Approx(0.02).epsilon(1e-15));

    FractionSeries single;
    single.points = {{*core::parse_date("2021-01-01"), 0.05, 0.0}};
    CHECK(mean_daily_fraction(single, CredibilityClass::Low) ==
          doctest::Approx(0.05).epsilon(1e-15));

    FractionSeries empty;
    CHECK_THROWS_AS(mean_daily_fraction(empty, CredibilityClass::Low), std::invalid_argument);
    CHECK_THROWS_AS(mean_daily_fraction(single, CredibilityClass::Unknown),
                    std::invalid_argument);

    // 1e-12 agreement with a simple independent mean.
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> frac(0.0, 0.05);
    FractionSeries randomized;
    double sum = 0.0;
    for (int i = 0; i < 200; ++i) {
        double f = frac(rng);
        sum += f;
        randomized.points.push_back({core::Date{18600 + i}, f, 0.0});
    }
    CHECK(mean_daily_fraction(randomized, CredibilityClass::Low) ==
          doctest::Approx(sum / 200.0).epsilon(1e-12));
}

TEST_CASE("leaderboard pseudo-entry equals the sum of low tallies and can rank first") {
    // Low domains spread over many tweets; the best high domain is bigger
    // than each individual low domain but smaller than their sum.
    std::vector<ClassifiedPost> posts;
    int id = 0;
    auto add_tweets = [&](CredibilityClass cls, const std::string& domain, int n) {
        for (int i = 0; i < n; ++i)
            posts.push_back(post_on(Platform::Twitter, "t" + std::to_string(id++),
                                    "2021-01-05", {url_of(cls, domain)}));
    };
    add_tweets(CredibilityClass::Low, "low-a.it", 12);
    add_tweets(CredibilityClass::Low, "low-b.it", 10);
    add_tweets(CredibilityClass::Low, "low-c.it", 8);
    add_tweets(CredibilityClass::High, "high-a.it", 25);
    add_tweets(CredibilityClass::High, "high-b.it", 14);
    add_tweets(CredibilityClass::Unknown, "junk.it", 50);

    auto lb = build_leaderboard(posts, 20, Platform::Twitter);
    REQUIRE(lb.size() == 6);  // 5 domains + pseudo-entry

    CHECK(lb[0].is_total_low);
    CHECK(lb[0].name == std::string(kTotalLowName));
    CHECK(lb[0].twitter_shares == 30);  // 12 + 10 + 8
    CHECK(lb[1].name == "high-a.it");

    std::uint64_t low_sum = 0;
    for (const auto& e : lb)
        if (!e.is_total_low && e.credibility == CredibilityClass::Low)
            low_sum += e.twitter_shares;
    CHECK(lb[0].twitter_shares == low_sum);

    for (const auto& e : lb) CHECK(e.name != "junk.it");  // Unknown excluded
}

TEST_CASE("leaderboard without classified urls is just the zero pseudo-entry") {
    std::vector<ClassifiedPost> posts = {
        post_on(Platform::Twitter, "t1", "2021-01-05",
                {url_of(CredibilityClass::Unknown, "x.it")}),
    };
    auto lb = build_leaderboard(posts, 20, Platform::Twitter);
    REQUIRE(lb.size() == 1);
    CHECK(lb[0].is_total_low);
    CHECK(lb[0].twitter_shares == 0);
    CHECK(lb[0].facebook_shares == 0);
}

TEST_CASE("leaderboard k cuts domains, ties break by name") {
    std::vector<ClassifiedPost> posts;
    int id = 0;
    for (const char* domain : {"b.it", "a.it", "c.it"})
        posts.push_back(post_on(Platform::Twitter, "t" + std::to_string(id++), "2021-01-05",
                                {url_of(CredibilityClass::High, domain)}));
    auto lb = build_leaderboard(posts, 2, Platform::Twitter);
    REQUIRE(lb.size() == 3);  // 2 domains + pseudo
    CHECK(lb[0].name == "a.it");
    CHECK(lb[1].name == "b.it");
    CHECK(lb[2].is_total_low);  // zero low tally sorts last
}

TEST_CASE("leaderboard tallies match an independent group-by") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> domain_pick(0, 9);
    std::uniform_int_distribution<std::uint64_t> weight(1, 30);
    const std::vector<std::string> low = {"l0.it", "l1.it", "l2.it", "l3.it"};
    const std::vector<std::string> high = {"h0.it", "h1.it", "h2.it", "h3.it", "h4.it", "h5.it"};

    std::vector<ClassifiedPost> posts;
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> oracle_tally;
    for (int i = 0; i < 600; ++i) {
        const int pick = domain_pick(rng);
        const bool is_low = pick < 4;
        const std::string domain = is_low ? low[pick] : high[pick - 4];
        const bool tw = i % 3 != 0;
        const std::uint64_t w = weight(rng);
        posts.push_back(post_on(tw ? Platform::Twitter : Platform::Facebook,
                                "p" + std::to_string(i), "2021-01-10",
                                {url_of(is_low ? CredibilityClass::Low : CredibilityClass::High,
                                        domain)},
                                w));
        if (tw)
            oracle_tally[domain].first += 1;
        else
            oracle_tally[domain].second += w;
    }

    auto lb = build_leaderboard(posts, 100, Platform::Facebook);
    std::uint64_t pseudo_tw = 0, pseudo_fb = 0;
    for (const auto& [domain, counts] : oracle_tally) {
        bool found = false;
        for (const auto& e : lb) {
            if (e.name != domain) continue;
            found = true;
            CHECK(e.twitter_shares == counts.first);
            CHECK(e.facebook_shares == counts.second);
        }
        CHECK(found);
        if (domain[0] == 'l') {
            pseudo_tw += counts.first;
            pseudo_fb += counts.second;
        }
    }
    CHECK(lb.size() == oracle_tally.size() + 1);
    for (const auto& e : lb) {
        if (!e.is_total_low) continue;
        CHECK(e.twitter_shares == pseudo_tw);
        CHECK(e.facebook_shares == pseudo_fb);
    }
}

TEST_CASE("cross-platform correlation on identical and reversed rankings") {
    std::vector<ClassifiedPost> posts;
    int id = 0;
    auto add = [&](const std::string& domain, int tweets, std::uint64_t fb_weight) {
        for (int i = 0; i < tweets; ++i)
            posts.push_back(post_on(Platform::Twitter, "t" + std::to_string(id++),
                                    "2021-01-05", {url_of(CredibilityClass::Low, domain)}));
        if (fb_weight > 0)
            posts.push_back(post_on(Platform::Facebook, "f" + std::to_string(id++),
                                    "2021-01-05", {url_of(CredibilityClass::Low, domain)},
                                    fb_weight));
    };

    SUBCASE("identical rankings give rho 1") {
        add("a.it", 1, 10);
        add("b.it", 2, 20);
        add("c.it", 3, 30);
        auto c = cross_platform_source_correlation(posts);
        CHECK(c.coefficient == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.n == 3);
    }

    SUBCASE("reversed tallies give rho -1") {
        add("a.it", 1, 30);
        add("b.it", 2, 20);
        add("c.it", 3, 10);
        auto c = cross_platform_source_correlation(posts);
        CHECK(c.coefficient == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("26-domain cross-platform fixture equals the rank-then-pearson oracle") {
    std::mt19937 rng(26);
    std::uniform_int_distribution<int> tweets(0, 40);
    std::uniform_int_distribution<std::uint64_t> fbw(0, 300);

    std::vector<ClassifiedPost> posts;
    std::vector<double> tw_tallies, fb_tallies;
    int id = 0;
    for (int d = 0; d < 26; ++d) {
        const std::string domain = "low-" + std::to_string(d) + ".it";
        int t = tweets(rng);
        std::uint64_t f = fbw(rng);
        if (t == 0 && f == 0) t = 1;
        for (int i = 0; i < t; ++i)
            posts.push_back(post_on(Platform::Twitter, "t" + std::to_string(id++),
                                    "2021-01-05", {url_of(CredibilityClass::Low, domain)}));
        if (f > 0)
            posts.push_back(post_on(Platform::Facebook, "f" + std::to_string(id++),
                                    "2021-01-05", {url_of(CredibilityClass::Low, domain)}, f));
        tw_tallies.push_back(t);
        fb_tallies.push_back(f);
    }
    auto c = cross_platform_source_correlation(posts);
    CHECK(c.n == 26);
    CHECK(c.coefficient ==
          doctest::Approx(oracle::spearman_rho(tw_tallies, fb_tallies)).epsilon(1e-9));
    CHECK(c.p_value == doctest::Approx(oracle::spearman_p(tw_tallies, fb_tallies)).epsilon(1e-9));
}

namespace {

geo::Gazetteer region_gazetteer() {
    std::vector<core::GazetteerEntry> entries = {
        {"lazio", core::PlaceKind::Region, "lazio", 5755700},
        {"lombardia", core::PlaceKind::Region, "lombardia", 10027602},
        {"veneto", core::PlaceKind::Region, "veneto", 4879133},
        {"roma", core::PlaceKind::Municipality, "lazio", std::nullopt},
        {"milano", core::PlaceKind::Municipality, "lombardia", std::nullopt},
        {"verona", core::PlaceKind::Municipality, "veneto", std::nullopt},
    };
    return geo::Gazetteer::build(std::move(entries));
}

std::map<std::string, geo::GeoResolution> resolutions_for(
    const std::vector<std::pair<std::string, std::string>>& user_regions,
    const geo::Gazetteer& g) {
    std::map<std::string, geo::GeoResolution> out;
    for (const auto& [user, location] : user_regions)
        out[user] = geo::GeoResolution{user, g.resolve(location)};
    return out;
}

}  // namespace

TEST_CASE("region stats: user fractions, doses per million, exclusions") {
    auto g = region_gazetteer();
    auto resolutions = resolutions_for(
        {{"anna", "Roma"}, {"carla", "Milano"}, {"dario", "ignoto"}}, g);

    std::vector<ClassifiedPost> posts;
    for (int i = 0; i < 100; ++i)
        posts.push_back(post_on(Platform::Twitter, "a" + std::to_string(i), "2021-01-05",
                                i == 0 ? std::vector<credibility::ClassifiedUrl>{url_of(
                                             CredibilityClass::Low, "l.it")}
                                       : std::vector<credibility::ClassifiedUrl>{},
                                1, "anna"));

    std::vector<core::VaccineRecord> doses = {
        {*core::parse_date("2021-01-02"), "lazio", 600},
        {*core::parse_date("2021-01-03"), "lazio", 400},
        {*core::parse_date("2021-01-03"), "lombardia", 5000},
    };

    std::vector<std::string> diagnostics;
    auto stats = region_stats(resolutions, posts, doses, g, {}, &diagnostics);
    REQUIRE(stats.size() == 3);  // lazio, lombardia, veneto

    const auto& lazio = *std::find_if(stats.begin(), stats.end(),
                                      [](const RegionStat& r) { return r.region_code == "lazio"; });
    CHECK(lazio.users_located == 1);
    REQUIRE(lazio.mean_user_low_fraction.has_value());
    CHECK(*lazio.mean_user_low_fraction == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(lazio.total_doses == 1000);

    const auto& lombardia = *std::find_if(
        stats.begin(), stats.end(),
        [](const RegionStat& r) { return r.region_code == "lombardia"; });
    // carla is located there but has no tweets in the corpus
    CHECK(lombardia.users_located == 1);
    CHECK_FALSE(lombardia.mean_user_low_fraction.has_value());

    const auto& veneto = *std::find_if(stats.begin(), stats.end(), [](const RegionStat& r) {
        return r.region_code == "veneto";
    });
    CHECK(veneto.users_located == 0);
    CHECK_FALSE(veneto.mean_user_low_fraction.has_value());
    CHECK(veneto.total_doses == 0);

    CHECK(diagnostics.empty());
}

TEST_CASE("doses per million formula") {
    auto g = region_gazetteer();
    geo::Gazetteer exact = geo::Gazetteer::build({
        {"lazio", core::PlaceKind::Region, "lazio", 1000000},
    });
    std::vector<core::VaccineRecord> doses = {{*core::parse_date("2021-01-02"), "lazio", 1000}};
    auto stats = region_stats({}, {}, doses, exact);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].doses_per_million == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("region without population is excluded with a diagnostic") {
    geo::Gazetteer g = geo::Gazetteer::build({
        {"lazio", core::PlaceKind::Region, "lazio", 5755700},
        {"milano", core::PlaceKind::Municipality, "lombardia", std::nullopt},
    });
    auto resolutions = resolutions_for({{"carla", "Milano"}}, g);
    std::vector<std::string> diagnostics;
    auto stats = region_stats(resolutions, {}, {}, g, {}, &diagnostics);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].region_code == "lazio");
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].find("lombardia") != std::string::npos);
}

TEST_CASE("region stats doses respect the analysis window") {
    geo::Gazetteer g = geo::Gazetteer::build({
        {"lazio", core::PlaceKind::Region, "lazio", 1000000},
    });
    std::vector<core::VaccineRecord> doses = {
        {*core::parse_date("2021-01-01"), "lazio", 100},
        {*core::parse_date("2021-01-15"), "lazio", 200},
        {*core::parse_date("2021-02-01"), "lazio", 400},
    };
    RegionStatsOptions options;
    options.doses_window = DateWindow{*core::parse_date("2021-01-05"),
                                      *core::parse_date("2021-01-31")};
    auto stats = region_stats({}, {}, doses, g, options);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].total_doses == 200);
}

TEST_CASE("per-user averaging differs from pooled averaging") {
    auto g = region_gazetteer();
    auto resolutions = resolutions_for({{"a", "Roma"}, {"b", "Roma"}}, g);
    std::vector<ClassifiedPost> posts;
    // a: 1 low of 2 tweets (0.5); b: 0 low of 8 tweets (0.0)
    posts.push_back(post_on(Platform::Twitter, "a1", "2021-01-05",
                            {url_of(CredibilityClass::Low, "l.it")}, 1, "a"));
    posts.push_back(post_on(Platform::Twitter, "a2", "2021-01-05", {}, 1, "a"));
    for (int i = 0; i < 8; ++i)
        posts.push_back(post_on(Platform::Twitter, "b" + std::to_string(i), "2021-01-05", {},
                                1, "b"));

    auto per_user = region_stats(resolutions, posts, {}, g);
    const auto& lazio = *std::find_if(per_user.begin(), per_user.end(),
                                      [](const RegionStat& r) { return r.region_code == "lazio"; });
    CHECK(*lazio.mean_user_low_fraction == doctest::Approx(0.25).epsilon(1e-12));

    RegionStatsOptions pooled;
    pooled.pooled_fractions = true;
    auto pooled_stats = region_stats(resolutions, posts, {}, g, pooled);
    const auto& lazio_pooled =
        *std::find_if(pooled_stats.begin(), pooled_stats.end(),
                      [](const RegionStat& r) { return r.region_code == "lazio"; });
    CHECK(*lazio_pooled.mean_user_low_fraction == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("users vs population correlation signs and preconditions") {
    auto g = region_gazetteer();

    auto proportional = resolutions_for(
        {
            {"u1", "Roma"}, {"u2", "Roma"},                        // lazio: 2
            {"u3", "Milano"}, {"u4", "Milano"}, {"u5", "Milano"},  // lombardia: 3 (most)
            {"u6", "Verona"},                                      // veneto: 1 (least)
        },
        g);
    // lombardia (10.0M) > lazio (5.76M) > veneto (4.88M): counts 3 > 2 > 1
    auto c = users_vs_population_correlation(proportional, g);
    CHECK(c.coefficient > 0.9);
    CHECK(c.n == 3);

    auto anti = resolutions_for(
        {
            {"u1", "Verona"}, {"u2", "Verona"}, {"u3", "Verona"},
            {"u4", "Roma"}, {"u5", "Roma"},
            {"u6", "Milano"},
        },
        g);
    CHECK(users_vs_population_correlation(anti, g).coefficient < 0.0);

    auto sparse = resolutions_for({{"u1", "Roma"}, {"u2", "Milano"}}, g);
    CHECK_THROWS_AS(users_vs_population_correlation(sparse, g), std::invalid_argument);
}

TEST_CASE("20-region synthetic correlation recovers its construction value") {
    // Populations and user counts built proportionally with deterministic
    // noise; the construction r is computed by the oracle formula and the
    // implementation must land within 0.02 of it.
    std::vector<core::GazetteerEntry> entries;
    std::map<std::string, geo::GeoResolution> resolutions;
    std::vector<double> xs, ys;
    std::mt19937 rng(89);
    std::normal_distribution<double> noise(0.0, 14.0);
    int user_id = 0;
    for (std::size_t i = 0; i < core::kRegionCodes.size(); ++i) {
        const std::string code(core::kRegionCodes[i]);
        const std::uint64_t population = 400000 + 480000 * i;
        entries.push_back({code, core::PlaceKind::Region, code, population});
        const int users = std::max(
            1, static_cast<int>(std::round(static_cast<double>(population) / 50000.0 +
                                           noise(rng))));
        for (int u = 0; u < users; ++u) {
            const std::string uid = "user" + std::to_string(user_id++);
            resolutions[uid] =
                geo::GeoResolution{uid, geo::Gazetteer::Match{code, core::PlaceKind::Region, code}};
        }
        xs.push_back(users);
        ys.push_back(static_cast<double>(population));
    }
    auto g = geo::Gazetteer::build(std::move(entries));
    const double constructed = oracle::pearson_r(xs, ys);
    auto c = users_vs_population_correlation(resolutions, g);
    CHECK(c.coefficient == doctest::Approx(constructed).epsilon(0.02));
    CHECK(c.coefficient == doctest::Approx(constructed).epsilon(1e-9));  // same data, same r
    CHECK(c.n == 20);
}

TEST_CASE("report serializers round-trip and stay byte-stable") {
    SnapshotData data;
    data.meta.generated_at = "2021-01-18T23:59:59Z";
    data.meta.window = DateWindow{*core::parse_date("2020-12-20"), *core::parse_date("2021-01-18")};
    data.meta.counts["posts_twitter"] = 3;

    DailySeries tw{Platform::Twitter,
                   {{*core::parse_date("2021-01-01"), 10, 1, 2},
                    {*core::parse_date("2021-01-02"), 0, 0, 0}}};
    DailySeries fb{Platform::Facebook, {{*core::parse_date("2021-01-01"), 70, 7, 0}}};
    data.volumes = {tw, fb};
    data.fractions = {credibility_fractions(tw), credibility_fractions(fb)};
    data.leaderboard_twitter = {
        {"ALL_LOW_CREDIBILITY", CredibilityClass::Low, 30, 100, true},
        {"imolaoggi.it", CredibilityClass::Low, 20, 60, false},
        {"alta,со \"quote\".it", CredibilityClass::High, 10, 40, false},
    };
    data.leaderboard_facebook = data.leaderboard_twitter;
    data.regions = {{"lazio", 5, 0.01, 1000, 5755700, 173.74}};
    data.regions[0].doses_per_million = 1000.0 * 1e6 / 5755700.0;
    data.correlations.cross_platform_sources = Correlation{0.65, 1.14e-05, 26};
    data.correlations.users_vs_population = Correlation{0.89, 0.0004, 20};
    youtube::VideoRecord removed;
    removed.video_id = "gone00000000";
    removed.video_id.resize(11, 'x');
    removed.status = youtube::VideoStatus::Removed;
    removed.tweet_shares = 3;
    youtube::VideoRecord available;
    available.video_id = "kHGtn_vnrJ8";
    available.status = youtube::VideoStatus::Available;
    available.title = "Intervista, con virgola";
    available.channel_id = "UCx";
    available.view_count = 450000;
    available.facebook_shares = 4000;
    data.videos = {available, removed};

    // CSV round-trips.
    {
        std::istringstream in(volume_series_csv(data.volumes));
        auto parsed = parse_volume_series_csv(in);
        REQUIRE(parsed.size() == 2);
        CHECK(parsed[0].points == data.volumes[0].points);
        CHECK(parsed[1].points == data.volumes[1].points);
    }
    {
        std::istringstream in(fraction_series_csv(data.fractions));
        auto parsed = parse_fraction_series_csv(in);
        CHECK(parsed[0].points == data.fractions[0].points);
    }
    {
        std::istringstream in(leaderboard_csv(data.leaderboard_twitter));
        auto parsed = parse_leaderboard_csv(in);
        CHECK(parsed == data.leaderboard_twitter);
    }
    {
        std::istringstream in(region_stats_csv(data.regions));
        auto parsed = parse_region_stats_csv(in);
        CHECK(parsed == data.regions);
    }
    {
        std::istringstream in(videos_csv(data.videos));
        auto parsed = parse_videos_csv(in);
        CHECK(parsed == data.videos);
    }
    {
        auto parsed = parse_correlations_json(correlations_json(data.correlations));
        REQUIRE(parsed.cross_platform_sources.has_value());
        CHECK(parsed.cross_platform_sources->coefficient == 0.65);
        CHECK(parsed.cross_platform_sources->p_value == 1.14e-05);
        REQUIRE(parsed.users_vs_population.has_value());
        CHECK(parsed.users_vs_population->n == 20);
    }

    // Identical input serializes to identical bytes.
    CHECK(volume_series_csv(data.volumes) == volume_series_csv(data.volumes));
    CHECK(correlations_json(data.correlations) == correlations_json(data.correlations));

    // Invalid report content is rejected.
    std::istringstream bad_fraction(
        "date,platform,low_fraction,high_fraction\n"
        "2021-01-01,twitter,1.5,0\n");
    CHECK_THROWS_AS(parse_fraction_series_csv(bad_fraction), core::LoadError);
}
