// Command-line front end for the monitoring pipeline: replay platform
// feeds, enrich video links, aggregate reports, serve the JSON API.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vaxwatch/analytics/aggregate.hpp"
#include "vaxwatch/analytics/reports.hpp"
#include "vaxwatch/core/io.hpp"
#include "vaxwatch/core/posts_io.hpp"
#include "vaxwatch/core/source_list.hpp"
#include "vaxwatch/core/vaccine.hpp"
#include "vaxwatch/credibility/classify.hpp"
#include "vaxwatch/geo/resolver.hpp"
#include "vaxwatch/ingest/feeds.hpp"
#include "vaxwatch/ingest/filter.hpp"
#include "vaxwatch/ingest/keywords.hpp"
#include "vaxwatch/service/server.hpp"
#include "vaxwatch/service/snapshot.hpp"
#include "vaxwatch/youtube/enrich.hpp"

namespace {

using namespace vaxwatch;

struct IngestArgs {
    std::string platform;
    std::string input;
    std::string keywords;
    std::string out;
    std::string from;
    std::string to;
};

core::Date parse_date_arg(const std::string& value, const std::string& flag) {
    auto d = core::parse_date(value);
    if (!d) throw CLI::ValidationError(flag, "expected YYYY-MM-DD, got '" + value + "'");
    return *d;
}

int run_ingest(const IngestArgs& args) {
    auto platform = core::platform_from_name(args.platform);
    if (!platform) {
        std::cerr << "error: --platform must be 'twitter' or 'facebook'\n";
        return 1;
    }
    std::optional<core::Date> from, to;
    if (!args.from.empty()) from = parse_date_arg(args.from, "--from");
    if (!args.to.empty()) to = parse_date_arg(args.to, "--to");

    const auto timeline = ingest::KeywordTimeline::load_file(args.keywords);

    std::ifstream in = core::open_input(args.input);
    ingest::IngestCounters counters;
    std::vector<core::Post> feed = *platform == core::Platform::Twitter
                                       ? ingest::parse_twitter_feed(in, counters)
                                       : ingest::parse_facebook_feed(in, counters);

    // Collection-window check happens between parsing and keyword filtering.
    std::vector<core::Post> in_window;
    in_window.reserve(feed.size());
    for (auto& post : feed) {
        const core::Date day = post.timestamp.day();
        if ((from && day < *from) || (to && day > *to)) {
            counters.reject("out_of_window");
            continue;
        }
        in_window.push_back(std::move(post));
    }

    ingest::FilterStats stats;
    std::vector<core::Post> corpus = ingest::filter_stream(in_window, timeline, &stats);
    core::write_posts_file(args.out, corpus);

    std::cerr << "parsed=" << counters.parsed << " rejected=" << counters.rejected;
    for (const auto& [reason, count] : counters.reject_reasons)
        std::cerr << " rejected." << reason << "=" << count;
    std::cerr << " passed=" << stats.passed << " dropped=" << stats.dropped << "\n";
    return 0;
}

struct EnrichArgs {
    std::string posts;
    std::string metadata;
    std::string out;
    unsigned parallelism = 4;
};

int run_enrich(const EnrichArgs& args) {
    auto posts = core::read_posts_file(args.posts);
    // Video extraction needs no source lists; classify against empty ones.
    credibility::UrlClassifier classifier{core::SourceLists{}};
    auto classified = credibility::classify_posts(std::move(posts), classifier);

    auto provider = youtube::FixtureMetadataProvider::load_file(args.metadata);
    auto videos = youtube::enrich_videos(classified, provider, args.parallelism);
    core::write_file(args.out, analytics::videos_csv(videos));

    std::uint64_t removed = 0;
    for (const auto& v : videos)
        if (v.status == youtube::VideoStatus::Removed) ++removed;
    std::cerr << "videos=" << videos.size() << " removed=" << removed << "\n";
    return 0;
}

struct AggregateArgs {
    std::string posts;
    std::string low;
    std::string high;
    std::string gazetteer;
    std::string doses;
    std::string out;
    std::string redirects;
    std::string videos;
    std::string keywords;
    std::string suffix_list;
    std::string from;
    std::string to;
    std::string generated_at;
    std::string source_scope = "low";
    std::size_t k = 20;
    bool pooled_fractions = false;
};

int run_aggregate(const AggregateArgs& args) {
    auto lists = core::load_source_lists(args.low, args.high);

    credibility::SuffixTable custom_table;
    const credibility::SuffixTable* table = &credibility::SuffixTable::bundled();
    if (!args.suffix_list.empty()) {
        custom_table = credibility::SuffixTable::load_file(args.suffix_list);
        table = &custom_table;
    }
    credibility::RedirectMap redirects;
    if (!args.redirects.empty())
        redirects = credibility::RedirectMap::load_file(args.redirects);

    auto posts = core::read_posts_file(args.posts);
    credibility::UrlClassifier classifier{std::move(lists), table, std::move(redirects)};
    auto classified = credibility::classify_posts(std::move(posts), classifier);

    auto gazetteer = geo::Gazetteer::build(core::load_gazetteer_file(args.gazetteer));
    auto doses = core::load_vaccine_records_file(args.doses);
    auto resolutions = geo::geolocate_users(
        [&] {
            std::vector<core::Post> raw;
            raw.reserve(classified.size());
            for (const auto& cp : classified) raw.push_back(cp.post);
            return raw;
        }(),
        gazetteer);

    std::optional<analytics::DateWindow> window;
    if (!args.from.empty() && !args.to.empty()) {
        window = analytics::DateWindow{parse_date_arg(args.from, "--from"),
                                       parse_date_arg(args.to, "--to")};
        if (window->to < window->from)
            throw CLI::ValidationError("--from/--to", "inverted window");
    } else if (args.from.empty() != args.to.empty()) {
        throw CLI::ValidationError("--from/--to", "provide both or neither");
    } else {
        window = analytics::corpus_window(classified);
    }

    analytics::SnapshotData data;
    data.volumes = analytics::daily_volume(classified, window);
    for (const auto& series : data.volumes)
        data.fractions.push_back(analytics::credibility_fractions(series));
    data.leaderboard_twitter =
        analytics::build_leaderboard(classified, args.k, core::Platform::Twitter);
    data.leaderboard_facebook =
        analytics::build_leaderboard(classified, args.k, core::Platform::Facebook);

    analytics::RegionStatsOptions region_options;
    region_options.doses_window = window;
    region_options.pooled_fractions = args.pooled_fractions;
    std::vector<std::string> diagnostics;
    data.regions = analytics::region_stats(resolutions, classified, doses, gazetteer,
                                           region_options, &diagnostics);
    for (const auto& d : diagnostics) std::cerr << "warning: " << d << "\n";

    analytics::SourceScope scope = analytics::SourceScope::Low;
    if (args.source_scope == "high") scope = analytics::SourceScope::High;
    else if (args.source_scope == "all") scope = analytics::SourceScope::LowAndHigh;
    else if (args.source_scope != "low")
        throw CLI::ValidationError("--source-scope", "expected low, high or all");
    data.correlations.cross_platform_scope = args.source_scope;
    try {
        data.correlations.cross_platform_sources =
            analytics::cross_platform_source_correlation(classified, scope);
    } catch (const std::exception& e) {
        data.correlations.cross_platform_note = e.what();
    }
    try {
        data.correlations.users_vs_population =
            analytics::users_vs_population_correlation(resolutions, gazetteer);
    } catch (const std::exception& e) {
        data.correlations.users_vs_population_note = e.what();
    }

    if (!args.videos.empty()) {
        std::ifstream vin = core::open_input(args.videos);
        data.videos = analytics::parse_videos_csv(vin);
    }

    // Deterministic metadata: the snapshot timestamp defaults to the newest
    // post in the corpus so identical inputs produce identical bytes.
    if (!args.generated_at.empty()) {
        if (!core::parse_instant(args.generated_at))
            throw CLI::ValidationError("--generated-at", "expected ISO-8601 UTC instant");
        data.meta.generated_at = args.generated_at;
    } else {
        core::Instant latest{0};
        for (const auto& cp : classified) latest = std::max(latest, cp.post.timestamp);
        data.meta.generated_at = core::format_instant(latest);
    }
    data.meta.window = window;
    if (!args.keywords.empty()) {
        auto timeline = ingest::KeywordTimeline::load_file(args.keywords);
        data.meta.keyword_version =
            core::format_date(timeline.versions().back().version_date);
    }

    std::uint64_t tweets = 0, fb_posts = 0;
    std::set<std::string> twitter_users;
    for (const auto& cp : classified) {
        if (cp.post.platform == core::Platform::Twitter) {
            ++tweets;
            twitter_users.insert(cp.post.author_id);
        } else {
            ++fb_posts;
        }
    }
    std::uint64_t geolocated = 0;
    for (const auto& [_, res] : resolutions)
        if (res.match) ++geolocated;
    data.meta.counts["posts_twitter"] = tweets;
    data.meta.counts["posts_facebook"] = fb_posts;
    data.meta.counts["twitter_users"] = twitter_users.size();
    data.meta.counts["users_with_location"] = resolutions.size();
    data.meta.counts["users_geolocated"] = geolocated;
    data.meta.counts["videos"] = data.videos.size();

    const std::string id = analytics::write_snapshot(args.out, data);
    std::cerr << "snapshot " << id << " written to " << args.out << "\n";
    return 0;
}

struct ServeArgs {
    std::string snapshot;
    std::string bind = "127.0.0.1:8080";
    unsigned reload_interval_ms = 1000;
};

int run_serve(const ServeArgs& args) {
    auto colon = args.bind.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "error: --bind expects HOST:PORT\n";
        return 1;
    }
    const std::string host = args.bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(args.bind.substr(colon + 1));
    } catch (const std::exception&) {
        std::cerr << "error: invalid port in --bind\n";
        return 1;
    }

    service::ServerOptions options;
    options.reload_interval = std::chrono::milliseconds(args.reload_interval_ms);
    service::ApiServer server(args.snapshot, options);
    const int bound = server.start(host, port);
    std::cerr << "serving snapshot " << server.snapshot()->meta.snapshot_id << " on http://"
              << host << ":" << bound << "\n";
    server.wait();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vaccine-conversation monitoring pipeline"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand(
        "ingest", "Parse a platform feed and keep keyword-matching posts");
    ingest_cmd->add_option("--platform", ingest_args.platform, "twitter or facebook")
        ->required();
    ingest_cmd->add_option("--input", ingest_args.input, "feed file")->required();
    ingest_cmd->add_option("--keywords", ingest_args.keywords, "keyword list file")
        ->required();
    ingest_cmd->add_option("--out", ingest_args.out, "output posts file")->required();
    ingest_cmd->add_option("--from", ingest_args.from, "collection window start");
    ingest_cmd->add_option("--to", ingest_args.to, "collection window end");

    EnrichArgs enrich_args;
    auto* enrich_cmd =
        app.add_subcommand("enrich-videos", "Resolve video metadata for a post corpus");
    enrich_cmd->add_option("--posts", enrich_args.posts, "posts file")->required();
    enrich_cmd->add_option("--metadata", enrich_args.metadata, "video metadata fixture")
        ->required();
    enrich_cmd->add_option("--out", enrich_args.out, "output videos file")->required();
    enrich_cmd->add_option("--parallelism", enrich_args.parallelism,
                           "max concurrent metadata fetches");

    AggregateArgs agg_args;
    auto* agg_cmd = app.add_subcommand("aggregate", "Compute the report snapshot");
    agg_cmd->add_option("--posts", agg_args.posts, "posts file")->required();
    agg_cmd->add_option("--low", agg_args.low, "low-credibility domain list")->required();
    agg_cmd->add_option("--high", agg_args.high, "high-credibility domain list")->required();
    agg_cmd->add_option("--gazetteer", agg_args.gazetteer, "gazetteer CSV")->required();
    agg_cmd->add_option("--doses", agg_args.doses, "vaccine dose records CSV")->required();
    agg_cmd->add_option("--out", agg_args.out, "snapshot output directory")->required();
    agg_cmd->add_option("--redirects", agg_args.redirects, "short-URL expansion map");
    agg_cmd->add_option("--videos", agg_args.videos, "videos file from enrich-videos");
    agg_cmd->add_option("--keywords", agg_args.keywords,
                        "keyword file, stamps the keyword version into the manifest");
    agg_cmd->add_option("--suffix-list", agg_args.suffix_list,
                        "custom public-suffix table (default: bundled snapshot)");
    agg_cmd->add_option("--from", agg_args.from, "analysis window start");
    agg_cmd->add_option("--to", agg_args.to, "analysis window end");
    agg_cmd->add_option("--generated-at", agg_args.generated_at,
                        "snapshot timestamp (default: newest post)");
    agg_cmd->add_option("--k", agg_args.k, "leaderboard size");
    agg_cmd->add_option("--source-scope", agg_args.source_scope,
                        "lists entering the cross-platform correlation: low, high or all");
    agg_cmd->add_flag("--pooled-region-fractions", agg_args.pooled_fractions,
                      "pool tweets per region instead of averaging per-user fractions");

    ServeArgs serve_args;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API for a snapshot");
    serve_cmd->add_option("--snapshot", serve_args.snapshot, "snapshot directory")
        ->required();
    serve_cmd->add_option("--bind", serve_args.bind, "HOST:PORT (default 127.0.0.1:8080)");
    serve_cmd->add_option("--reload-interval-ms", serve_args.reload_interval_ms,
                          "manifest poll cadence, 0 disables hot reload");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) return run_ingest(ingest_args);
        if (enrich_cmd->parsed()) return run_enrich(enrich_args);
        if (agg_cmd->parsed()) return run_aggregate(agg_args);
        if (serve_cmd->parsed()) return run_serve(serve_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
