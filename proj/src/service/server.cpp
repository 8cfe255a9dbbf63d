#include "vaxwatch/service/server.hpp"

#include <atomic>
#include <optional>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vaxwatch/service/snapshot.hpp"
#include "vaxwatch/youtube/enrich.hpp"

namespace vaxwatch::service {

using analytics::SnapshotData;
using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, json{{"error", message}});
}

constexpr core::Date kMinDate{std::numeric_limits<std::int32_t>::min() / 4};
constexpr core::Date kMaxDate{std::numeric_limits<std::int32_t>::max() / 4};

struct RangeParams {
    core::Date from = kMinDate;
    core::Date to = kMaxDate;
};

// Parses optional from/to query parameters; returns nullopt after sending a
// 400 when they are malformed or inverted.
std::optional<RangeParams> parse_range(const httplib::Request& req, httplib::Response& res) {
    RangeParams range;
    if (req.has_param("from")) {
        auto d = core::parse_date(req.get_param_value("from"));
        if (!d) {
            send_error(res, 400, "invalid 'from' date, expected YYYY-MM-DD");
            return std::nullopt;
        }
        range.from = *d;
    }
    if (req.has_param("to")) {
        auto d = core::parse_date(req.get_param_value("to"));
        if (!d) {
            send_error(res, 400, "invalid 'to' date, expected YYYY-MM-DD");
            return std::nullopt;
        }
        range.to = *d;
    }
    if (range.to < range.from) {
        send_error(res, 400, "'from' must not be after 'to'");
        return std::nullopt;
    }
    return range;
}

// Platform filter: absent means both platforms.
std::optional<std::optional<core::Platform>> parse_platform(const httplib::Request& req,
                                                            httplib::Response& res,
                                                            bool required = false) {
    if (!req.has_param("platform")) {
        if (required) {
            send_error(res, 400, "missing 'platform' parameter");
            return std::nullopt;
        }
        return std::optional<core::Platform>{};
    }
    auto p = core::platform_from_name(req.get_param_value("platform"));
    if (!p) {
        send_error(res, 400, "unknown platform, expected 'twitter' or 'facebook'");
        return std::nullopt;
    }
    return std::optional<core::Platform>{*p};
}

std::optional<std::size_t> parse_k(const httplib::Request& req, httplib::Response& res,
                                   std::size_t fallback) {
    if (!req.has_param("k")) return fallback;
    const std::string raw = req.get_param_value("k");
    std::size_t k = 0;
    for (char c : raw) {
        if (c < '0' || c > '9') {
            send_error(res, 400, "'k' must be a positive integer");
            return std::nullopt;
        }
        k = k * 10 + static_cast<std::size_t>(c - '0');
        if (k > 1000000) break;
    }
    if (k == 0) {
        send_error(res, 400, "'k' must be a positive integer");
        return std::nullopt;
    }
    return k;
}

json correlation_json(const std::optional<analytics::Correlation>& c,
                      const std::string& method) {
    if (!c) return nullptr;
    return json{{"method", method},
                {"coefficient", c->coefficient},
                {"p_value", c->p_value},
                {"n", c->n}};
}

json leaderboard_json(const std::vector<analytics::LeaderboardEntry>& stored, std::size_t k) {
    json entries = json::array();
    std::size_t domains_taken = 0;
    std::size_t rank = 0;
    for (const auto& e : stored) {
        if (!e.is_total_low) {
            if (domains_taken == k) continue;
            ++domains_taken;
        }
        ++rank;
        entries.push_back(json{{"rank", rank},
                               {"name", e.name},
                               {"credibility", credibility_name(e.credibility)},
                               {"twitter_shares", e.twitter_shares},
                               {"facebook_shares", e.facebook_shares},
                               {"is_total_low", e.is_total_low}});
    }
    return entries;
}

}  // namespace

class ApiServer::Impl {
  public:
    Impl(std::filesystem::path dir, Options options)
        : dir_(std::move(dir)), options_(options) {
        auto initial = std::make_shared<const SnapshotData>(load_snapshot(dir_));
        {
            std::lock_guard lock(mutex_);
            snapshot_ = std::move(initial);
        }
        install_routes();
    }

    ~Impl() { shutdown(); }

    std::shared_ptr<const SnapshotData> current() const {
        std::lock_guard lock(mutex_);
        return snapshot_;
    }

    bool reload_if_changed() {
        auto id = read_manifest_snapshot_id(dir_);
        if (!id || *id == current()->meta.snapshot_id) return false;
        try {
            auto fresh = std::make_shared<const SnapshotData>(load_snapshot(dir_));
            std::lock_guard lock(mutex_);
            snapshot_ = std::move(fresh);
            return true;
        } catch (const SnapshotError&) {
            // Mid-write or corrupt; keep serving the current snapshot.
            return false;
        }
    }

    int start(const std::string& host, int port) {
        int bound = port;
        if (port == 0) {
            bound = server_.bind_to_any_port(host);
            if (bound < 0) throw std::runtime_error("failed to bind " + host);
        } else if (!server_.bind_to_port(host, port)) {
            throw std::runtime_error("failed to bind " + host + ":" + std::to_string(port));
        }
        listen_thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();

        if (options_.reload_interval.count() > 0) {
            poll_thread_ = std::thread([this] {
                while (!stopping_.load()) {
                    std::unique_lock lock(poll_mutex_);
                    poll_cv_.wait_for(lock, options_.reload_interval,
                                      [this] { return stopping_.load(); });
                    if (stopping_.load()) break;
                    reload_if_changed();
                }
            });
        }
        return bound;
    }

    void wait() {
        if (listen_thread_.joinable()) listen_thread_.join();
    }

    void shutdown() {
        bool expected = false;
        if (!stopping_.compare_exchange_strong(expected, true)) {
            if (listen_thread_.joinable()) listen_thread_.join();
            if (poll_thread_.joinable()) poll_thread_.join();
            return;
        }
        poll_cv_.notify_all();
        server_.stop();
        if (listen_thread_.joinable()) listen_thread_.join();
        if (poll_thread_.joinable()) poll_thread_.join();
    }

  private:
    void install_routes() {
        server_.Get("/api/meta", [this](const httplib::Request&, httplib::Response& res) {
            auto snap = current();
            json j;
            j["snapshot_id"] = snap->meta.snapshot_id;
            j["generated_at"] = snap->meta.generated_at;
            if (snap->meta.window) {
                j["window"] = {{"from", core::format_date(snap->meta.window->from)},
                               {"to", core::format_date(snap->meta.window->to)}};
            } else {
                j["window"] = nullptr;
            }
            j["keyword_version"] = snap->meta.keyword_version.empty()
                                       ? json(nullptr)
                                       : json(snap->meta.keyword_version);
            j["counts"] = snap->meta.counts;
            send_json(res, 200, j);
        });

        server_.Get("/api/timeseries/volume",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_volume(req, res);
                    });
        server_.Get("/api/timeseries/credibility",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_credibility(req, res);
                    });
        server_.Get("/api/leaderboard",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_leaderboard(req, res);
                    });
        server_.Get("/api/regions",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_regions(req, res);
                    });
        server_.Get("/api/videos/top",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_videos(req, res);
                    });
        server_.Get("/api/correlations",
                    [this](const httplib::Request&, httplib::Response& res) {
                        auto snap = current();
                        const auto& c = snap->correlations;
                        json j;
                        j["snapshot_id"] = snap->meta.snapshot_id;
                        j["cross_platform_sources"] =
                            correlation_json(c.cross_platform_sources, "spearman");
                        j["cross_platform_scope"] = c.cross_platform_scope;
                        j["cross_platform_note"] = c.cross_platform_note;
                        j["users_vs_population"] =
                            correlation_json(c.users_vs_population, "pearson");
                        j["users_vs_population_note"] = c.users_vs_population_note;
                        send_json(res, 200, j);
                    });

        server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (res.body.empty())
                send_json(res, res.status, json{{"error", "not found"}});
        });
    }

    void handle_volume(const httplib::Request& req, httplib::Response& res) {
        auto snap = current();
        auto platform = parse_platform(req, res);
        if (!platform && res.status == 400) return;
        auto range = parse_range(req, res);
        if (!range) return;

        json series = json::array();
        for (const auto& s : snap->volumes) {
            if (*platform && s.platform != **platform) continue;
            json points = json::array();
            for (const auto& p : filter_range(s.points, range->from, range->to)) {
                points.push_back(json{{"date", core::format_date(p.date)},
                                      {"volume", p.volume},
                                      {"low_count", p.low_count},
                                      {"high_count", p.high_count}});
            }
            series.push_back(
                json{{"platform", platform_name(s.platform)}, {"points", points}});
        }
        send_json(res, 200,
                  json{{"snapshot_id", snap->meta.snapshot_id}, {"series", series}});
    }

    void handle_credibility(const httplib::Request& req, httplib::Response& res) {
        auto snap = current();
        auto platform = parse_platform(req, res);
        if (!platform && res.status == 400) return;
        auto range = parse_range(req, res);
        if (!range) return;

        json series = json::array();
        for (const auto& s : snap->fractions) {
            if (*platform && s.platform != **platform) continue;
            json points = json::array();
            for (const auto& p : filter_range(s.points, range->from, range->to)) {
                points.push_back(json{{"date", core::format_date(p.date)},
                                      {"low_fraction", p.low_fraction},
                                      {"high_fraction", p.high_fraction}});
            }
            series.push_back(
                json{{"platform", platform_name(s.platform)}, {"points", points}});
        }
        send_json(res, 200,
                  json{{"snapshot_id", snap->meta.snapshot_id}, {"series", series}});
    }

    void handle_leaderboard(const httplib::Request& req, httplib::Response& res) {
        auto snap = current();
        auto platform = parse_platform(req, res);
        if (!platform && res.status == 400) return;
        const core::Platform chosen = *platform ? **platform : core::Platform::Twitter;
        const auto& stored = chosen == core::Platform::Twitter ? snap->leaderboard_twitter
                                                               : snap->leaderboard_facebook;
        std::size_t stored_domains = 0;
        for (const auto& e : stored)
            if (!e.is_total_low) ++stored_domains;
        auto k = parse_k(req, res, stored_domains == 0 ? 1 : stored_domains);
        if (!k) return;

        send_json(res, 200,
                  json{{"snapshot_id", snap->meta.snapshot_id},
                       {"platform", platform_name(chosen)},
                       {"k", std::min(*k, stored_domains)},
                       {"entries", leaderboard_json(stored, *k)}});
    }

    void handle_regions(const httplib::Request& req, httplib::Response& res) {
        auto snap = current();
        std::optional<std::string> region;
        if (req.has_param("region")) {
            region = req.get_param_value("region");
            if (!core::is_region_code(*region)) {
                send_error(res, 400, "unknown region code");
                return;
            }
        }
        json regions = json::array();
        for (const auto& r : snap->regions) {
            if (region && r.region_code != *region) continue;
            regions.push_back(
                json{{"region_code", r.region_code},
                     {"users_located", r.users_located},
                     {"mean_user_low_fraction",
                      r.mean_user_low_fraction ? json(*r.mean_user_low_fraction)
                                               : json(nullptr)},
                     {"total_doses", r.total_doses},
                     {"population", r.population},
                     {"doses_per_million", r.doses_per_million}});
        }
        send_json(res, 200,
                  json{{"snapshot_id", snap->meta.snapshot_id}, {"regions", regions}});
    }

    void handle_videos(const httplib::Request& req, httplib::Response& res) {
        auto snap = current();
        auto platform = parse_platform(req, res);
        if (!platform && res.status == 400) return;
        const core::Platform chosen = *platform ? **platform : core::Platform::Twitter;
        auto k = parse_k(req, res, 20);
        if (!k) return;

        json videos = json::array();
        for (const auto& v : youtube::top_videos(snap->videos, *k, chosen)) {
            videos.push_back(json{
                {"video_id", v.video_id},
                {"status", youtube::video_status_name(v.status)},
                {"title", v.title ? json(*v.title) : json(nullptr)},
                {"channel_id", v.channel_id ? json(*v.channel_id) : json(nullptr)},
                {"view_count", v.view_count ? json(*v.view_count) : json(nullptr)},
                {"tweet_shares", v.tweet_shares},
                {"facebook_shares", v.facebook_shares}});
        }
        send_json(res, 200,
                  json{{"snapshot_id", snap->meta.snapshot_id},
                       {"platform", platform_name(chosen)},
                       {"k", *k},
                       {"videos", videos}});
    }

    std::filesystem::path dir_;
    Options options_;
    mutable std::mutex mutex_;
    std::shared_ptr<const SnapshotData> snapshot_;
    httplib::Server server_;
    std::thread listen_thread_;
    std::thread poll_thread_;
    std::atomic<bool> stopping_{false};
    std::mutex poll_mutex_;
    std::condition_variable poll_cv_;
};

ApiServer::ApiServer(std::filesystem::path snapshot_dir, Options options)
    : impl_(std::make_unique<Impl>(std::move(snapshot_dir), options)) {}

ApiServer::~ApiServer() = default;

int ApiServer::start(const std::string& host, int port) { return impl_->start(host, port); }

void ApiServer::wait() { impl_->wait(); }

void ApiServer::stop() { impl_->shutdown(); }

bool ApiServer::reload_if_changed() { return impl_->reload_if_changed(); }

std::shared_ptr<const analytics::SnapshotData> ApiServer::snapshot() const {
    return impl_->current();
}

}  // namespace vaxwatch::service
