#include "vaxwatch/ingest/feeds.hpp"

#include <charconv>
#include <istream>

#include <nlohmann/json.hpp>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/credibility/classify.hpp"

namespace vaxwatch::ingest {

using core::Platform;
using core::Post;
using nlohmann::json;

namespace {

std::optional<std::string> string_or_number(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (it->is_string()) {
        auto s = it->get<std::string>();
        if (s.empty()) return std::nullopt;
        return s;
    }
    if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
    return std::nullopt;
}

void check_stream(std::istream& in) {
    if (in.bad()) throw IngestError("feed read failure");
}

}  // namespace

void parse_twitter_feed(std::istream& in, const PostSink& sink, IngestCounters& counters) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            counters.reject("invalid_json");
            continue;
        }

        auto id = string_or_number(record, "id");
        if (!id) {
            counters.reject("missing_id");
            continue;
        }
        auto created = record.find("created_at");
        if (created == record.end() || !created->is_string()) {
            counters.reject("missing_created_at");
            continue;
        }
        auto ts = core::parse_instant(created->get<std::string>());
        if (!ts) {
            counters.reject("bad_timestamp");
            continue;
        }
        auto text = record.find("text");
        if (text == record.end() || !text->is_string()) {
            counters.reject("missing_text");
            continue;
        }
        auto user = record.find("user");
        if (user == record.end() || !user->is_object()) {
            counters.reject("missing_user");
            continue;
        }
        auto user_id = string_or_number(*user, "id");
        if (!user_id) {
            counters.reject("missing_user_id");
            continue;
        }

        Post post;
        post.platform = Platform::Twitter;
        post.post_id = std::move(*id);
        post.timestamp = *ts;
        post.text = text->get<std::string>();
        post.author_id = std::move(*user_id);
        if (auto loc = user->find("location"); loc != user->end() && loc->is_string())
            post.author_location = loc->get<std::string>();
        post.share_weight = 1;

        // The fixture schema nests urls under entities; accept a flat urls
        // array as well.
        const json* urls = nullptr;
        if (auto entities = record.find("entities");
            entities != record.end() && entities->is_object()) {
            if (auto u = entities->find("urls"); u != entities->end() && u->is_array())
                urls = &*u;
        }
        if (!urls) {
            if (auto u = record.find("urls"); u != record.end() && u->is_array()) urls = &*u;
        }
        bool bad_urls = false;
        if (urls) {
            for (const auto& u : *urls) {
                if (!u.is_string()) {
                    bad_urls = true;
                    break;
                }
                post.urls.push_back(u.get<std::string>());
            }
        }
        if (bad_urls) {
            counters.reject("bad_urls");
            continue;
        }
        for (auto& u : credibility::extract_urls(post.text)) post.urls.push_back(std::move(u));

        ++counters.parsed;
        sink(std::move(post));
    }
    check_stream(in);
}

std::vector<Post> parse_twitter_feed(std::istream& in, IngestCounters& counters) {
    std::vector<Post> posts;
    parse_twitter_feed(in, [&](Post&& p) { posts.push_back(std::move(p)); }, counters);
    return posts;
}

void parse_facebook_feed(std::istream& in, const PostSink& sink, IngestCounters& counters) {
    core::CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header)) throw IngestError("facebook feed: missing header row");

    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    };
    auto date_col = column("date");
    auto message_col = column("message");
    auto link_col = column("link");
    auto shares_col = column("share_count");
    auto account_col = column("account_id");
    auto post_id_col = column("post_id");
    if (!date_col || !message_col || !link_col || !shares_col || !account_col) {
        throw IngestError(
            "facebook feed: header must contain date,message,link,share_count,account_id");
    }

    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        auto field = [&](std::size_t col) -> std::string_view {
            return col < row.size() ? std::string_view(row[col]) : std::string_view{};
        };

        std::string_view date_s = field(*date_col);
        auto ts = core::parse_instant(date_s);
        if (!ts) {
            if (auto day = core::parse_date(date_s)) {
                ts = core::Instant{static_cast<std::int64_t>(day->days) * 86400};
            }
        }
        if (!ts) {
            counters.reject("bad_date");
            continue;
        }

        std::string_view account = field(*account_col);
        if (account.empty()) {
            counters.reject("missing_account_id");
            continue;
        }

        std::uint64_t shares = 0;
        std::string_view shares_s = field(*shares_col);
        if (!shares_s.empty()) {
            auto [ptr, ec] =
                std::from_chars(shares_s.data(), shares_s.data() + shares_s.size(), shares);
            if (ec != std::errc() || ptr != shares_s.data() + shares_s.size()) {
                counters.reject("bad_share_count");
                continue;
            }
        }

        Post post;
        post.platform = Platform::Facebook;
        post.post_id = post_id_col && !field(*post_id_col).empty()
                           ? std::string(field(*post_id_col))
                           : "fb-" + std::to_string(rowno);
        post.timestamp = *ts;
        post.text.assign(field(*message_col));
        post.author_id.assign(account);
        post.share_weight = shares;
        if (std::string_view link = field(*link_col); !link.empty())
            post.urls.emplace_back(link);
        for (auto& u : credibility::extract_urls(post.text)) post.urls.push_back(std::move(u));

        ++counters.parsed;
        sink(std::move(post));
    }
    check_stream(in);
}

std::vector<Post> parse_facebook_feed(std::istream& in, IngestCounters& counters) {
    std::vector<Post> posts;
    parse_facebook_feed(in, [&](Post&& p) { posts.push_back(std::move(p)); }, counters);
    return posts;
}

}  // namespace vaxwatch::ingest
