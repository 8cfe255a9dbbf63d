#include "vaxwatch/youtube/enrich.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <thread>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/core/io.hpp"

namespace vaxwatch::youtube {

using core::Platform;

std::string_view video_status_name(VideoStatus s) {
    return s == VideoStatus::Available ? "available" : "removed";
}

std::optional<VideoStatus> video_status_from_name(std::string_view name) {
    if (name == "available") return VideoStatus::Available;
    if (name == "removed") return VideoStatus::Removed;
    return std::nullopt;
}

std::map<std::string, VideoShares> collect_video_shares(
    std::span<const credibility::ClassifiedPost> posts) {
    std::map<std::string, VideoShares> shares;
    for (const auto& cp : posts) {
        std::set<std::string> ids;  // same video twice in one post counts once
        for (const auto& url : cp.urls)
            if (url.youtube_id) ids.insert(*url.youtube_id);
        for (const auto& id : ids) {
            VideoShares& s = shares[id];
            if (cp.post.platform == Platform::Twitter)
                s.tweet_shares += 1;
            else
                s.facebook_shares += cp.post.share_weight;
        }
    }
    return shares;
}

FixtureMetadataProvider FixtureMetadataProvider::load(std::istream& in,
                                                      std::string_view source_name) {
    core::CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() < 4 || row[0] != "video_id" || row[1] != "title" ||
        row[2] != "channel_id" || row[3] != "view_count") {
        throw core::LoadError(std::string(source_name) +
                              ": expected header 'video_id,title,channel_id,view_count'");
    }
    FixtureMetadataProvider provider;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() < 4 || row[0].empty()) {
            throw core::LoadError(std::string(source_name) + " row " + std::to_string(rowno) +
                                  ": expected video_id,title,channel_id,view_count");
        }
        ProviderRecord rec;
        rec.title = row[1];
        rec.channel_id = row[2];
        auto [ptr, ec] = std::from_chars(row[3].data(), row[3].data() + row[3].size(),
                                         rec.view_count);
        if (ec != std::errc() || ptr != row[3].data() + row[3].size()) {
            throw core::LoadError(std::string(source_name) + " row " + std::to_string(rowno) +
                                  ": invalid view count '" + row[3] + "'");
        }
        provider.records_[row[0]] = std::move(rec);
    }
    return provider;
}

FixtureMetadataProvider FixtureMetadataProvider::load_file(const std::filesystem::path& path) {
    std::ifstream in = core::open_input(path);
    return load(in, path.string());
}

std::map<std::string, ProviderRecord> FixtureMetadataProvider::fetch(
    const std::vector<std::string>& ids) {
    std::map<std::string, ProviderRecord> out;
    for (const auto& id : ids) {
        auto it = records_.find(id);
        if (it != records_.end()) out.emplace(it->first, it->second);
    }
    return out;
}

std::map<std::string, VideoRecord> fetch_metadata(const std::set<std::string>& ids,
                                                  MetadataProvider& provider,
                                                  unsigned parallelism) {
    const std::vector<std::string> all(ids.begin(), ids.end());
    if (parallelism == 0) parallelism = 1;
    const std::size_t chunks = std::min<std::size_t>(parallelism, std::max<std::size_t>(all.size(), 1));

    std::vector<std::map<std::string, ProviderRecord>> partials(chunks);
    std::vector<std::exception_ptr> failures(chunks);

    auto worker = [&](std::size_t chunk) {
        std::vector<std::string> slice;
        for (std::size_t i = chunk; i < all.size(); i += chunks) slice.push_back(all[i]);
        if (slice.empty()) return;
        try {
            partials[chunk] = provider.fetch(slice);
        } catch (...) {
            failures[chunk] = std::current_exception();
        }
    };

    if (chunks == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) threads.emplace_back(worker, c);
        for (auto& t : threads) t.join();
    }
    // A failed chunk aborts the whole fetch; partial results are never
    // passed off as removals.
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::map<std::string, ProviderRecord> found;
    for (auto& partial : partials) found.merge(partial);

    std::map<std::string, VideoRecord> out;
    for (const auto& id : all) {
        VideoRecord rec;
        rec.video_id = id;
        auto it = found.find(id);
        if (it == found.end()) {
            rec.status = VideoStatus::Removed;
        } else {
            rec.status = VideoStatus::Available;
            rec.title = it->second.title;
            rec.channel_id = it->second.channel_id;
            rec.view_count = it->second.view_count;
        }
        out.emplace(id, std::move(rec));
    }
    return out;
}

std::vector<VideoRecord> top_videos(std::span<const VideoRecord> records, std::size_t k,
                                    Platform platform) {
    std::vector<VideoRecord> sorted(records.begin(), records.end());
    std::sort(sorted.begin(), sorted.end(), [&](const VideoRecord& a, const VideoRecord& b) {
        auto metric = [&](const VideoRecord& r) {
            return platform == Platform::Twitter ? r.tweet_shares : r.facebook_shares;
        };
        if (metric(a) != metric(b)) return metric(a) > metric(b);
        return a.video_id < b.video_id;
    });
    if (sorted.size() > k) sorted.resize(k);
    return sorted;
}

std::vector<VideoRecord> enrich_videos(std::span<const credibility::ClassifiedPost> posts,
                                       MetadataProvider& provider, unsigned parallelism) {
    const auto shares = collect_video_shares(posts);
    std::set<std::string> ids;
    for (const auto& [id, _] : shares) ids.insert(id);

    auto records = fetch_metadata(ids, provider, parallelism);
    std::vector<VideoRecord> out;
    out.reserve(records.size());
    for (auto& [id, rec] : records) {
        const VideoShares& s = shares.at(id);
        rec.tweet_shares = s.tweet_shares;
        rec.facebook_shares = s.facebook_shares;
        out.push_back(std::move(rec));
    }
    return out;  // ascending video_id, deterministic
}

}  // namespace vaxwatch::youtube
