#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vaxwatch/core/types.hpp"
#include "vaxwatch/credibility/classify.hpp"

namespace vaxwatch::youtube {

enum class VideoStatus { Available, Removed };

std::string_view video_status_name(VideoStatus s);
std::optional<VideoStatus> video_status_from_name(std::string_view name);

/// One video with its cross-platform share counts. Metadata fields are
/// absent for removed videos.
struct VideoRecord {
    std::string video_id;
    VideoStatus status = VideoStatus::Removed;
    std::optional<std::string> title;
    std::optional<std::string> channel_id;
    std::optional<std::uint64_t> view_count;
    std::uint64_t tweet_shares = 0;
    std::uint64_t facebook_shares = 0;

    friend bool operator==(const VideoRecord&, const VideoRecord&) = default;
};

struct VideoShares {
    std::uint64_t tweet_shares = 0;
    std::uint64_t facebook_shares = 0;
};

/// Per-video share tallies: one per Twitter post, share_weight per Facebook
/// post; a post mentioning the same video twice counts once.
std::map<std::string, VideoShares> collect_video_shares(
    std::span<const credibility::ClassifiedPost> posts);

/// Transient provider failure; retryable, never interpreted as a removed
/// video.
class ProviderError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ProviderRecord {
    std::string title;
    std::string channel_id;
    std::uint64_t view_count = 0;
};

/// Metadata source abstraction: live API client or local fixture.
class MetadataProvider {
  public:
    virtual ~MetadataProvider() = default;

    /// Returns records for every requested ID the provider knows about;
    /// omitted IDs mean the video no longer exists. Throws ProviderError on
    /// I/O failure.
    virtual std::map<std::string, ProviderRecord> fetch(
        const std::vector<std::string>& ids) = 0;
};

/// Reads a CSV fixture with header "video_id,title,channel_id,view_count".
class FixtureMetadataProvider : public MetadataProvider {
  public:
    static FixtureMetadataProvider load(std::istream& in,
                                        std::string_view source_name = "video metadata");
    static FixtureMetadataProvider load_file(const std::filesystem::path& path);

    std::map<std::string, ProviderRecord> fetch(const std::vector<std::string>& ids) override;

    std::size_t size() const { return records_.size(); }

  private:
    std::map<std::string, ProviderRecord> records_;
};

/// Resolves every requested ID: Available with metadata when the provider
/// returns it, Removed otherwise. The result keyset always equals `ids`.
/// Fetches are chunked and may run on up to `parallelism` threads.
std::map<std::string, VideoRecord> fetch_metadata(const std::set<std::string>& ids,
                                                  MetadataProvider& provider,
                                                  unsigned parallelism = 1);

/// Top-k by the platform's share metric, descending; ties broken by
/// ascending video_id.
std::vector<VideoRecord> top_videos(std::span<const VideoRecord> records, std::size_t k,
                                    core::Platform platform);

/// Full enrichment pass: collect shares, fetch metadata, merge.
std::vector<VideoRecord> enrich_videos(std::span<const credibility::ClassifiedPost> posts,
                                       MetadataProvider& provider, unsigned parallelism = 1);

}  // namespace vaxwatch::youtube
