#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vaxwatch/core/types.hpp"

namespace vaxwatch::ingest {

/// Fatal ingest failure (unreadable source). Per-record problems are never
/// fatal; they land in IngestCounters instead.
class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct IngestCounters {
    std::uint64_t parsed = 0;
    std::uint64_t rejected = 0;
    std::map<std::string, std::uint64_t> reject_reasons;

    void reject(const std::string& reason) {
        ++rejected;
        ++reject_reasons[reason];
    }
};

using PostSink = std::function<void(core::Post&&)>;

/// Newline-delimited JSON records with fields id, created_at, text,
/// user.id, user.location, entities.urls. Yields share_weight = 1 per
/// record; malformed records are counted and skipped.
void parse_twitter_feed(std::istream& in, const PostSink& sink, IngestCounters& counters);
std::vector<core::Post> parse_twitter_feed(std::istream& in, IngestCounters& counters);

/// CSV with header date,message,link,share_count,account_id (an optional
/// post_id column overrides the synthesized row id). share_weight is the
/// share_count column; an empty share_count means 0. Post URLs combine the
/// link column with URLs found in the message text.
void parse_facebook_feed(std::istream& in, const PostSink& sink, IngestCounters& counters);
std::vector<core::Post> parse_facebook_feed(std::istream& in, IngestCounters& counters);

}  // namespace vaxwatch::ingest
