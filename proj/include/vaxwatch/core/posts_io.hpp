#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vaxwatch/core/types.hpp"

namespace vaxwatch::core {

/// Canonical on-disk post format: one JSON object per line, keys sorted,
/// author_location omitted when empty. Round-trips every Post field.
nlohmann::json post_to_json(const Post& post);
std::string post_to_json_line(const Post& post);

/// Throws LoadError on missing/invalid fields or violated invariants
/// (empty post_id, unparseable timestamp, Twitter share_weight < 1).
Post post_from_json(const nlohmann::json& j);

void write_posts(std::ostream& out, std::span<const Post> posts);
void write_posts_file(const std::filesystem::path& path, std::span<const Post> posts);

/// Reads a full corpus; duplicate (platform, post_id) pairs are a load error.
std::vector<Post> read_posts(std::istream& in, std::string_view source_name = "posts");
std::vector<Post> read_posts_file(const std::filesystem::path& path);

}  // namespace vaxwatch::core
