#include "vaxwatch/core/posts_io.hpp"

#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "vaxwatch/core/io.hpp"

namespace vaxwatch::core {

using nlohmann::json;

json post_to_json(const Post& post) {
    json j;
    j["platform"] = platform_name(post.platform);
    j["post_id"] = post.post_id;
    j["timestamp"] = format_instant(post.timestamp);
    j["text"] = post.text;
    j["author_id"] = post.author_id;
    if (!post.author_location.empty()) j["author_location"] = post.author_location;
    j["share_weight"] = post.share_weight;
    j["urls"] = post.urls;
    return j;
}

std::string post_to_json_line(const Post& post) { return post_to_json(post).dump(); }

Post post_from_json(const json& j) {
    auto require_string = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string())
            throw LoadError(std::string("post missing string field '") + key + "'");
        return it->get<std::string>();
    };

    Post p;
    auto platform = platform_from_name(require_string("platform"));
    if (!platform) throw LoadError("post has unknown platform");
    p.platform = *platform;

    p.post_id = require_string("post_id");
    if (p.post_id.empty()) throw LoadError("post has empty post_id");

    auto ts = parse_instant(require_string("timestamp"));
    if (!ts) throw LoadError("post '" + p.post_id + "' has unparseable timestamp");
    p.timestamp = *ts;

    p.text = require_string("text");
    p.author_id = require_string("author_id");
    if (auto it = j.find("author_location"); it != j.end() && it->is_string())
        p.author_location = it->get<std::string>();

    auto sw = j.find("share_weight");
    if (sw == j.end() || !sw->is_number_unsigned())
        throw LoadError("post '" + p.post_id + "' missing non-negative share_weight");
    p.share_weight = sw->get<std::uint64_t>();
    if (p.platform == Platform::Twitter && p.share_weight < 1)
        throw LoadError("post '" + p.post_id + "': Twitter share_weight must be >= 1");

    auto urls = j.find("urls");
    if (urls == j.end() || !urls->is_array())
        throw LoadError("post '" + p.post_id + "' missing urls array");
    for (const auto& u : *urls) {
        if (!u.is_string()) throw LoadError("post '" + p.post_id + "' has non-string url");
        p.urls.push_back(u.get<std::string>());
    }
    return p;
}

void write_posts(std::ostream& out, std::span<const Post> posts) {
    for (const Post& p : posts) out << post_to_json_line(p) << '\n';
}

void write_posts_file(const std::filesystem::path& path, std::span<const Post> posts) {
    std::ofstream out = open_output(path);
    write_posts(out, posts);
    if (!out) throw LoadError("write failed: " + path.string());
}

std::vector<Post> read_posts(std::istream& in, std::string_view source_name) {
    std::vector<Post> posts;
    std::set<std::pair<Platform, std::string>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                            ": invalid JSON");
        }
        Post p;
        try {
            p = post_from_json(j);
        } catch (const LoadError& e) {
            throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                            ": " + e.what());
        }
        if (!seen.insert({p.platform, p.post_id}).second) {
            throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                            ": duplicate post id '" + p.post_id + "'");
        }
        posts.push_back(std::move(p));
    }
    return posts;
}

std::vector<Post> read_posts_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    return read_posts(in, path.string());
}

}  // namespace vaxwatch::core
