#include "vaxwatch/service/snapshot.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "vaxwatch/core/io.hpp"

namespace vaxwatch::service {

using analytics::SnapshotData;
using nlohmann::json;

namespace {

json read_manifest(const std::filesystem::path& dir) {
    std::string text;
    try {
        text = core::read_file(dir / analytics::kManifestFile);
    } catch (const core::LoadError& e) {
        throw SnapshotError(e.what());
    }
    json manifest = json::parse(text, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object())
        throw SnapshotError("manifest.json: invalid JSON in " + dir.string());
    return manifest;
}

}  // namespace

std::optional<std::string> read_manifest_snapshot_id(const std::filesystem::path& dir) {
    try {
        json manifest = read_manifest(dir);
        auto it = manifest.find("snapshot_id");
        if (it == manifest.end() || !it->is_string()) return std::nullopt;
        return it->get<std::string>();
    } catch (const SnapshotError&) {
        return std::nullopt;
    }
}

SnapshotData load_snapshot(const std::filesystem::path& dir) {
    const json manifest = read_manifest(dir);
    if (!manifest.contains("snapshot_id") || !manifest["snapshot_id"].is_string() ||
        !manifest.contains("files") || !manifest["files"].is_object())
        throw SnapshotError("manifest.json: missing snapshot_id or files in " + dir.string());

    const std::vector<std::string_view> expected = {
        analytics::kVolumeFile,        analytics::kFractionsFile,
        analytics::kLeaderboardTwitterFile, analytics::kLeaderboardFacebookFile,
        analytics::kRegionsFile,       analytics::kCorrelationsFile,
        analytics::kVideosFile,
    };

    std::map<std::string, std::string> contents;
    std::string combined;
    for (std::string_view name : expected) {
        auto entry = manifest["files"].find(std::string(name));
        if (entry == manifest["files"].end() || !entry->is_string())
            throw SnapshotError("manifest.json: no hash for " + std::string(name));
        std::string body;
        try {
            body = core::read_file(dir / name);
        } catch (const core::LoadError& e) {
            throw SnapshotError(e.what());
        }
        if (analytics::fnv1a64_hex(body) != entry->get<std::string>())
            throw SnapshotError("snapshot file " + std::string(name) +
                                " does not match its manifest hash (half-written snapshot?)");
        combined += name;
        combined.push_back('\0');
        combined += body;
        combined.push_back('\0');
        contents.emplace(std::string(name), std::move(body));
    }
    const std::string computed_id = analytics::fnv1a64_hex(combined);
    if (computed_id != manifest["snapshot_id"].get<std::string>())
        throw SnapshotError("snapshot_id mismatch in " + dir.string());

    SnapshotData data;
    try {
        std::istringstream vol(contents.at(std::string(analytics::kVolumeFile)));
        data.volumes = analytics::parse_volume_series_csv(vol);
        std::istringstream frac(contents.at(std::string(analytics::kFractionsFile)));
        data.fractions = analytics::parse_fraction_series_csv(frac);
        std::istringstream lb_tw(contents.at(std::string(analytics::kLeaderboardTwitterFile)));
        data.leaderboard_twitter = analytics::parse_leaderboard_csv(lb_tw);
        std::istringstream lb_fb(contents.at(std::string(analytics::kLeaderboardFacebookFile)));
        data.leaderboard_facebook = analytics::parse_leaderboard_csv(lb_fb);
        std::istringstream reg(contents.at(std::string(analytics::kRegionsFile)));
        data.regions = analytics::parse_region_stats_csv(reg);
        data.correlations = analytics::parse_correlations_json(
            contents.at(std::string(analytics::kCorrelationsFile)));
        std::istringstream vid(contents.at(std::string(analytics::kVideosFile)));
        data.videos = analytics::parse_videos_csv(vid);
    } catch (const core::LoadError& e) {
        throw SnapshotError(std::string("invalid snapshot: ") + e.what());
    }

    data.meta.snapshot_id = computed_id;
    data.meta.generated_at = manifest.value("generated_at", "");
    if (manifest.contains("window") && manifest["window"].is_object()) {
        auto from = core::parse_date(manifest["window"].value("from", ""));
        auto to = core::parse_date(manifest["window"].value("to", ""));
        if (from && to) data.meta.window = analytics::DateWindow{*from, *to};
    }
    if (manifest.contains("keyword_version") && manifest["keyword_version"].is_string())
        data.meta.keyword_version = manifest["keyword_version"].get<std::string>();
    if (manifest.contains("counts") && manifest["counts"].is_object()) {
        for (auto& [key, value] : manifest["counts"].items())
            if (value.is_number_unsigned())
                data.meta.counts[key] = value.get<std::uint64_t>();
    }
    return data;
}

}  // namespace vaxwatch::service
