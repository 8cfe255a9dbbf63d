#include "vaxwatch/geo/resolver.hpp"

#include <algorithm>
#include <set>

#include "vaxwatch/core/normalize.hpp"

namespace vaxwatch::geo {

using core::PlaceKind;

namespace {

int kind_rank(PlaceKind k) {
    switch (k) {
        case PlaceKind::Region: return 2;
        case PlaceKind::Province: return 1;
        default: return 0;
    }
}

}  // namespace

Gazetteer Gazetteer::build(std::vector<core::GazetteerEntry> entries) {
    Gazetteer g;
    std::set<std::pair<std::string, PlaceKind>> seen;
    for (auto& e : entries) {
        std::string name = core::normalize_text(e.name_normalized);
        if (name.empty()) throw core::LoadError("gazetteer entry with empty name");
        if (!seen.insert({name, e.kind}).second) {
            throw core::LoadError("duplicate gazetteer entry (" + name + ", " +
                                  std::string(core::place_kind_name(e.kind)) + ")");
        }
        if (e.kind == PlaceKind::Region && e.population)
            g.region_populations_[e.region_code] = *e.population;

        g.max_tokens_ = std::max(g.max_tokens_, core::tokenize(name).size());
        g.names_[std::move(name)].push_back(Slot{e.kind, e.region_code});
        ++g.size_;
    }
    // Within one name, the highest-ranked kind decides the region.
    for (auto& [name, slots] : g.names_) {
        std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
            if (kind_rank(a.kind) != kind_rank(b.kind))
                return kind_rank(a.kind) > kind_rank(b.kind);
            return a.region_code < b.region_code;
        });
    }
    return g;
}

std::optional<Gazetteer::Match> Gazetteer::resolve(std::string_view location) const {
    if (names_.empty()) return std::nullopt;
    const std::vector<std::string> tokens =
        core::tokenize(core::normalize_text(location));
    if (tokens.empty()) return std::nullopt;

    std::optional<Match> best;
    auto better = [&](const std::string& name, const Slot& slot) {
        if (!best) return true;
        if (name.size() != best->name.size()) return name.size() > best->name.size();
        int r = kind_rank(slot.kind), br = kind_rank(best->kind);
        if (r != br) return r > br;
        return name < best->name;
    };

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::string window;
        for (std::size_t len = 1; len <= max_tokens_ && i + len <= tokens.size(); ++len) {
            if (len > 1) window.push_back(' ');
            window += tokens[i + len - 1];
            auto it = names_.find(window);
            if (it == names_.end()) continue;
            const Slot& slot = it->second.front();
            if (better(it->first, slot))
                best = Match{it->first, slot.kind, slot.region_code};
        }
    }
    return best;
}

std::map<std::string, GeoResolution> geolocate_users(std::span<const core::Post> posts,
                                                     const Gazetteer& gazetteer) {
    // Most recent post per author decides the location; ties go to the
    // lexicographically larger post id for determinism.
    std::map<std::string, const core::Post*> latest;
    for (const core::Post& p : posts) {
        if (p.platform != core::Platform::Twitter) continue;
        auto [it, inserted] = latest.try_emplace(p.author_id, &p);
        if (!inserted) {
            const core::Post* cur = it->second;
            if (p.timestamp > cur->timestamp ||
                (p.timestamp == cur->timestamp && p.post_id > cur->post_id))
                it->second = &p;
        }
    }

    std::map<std::string, GeoResolution> resolutions;
    for (const auto& [user_id, post] : latest) {
        if (post->author_location.empty()) continue;
        resolutions[user_id] = GeoResolution{user_id, gazetteer.resolve(post->author_location)};
    }
    return resolutions;
}

}  // namespace vaxwatch::geo
