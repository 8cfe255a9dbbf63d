#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "vaxwatch/core/normalize.hpp"
#include "vaxwatch/geo/resolver.hpp"

using namespace vaxwatch;
using namespace vaxwatch::geo;
using core::GazetteerEntry;
using core::PlaceKind;

namespace {

std::vector<GazetteerEntry> sample_entries() {
    return {
        {"roma", PlaceKind::Municipality, "lazio", std::nullopt},
        {"lazio", PlaceKind::Region, "lazio", 5755700},
        {"milano", PlaceKind::Municipality, "lombardia", std::nullopt},
        {"milano", PlaceKind::Province, "lombardia", std::nullopt},
        {"lombardia", PlaceKind::Region, "lombardia", 10027602},
        {"paese", PlaceKind::Municipality, "veneto", std::nullopt},
        {"veneto", PlaceKind::Region, "veneto", 4879133},
        {"sesto", PlaceKind::Municipality, "trentino_alto_adige", std::nullopt},
        {"sesto san giovanni", PlaceKind::Municipality, "lombardia", std::nullopt},
        {"forli", PlaceKind::Municipality, "emilia_romagna", std::nullopt},
        {"emilia romagna", PlaceKind::Region, "emilia_romagna", 4438937},
    };
}

core::Post tweet(std::string id, std::string author, std::string location,
                 std::string timestamp) {
    core::Post p;
    p.platform = core::Platform::Twitter;
    p.post_id = std::move(id);
    p.timestamp = *core::parse_instant(timestamp);
    p.author_id = std::move(author);
    p.author_location = std::move(location);
    p.share_weight = 1;
    return p;
}

// Independent enumerator: every gazetteer name occurring as a contiguous
// token run of the normalized location.
std::vector<std::string> all_matches(const std::vector<GazetteerEntry>& entries,
                                     std::string_view location) {
    auto tokens = core::tokenize(core::normalize_text(location));
    std::vector<std::string> found;
    for (const auto& e : entries) {
        auto name_tokens = core::tokenize(e.name_normalized);
        for (std::size_t i = 0; i + name_tokens.size() <= tokens.size(); ++i) {
            bool match = true;
            for (std::size_t k = 0; k < name_tokens.size(); ++k)
                if (tokens[i + k] != name_tokens[k]) {
                    match = false;
                    break;
                }
            if (match) {
                found.push_back(e.name_normalized);
                break;
            }
        }
    }
    return found;
}

}  // namespace

TEST_CASE("gazetteer build counts entries and rejects duplicates") {
    Gazetteer g = Gazetteer::build(sample_entries());
    CHECK(g.size() == sample_entries().size());

    Gazetteer empty = Gazetteer::build({});
    CHECK(empty.size() == 0);
    CHECK(empty.resolve("Roma") == std::nullopt);

    auto dup = sample_entries();
    dup.push_back({"roma", PlaceKind::Municipality, "lazio", std::nullopt});
    CHECK_THROWS_AS(Gazetteer::build(dup), core::LoadError);
}

TEST_CASE("resolve_location keeps the longest match") {
    Gazetteer g = Gazetteer::build(sample_entries());

    auto roma_lazio = g.resolve("Roma, Lazio");
    REQUIRE(roma_lazio.has_value());
    CHECK(roma_lazio->name == "lazio");
    CHECK(roma_lazio->kind == PlaceKind::Region);
    CHECK(roma_lazio->region_code == "lazio");

    CHECK(g.resolve("") == std::nullopt);
    CHECK(g.resolve("in nessun posto noto") == std::nullopt);

    // Documented false-positive class: the municipality named like the
    // common word for "village".
    auto paese = g.resolve("vivo a Paese");
    REQUIRE(paese.has_value());
    CHECK(paese->region_code == "veneto");

    auto sesto = g.resolve("Sesto San Giovanni");
    REQUIRE(sesto.has_value());
    CHECK(sesto->name == "sesto san giovanni");
    CHECK(sesto->region_code == "lombardia");

    // Token-contiguous, not substring: "romantica" must not match "roma".
    CHECK(g.resolve("una cena romantica") == std::nullopt);

    // Accents and case fold before matching.
    auto forli = g.resolve("  FORLÌ  ");
    REQUIRE(forli.has_value());
    CHECK(forli->region_code == "emilia_romagna");
}

TEST_CASE("ties prefer region over province over municipality") {
    Gazetteer g = Gazetteer::build(sample_entries());
    // "milano" exists as municipality and province; province wins the tie.
    auto milano = g.resolve("Milano");
    REQUIRE(milano.has_value());
    CHECK(milano->kind == PlaceKind::Province);

    // Equal-length distinct names tie lexicographically.
    Gazetteer tie = Gazetteer::build({
        {"aaaa", PlaceKind::Municipality, "lazio", std::nullopt},
        {"bbbb", PlaceKind::Municipality, "veneto", std::nullopt},
    });
    auto pick = tie.resolve("bbbb aaaa");
    REQUIRE(pick.has_value());
    CHECK(pick->name == "aaaa");
}

TEST_CASE("resolution is independent of gazetteer load order") {
    auto entries = sample_entries();
    const std::vector<std::string> probes = {
        "Roma, Lazio", "Sesto San Giovanni (MI)", "vivo a Paese", "Milano centro",
        "Forlì",       "lazio lombardia",         "sesto",        "",
    };
    std::mt19937 rng(99);
    Gazetteer reference = Gazetteer::build(entries);
    for (int round = 0; round < 20; ++round) {
        std::shuffle(entries.begin(), entries.end(), rng);
        Gazetteer shuffled = Gazetteer::build(entries);
        for (const auto& probe : probes)
            CHECK(shuffled.resolve(probe) == reference.resolve(probe));
    }
}

TEST_CASE("selected match has maximal character length among all matches") {
    auto entries = sample_entries();
    Gazetteer g = Gazetteer::build(entries);
    const std::vector<std::string> probes = {
        "Roma, Lazio",       "Sesto San Giovanni", "Paese",        "Milano e Roma",
        "lombardia di roma", "forli emilia romagna", "veneto paese", "sesto",
    };
    for (const auto& probe : probes) {
        auto selected = g.resolve(probe);
        auto matches = all_matches(entries, probe);
        if (!selected) {
            CHECK(matches.empty());
            continue;
        }
        for (const auto& m : matches) CHECK(selected->name.size() >= m.size());
    }
}

TEST_CASE("geolocate_users resolves each author once by most recent post") {
    Gazetteer g = Gazetteer::build(sample_entries());
    std::vector<core::Post> posts = {
        tweet("1", "anna", "Milano", "2021-01-01T10:00:00Z"),
        tweet("2", "bruno", "", "2021-01-01T11:00:00Z"),
        tweet("3", "anna", "Roma, Lazio", "2021-01-02T10:00:00Z"),  // newer wins
        tweet("4", "carla", "in nessun posto", "2021-01-01T09:00:00Z"),
    };
    auto resolutions = geolocate_users(posts, g);

    REQUIRE(resolutions.size() == 2);  // bruno skipped: empty location
    CHECK(resolutions.count("bruno") == 0);

    REQUIRE(resolutions.at("anna").match.has_value());
    CHECK(resolutions.at("anna").match->region_code == "lazio");

    // carla attempted but unmatched
    CHECK_FALSE(resolutions.at("carla").match.has_value());
}

TEST_CASE("geolocate_users ignores facebook posts") {
    Gazetteer g = Gazetteer::build(sample_entries());
    core::Post fb;
    fb.platform = core::Platform::Facebook;
    fb.post_id = "f1";
    fb.timestamp = *core::parse_instant("2021-01-01T00:00:00Z");
    fb.author_id = "page";
    fb.author_location = "Milano";
    auto resolutions = geolocate_users(std::vector<core::Post>{fb}, g);
    CHECK(resolutions.empty());
}

TEST_CASE("known resolution rate on a constructed corpus") {
    Gazetteer g = Gazetteer::build(sample_entries());
    std::vector<core::Post> posts;
    int resolvable = 0, attempted = 0;
    for (int i = 0; i < 100; ++i) {
        std::string location;
        if (i % 2 == 0) {
            location = "Milano";  // resolves
            ++resolvable;
            ++attempted;
        } else if (i % 4 == 1) {
            location = "altrove sconosciuto";  // attempted, no match
            ++attempted;
        }  // else empty: skipped
        posts.push_back(tweet("p" + std::to_string(i), "u" + std::to_string(i), location,
                              "2021-01-01T10:00:00Z"));
    }
    auto resolutions = geolocate_users(posts, g);
    CHECK(resolutions.size() == static_cast<std::size_t>(attempted));
    int resolved = 0;
    for (const auto& [_, res] : resolutions)
        if (res.match) ++resolved;
    CHECK(resolved == resolvable);
    CHECK(static_cast<double>(resolved) / static_cast<double>(attempted) ==
          doctest::Approx(50.0 / 75.0));
}
