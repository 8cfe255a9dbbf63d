#include "vaxwatch/credibility/classify.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "vaxwatch/core/csv.hpp"
#include "vaxwatch/core/io.hpp"

namespace vaxwatch::credibility {

using core::CredibilityClass;

namespace {

bool is_url_char(char c) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80) return false;
    if (std::isspace(u)) return false;
    return u > 0x20 && c != '<' && c != '>' && c != '"';
}

bool ascii_ieq(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

bool valid_host_chars(std::string_view host) {
    if (host.empty()) return false;
    if (host.front() == '[') return host.back() == ']';  // IPv6 literal
    return host.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789.-") ==
           std::string_view::npos;
}

bool is_video_id(std::string_view s) {
    if (s.size() != 11) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    });
}

std::string_view first_path_segment(std::string_view path) {
    if (!path.empty() && path.front() == '/') path.remove_prefix(1);
    auto slash = path.find('/');
    return slash == std::string_view::npos ? path : path.substr(0, slash);
}

std::optional<std::string> query_param(std::string_view query, std::string_view key) {
    std::size_t pos = 0;
    while (pos <= query.size()) {
        auto amp = query.find('&', pos);
        std::string_view pair =
            query.substr(pos, amp == std::string_view::npos ? std::string_view::npos
                                                            : amp - pos);
        auto eq = pair.find('=');
        if (eq != std::string_view::npos && pair.substr(0, eq) == key)
            return std::string(pair.substr(eq + 1));
        if (amp == std::string_view::npos) break;
        pos = amp + 1;
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> extract_urls(std::string_view text) {
    std::vector<std::string> urls;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // Case-insensitive scan for the next scheme.
        std::size_t start = std::string_view::npos;
        for (std::size_t i = pos; i + 7 <= text.size(); ++i) {
            if ((text[i] == 'h' || text[i] == 'H')) {
                if (ascii_ieq(text.substr(i, 7), "http://") ||
                    (i + 8 <= text.size() && ascii_ieq(text.substr(i, 8), "https://"))) {
                    start = i;
                    break;
                }
            }
        }
        if (start == std::string_view::npos) break;

        std::size_t end = start;
        while (end < text.size() && is_url_char(text[end])) ++end;
        std::string_view candidate = text.substr(start, end - start);
        // Trailing sentence punctuation belongs to the text, not the URL.
        while (!candidate.empty() &&
               std::string_view(".,;:!?')]}").find(candidate.back()) != std::string_view::npos)
            candidate.remove_suffix(1);

        if (parse_http_url(candidate)) urls.emplace_back(candidate);
        pos = start + std::max<std::size_t>(candidate.size(), 1);
    }
    return urls;
}

std::optional<ParsedUrl> parse_http_url(std::string_view url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return std::nullopt;
    std::string_view scheme = url.substr(0, scheme_end);
    if (!ascii_ieq(scheme, "http") && !ascii_ieq(scheme, "https")) return std::nullopt;

    std::string_view rest = url.substr(scheme_end + 3);
    auto authority_end = rest.find_first_of("/?#");
    std::string_view authority =
        authority_end == std::string_view::npos ? rest : rest.substr(0, authority_end);
    std::string_view tail =
        authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

    if (auto at = authority.rfind('@'); at != std::string_view::npos)
        authority = authority.substr(at + 1);

    std::string_view host = authority;
    if (!host.empty() && host.front() == '[') {
        auto close = host.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = host.substr(0, close + 1);
    } else if (auto colon = host.find(':'); colon != std::string_view::npos) {
        std::string_view port = host.substr(colon + 1);
        if (!port.empty() &&
            port.find_first_not_of("0123456789") != std::string_view::npos)
            return std::nullopt;
        host = host.substr(0, colon);
    }

    ParsedUrl parsed;
    parsed.host.assign(host);
    std::transform(parsed.host.begin(), parsed.host.end(), parsed.host.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!valid_host_chars(parsed.host)) return std::nullopt;

    if (!tail.empty() && tail.front() == '/') {
        auto qpos = tail.find_first_of("?#");
        parsed.path.assign(tail.substr(0, qpos));
        if (qpos != std::string_view::npos && tail[qpos] == '?') {
            auto frag = tail.find('#', qpos);
            parsed.query.assign(tail.substr(qpos + 1, frag == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : frag - qpos - 1));
        }
    } else if (!tail.empty() && tail.front() == '?') {
        auto frag = tail.find('#');
        parsed.query.assign(tail.substr(1, frag == std::string_view::npos
                                               ? std::string_view::npos
                                               : frag - 1));
    }
    return parsed;
}

std::optional<std::string> canonical_domain(std::string_view url, const SuffixTable& table) {
    auto parsed = parse_http_url(url);
    if (!parsed) return std::nullopt;
    std::string_view host = parsed->host;
    if (host.starts_with("www.")) host.remove_prefix(4);
    if (host.empty()) return std::nullopt;
    return table.registrable_domain(host);
}

std::optional<std::string> extract_youtube_id(std::string_view url) {
    auto parsed = parse_http_url(url);
    if (!parsed) return std::nullopt;
    std::string_view host = parsed->host;
    if (host.starts_with("www.")) host.remove_prefix(4);
    if (host.starts_with("m.")) host.remove_prefix(2);

    std::string_view path = parsed->path;
    std::optional<std::string> candidate;
    if (host == "youtu.be") {
        candidate = std::string(first_path_segment(path));
    } else if (host == "youtube.com" || host.ends_with(".youtube.com") ||
               host == "youtube-nocookie.com" || host.ends_with(".youtube-nocookie.com")) {
        if (path == "/watch") {
            candidate = query_param(parsed->query, "v");
        } else if (path.starts_with("/embed/")) {
            candidate = std::string(first_path_segment(path.substr(6)));
        } else if (path.starts_with("/shorts/")) {
            candidate = std::string(first_path_segment(path.substr(7)));
        }
    }
    if (candidate && is_video_id(*candidate)) return candidate;
    return std::nullopt;
}

RedirectMap RedirectMap::load(std::istream& in, std::string_view source_name) {
    core::CsvReader reader(in);
    std::vector<std::string> row;
    if (!reader.next(row) || row.size() < 2 || row[0] != "short_url" ||
        row[1] != "expanded_url") {
        throw core::LoadError(std::string(source_name) +
                              ": expected header 'short_url,expanded_url'");
    }
    RedirectMap map;
    std::size_t rowno = 1;
    while (reader.next(row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() < 2 || row[0].empty() || row[1].empty()) {
            throw core::LoadError(std::string(source_name) + " row " +
                                  std::to_string(rowno) + ": expected two URLs");
        }
        map.map_[row[0]] = row[1];
    }
    return map;
}

RedirectMap RedirectMap::load_file(const std::filesystem::path& path) {
    std::ifstream in = core::open_input(path);
    return load(in, path.string());
}

std::optional<std::string> RedirectMap::expand(const std::string& url) const {
    auto it = map_.find(url);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

UrlClassifier::UrlClassifier(core::SourceLists lists, const SuffixTable* table,
                             RedirectMap redirects)
    : lists_(std::move(lists)), table_(table), redirects_(std::move(redirects)) {}

ClassifiedUrl UrlClassifier::classify(std::string_view raw_url) const {
    ClassifiedUrl out;
    out.raw_url.assign(raw_url);

    std::string expanded = out.raw_url;
    if (auto hit = redirects_.expand(expanded)) expanded = *hit;

    auto domain = canonical_domain(expanded, *table_);
    if (!domain) {
        out.parse_failed = true;
        return out;  // Unknown with recorded parse failure
    }
    out.canonical_domain = *domain;
    out.credibility = lists_.classify(out.canonical_domain);
    out.is_youtube = out.canonical_domain == "youtube.com" ||
                     out.canonical_domain == "youtu.be" ||
                     out.canonical_domain == "youtube-nocookie.com";
    if (out.is_youtube) out.youtube_id = extract_youtube_id(expanded);
    return out;
}

std::vector<ClassifiedPost> classify_posts(std::vector<core::Post> posts,
                                           const UrlClassifier& classifier) {
    std::vector<ClassifiedPost> out;
    out.reserve(posts.size());
    for (auto& post : posts) {
        ClassifiedPost cp;
        cp.urls.reserve(post.urls.size());
        for (const auto& url : post.urls) cp.urls.push_back(classifier.classify(url));
        cp.post = std::move(post);
        out.push_back(std::move(cp));
    }
    return out;
}

}  // namespace vaxwatch::credibility
