#include "vaxwatch/credibility/suffix_table.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <vector>

#include "vaxwatch/core/io.hpp"
#include "vaxwatch/core/types.hpp"

namespace vaxwatch::credibility {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= host.size(); ++i) {
        if (i == host.size() || host[i] == '.') {
            labels.push_back(host.substr(start, i - start));
            start = i + 1;
        }
    }
    return labels;
}

bool is_ip_literal(std::string_view host) {
    if (!host.empty() && host.front() == '[') return true;  // IPv6
    return !host.empty() &&
           host.find_first_not_of("0123456789.") == std::string_view::npos;
}

}  // namespace

SuffixTable SuffixTable::parse(std::istream& in) {
    SuffixTable table;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view rule = trim(line);
        if (rule.empty() || rule.starts_with("//")) continue;
        // Rules are already lowercase in practice; normalize anyway.
        std::string r(rule);
        std::transform(r.begin(), r.end(), r.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (r.starts_with("!")) {
            table.exception_.insert(r.substr(1));
        } else if (r.starts_with("*.")) {
            table.wildcard_.insert(r.substr(2));
        } else {
            table.exact_.insert(std::move(r));
        }
    }
    if (table.rule_count() == 0) throw core::LoadError("suffix table: no rules");
    return table;
}

SuffixTable SuffixTable::parse_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

SuffixTable SuffixTable::load_file(const std::filesystem::path& path) {
    std::ifstream in = core::open_input(path);
    return parse(in);
}

std::string SuffixTable::registrable_domain(std::string_view host) const {
    while (!host.empty() && host.back() == '.') host.remove_suffix(1);
    if (host.empty()) return "";
    if (is_ip_literal(host)) return std::string(host);

    const auto labels = split_labels(host);
    const std::size_t n = labels.size();

    auto suffix_starting_at = [&](std::size_t i) {
        std::string s;
        for (std::size_t k = i; k < n; ++k) {
            if (k > i) s.push_back('.');
            s += labels[k];
        }
        return s;
    };

    // Exception rules win outright; the public suffix is the exception rule
    // with its leftmost label removed.
    for (std::size_t i = 0; i < n; ++i) {
        if (exception_.count(suffix_starting_at(i))) {
            std::size_t ps_labels = (n - i) - 1;
            std::size_t take = std::min(n, ps_labels + 1);
            return suffix_starting_at(n - take);
        }
    }

    std::size_t ps_labels = 1;  // default rule "*"
    for (std::size_t i = 0; i < n; ++i) {
        std::string s = suffix_starting_at(i);
        if (exact_.count(s)) ps_labels = std::max(ps_labels, n - i);
        // A wildcard rule "*.base" matches the suffix consisting of one
        // label plus base.
        if (i + 1 < n && wildcard_.count(suffix_starting_at(i + 1)))
            ps_labels = std::max(ps_labels, n - i);
        if (i == 0 && wildcard_.count(s)) {
            // Host is shorter than the wildcard rule; the whole host sits
            // inside the public suffix.
            ps_labels = std::max(ps_labels, n);
        }
    }

    std::size_t take = std::min(n, ps_labels + 1);
    return suffix_starting_at(n - take);
}

}  // namespace vaxwatch::credibility
