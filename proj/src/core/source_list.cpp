#include "vaxwatch/core/source_list.hpp"

#include <algorithm>
#include <istream>

#include "vaxwatch/core/io.hpp"

namespace vaxwatch::core {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

SourceList load_source_list(std::istream& in, CredibilityClass label,
                            std::string_view source_name) {
    SourceList list;
    list.label = label;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view entry = trim(line);
        if (auto hash = entry.find('#'); hash != std::string_view::npos)
            entry = trim(entry.substr(0, hash));
        if (entry.empty()) continue;

        std::string domain(entry);
        std::transform(domain.begin(), domain.end(), domain.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (domain.starts_with("www.")) domain.erase(0, 4);
        while (!domain.empty() && domain.back() == '.') domain.pop_back();

        bool bad = domain.empty() ||
                   domain.find_first_of("/:? \t\\@") != std::string::npos ||
                   domain.find('.') == std::string::npos;
        if (bad) {
            throw LoadError(std::string(source_name) + " line " + std::to_string(lineno) +
                            ": not a bare registrable domain: '" + std::string(entry) + "'");
        }
        list.domains.insert(std::move(domain));
    }
    return list;
}

SourceList load_source_list_file(const std::filesystem::path& path, CredibilityClass label) {
    std::ifstream in = open_input(path);
    return load_source_list(in, label, path.string());
}

SourceLists make_source_lists(SourceList low, SourceList high) {
    for (const auto& d : low.domains) {
        if (high.domains.count(d)) {
            throw LoadError("source lists overlap: '" + d +
                            "' appears in both the low- and high-credibility list");
        }
    }
    low.label = CredibilityClass::Low;
    high.label = CredibilityClass::High;
    return SourceLists{std::move(low), std::move(high)};
}

SourceLists load_source_lists(const std::filesystem::path& low_path,
                              const std::filesystem::path& high_path) {
    return make_source_lists(load_source_list_file(low_path, CredibilityClass::Low),
                             load_source_list_file(high_path, CredibilityClass::High));
}

}  // namespace vaxwatch::core
