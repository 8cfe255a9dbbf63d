#include "vaxwatch/core/io.hpp"

#include <sstream>

#include "vaxwatch/core/types.hpp"

namespace vaxwatch::core {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open for reading: " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot open for writing: " + path.string());
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out = open_output(path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw LoadError("write failed: " + path.string());
}

}  // namespace vaxwatch::core
