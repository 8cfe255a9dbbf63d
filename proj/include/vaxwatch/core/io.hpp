#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace vaxwatch::core {

/// Opens for reading, throwing LoadError with the path on failure.
std::ifstream open_input(const std::filesystem::path& path);

/// Opens for writing (truncating), throwing LoadError on failure.
std::ofstream open_output(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace vaxwatch::core
