#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace surro {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);

// Minimal RFC 4180 handling: quotes fields containing ',', '"' or newlines.
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split(std::string_view line);

}  // namespace surro
