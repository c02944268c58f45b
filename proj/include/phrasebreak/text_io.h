// phrasebreak/text_io.h

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phrasebreak {

std::string ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view data);

std::vector<std::string_view> Split(std::string_view s, char sep);
// Splits on runs of spaces/tabs, dropping empty pieces.
std::vector<std::string_view> SplitWhitespace(std::string_view s);
std::string_view Trim(std::string_view s);

std::optional<double> ParseDouble(std::string_view s);
std::optional<int64_t> ParseInt(std::string_view s);

// printf-style "%.*f".
std::string FormatFixed(double v, int decimals);

}  // namespace phrasebreak
