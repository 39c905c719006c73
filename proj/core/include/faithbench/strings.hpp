#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace faithbench::strings {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool contains(std::string_view haystack, std::string_view needle);
bool icontains(std::string_view haystack, std::string_view needle);
std::size_t ifind(std::string_view haystack, std::string_view needle);  // npos if absent
std::string replace_all(std::string_view s, std::string_view from, std::string_view to);

// Splits on runs of blank lines; chunks are trimmed and empties dropped.
std::vector<std::string> split_paragraphs(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace faithbench::strings
