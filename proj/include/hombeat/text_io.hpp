#pragma once

#include <filesystem>
#include <string>

namespace hombeat {

// Shortest round-trippable decimal representation ('.' separator, locale
// independent); "nan"/"inf" for non-finite values.
std::string format_double(double value);

// Parses a full string as double; throws ParseError mentioning `context`.
double parse_double(const std::string& text, const std::string& context);

// Writes via a temporary file in the same directory followed by a rename, so
// readers never observe partial content.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace hombeat
