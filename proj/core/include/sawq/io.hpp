#pragma once

#include <string>

namespace sawq {

// Shortest round-trip decimal form (std::to_chars); the one float formatter
// used for every CSV cell so reruns stay byte-identical.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sawq
