#pragma once

#include <string>

namespace pairsim {

// Whole file as text. Gzip-compressed files (magic bytes 1f 8b) are
// transparently inflated.
std::string read_text_file(const std::string& path);

// Shared numeric formatting for every emitter. precision >= 0 prints that
// many fixed decimals; a negative precision prints 17 significant digits.
std::string format_value(double v, int precision);

}  // namespace pairsim
