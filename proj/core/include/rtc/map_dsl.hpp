#pragma once

#include "rtc/smooth_map.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace rtc {

/// Parses `(map <dom> <cod> <expr>...)`.
///
/// Expressions are `x<k>`, integer or `p/q` literals (optionally signed) and the
/// operators `+ * neg sin cos exp inv`. A `;` starts a comment running to the end
/// of the line.
///
/// Throws ParseError with line/column on malformed text, UnboundVariable when a
/// body uses x<k> with k >= dom, and DimensionMismatch when the number of
/// component expressions differs from <cod>.
SmoothMap parse_map(std::string_view source);

/// Prints in the grammar accepted by parse_map; parse_map(print_map(F)) is
/// structurally equal to F.
std::string print_map(const SmoothMap& f);

/// Reads a single map from a UTF-8 file. I/O failures raise IoError; parse
/// errors are rethrown with the file name prefixed.
SmoothMap load_map_file(const std::filesystem::path& path);

/// Reads an entire text file or throws IoError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace rtc
