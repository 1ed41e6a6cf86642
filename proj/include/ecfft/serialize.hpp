#pragma once

#include <string>

#include "ecfft/fftree.hpp"

namespace ecfft {

inline constexpr int kTreeFormatVersion = 1;

/// JSON document (version 1). Advice tables are not stored; they are
/// recomputed from layers and maps on load.
std::string serialize_tree(const FFTree& tree);

/// Parses and re-validates. Throws FormatError on malformed input or a
/// version mismatch and InvariantViolation when the tree itself is invalid.
FFTree deserialize_tree(const std::string& text);

void save_tree(const FFTree& tree, const std::string& path);
FFTree load_tree(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace ecfft
