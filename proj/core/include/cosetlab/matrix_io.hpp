#pragma once

#include "cosetlab/blockmat.hpp"

#include <string>
#include <string_view>

namespace cosetlab {

/// Parses {"dim": n, "re": [[...]], "im": [[...]]} ("im" optional) or
/// {"perm": [1-based images]}. Throws InvalidArgument on malformed input.
BlockMatrix matrix_from_json(std::string_view text);

/// Permutations are written as {"perm": [...], "cycles": "..."}, everything
/// else as {"dim", "re", "im"} with shortest round-trip doubles.
std::string matrix_to_json(const BlockMatrix& m, int indent = -1);

/// Whole file contents; IoError carries the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

BlockMatrix read_matrix_file(const std::string& path);

}  // namespace cosetlab
