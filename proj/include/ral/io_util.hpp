#pragma once

#include <string>

namespace ral {

std::string read_file(const std::string& path);

// Writes via a temp file in the same directory followed by rename, so a
// crash never leaves a partially written file at `path`.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace ral
