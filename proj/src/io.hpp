// Filesystem helpers; all writes go through a temp file and rename so a
// crash never leaves a half-written output.
#pragma once

#include <string>

namespace prsi {

void ensure_directory(const std::string& path);

void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace prsi
