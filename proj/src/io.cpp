#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "error.hpp"

namespace prsi {

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec)
    fail(ErrorCode::io_error,
         "cannot create directory '" + path + "': " + ec.message());
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io_error, "cannot open '" + tmp + "' for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::io_error, "short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    fail(ErrorCode::io_error,
         "cannot move '" + tmp + "' into place: " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace prsi
