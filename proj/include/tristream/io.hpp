#pragma once

#include <zlib.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "tristream/error.hpp"
#include "tristream/graph.hpp"

namespace tristream {

// Unreadable or missing input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool has_gzip_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 2> magic{};
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  return in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
}

inline std::string read_gzip(const std::filesystem::path& path) {
  std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(path.c_str(), "rb"), &gzclose);
  if (!file) throw InputError("cannot open " + path.string());
  std::string out;
  std::array<char, 1 << 16> buffer{};
  for (;;) {
    const int got = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (got < 0) throw InputError("corrupt gzip stream in " + path.string());
    if (got == 0) break;
    out.append(buffer.data(), static_cast<std::size_t>(got));
  }
  return out;
}

}  // namespace detail

/// Loads an edge list from disk. Gzip input is detected by its magic bytes,
/// not by file extension.
inline EdgeList read_edge_list(const std::filesystem::path& path, const ParseOptions& options = {}) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw InputError("cannot read " + path.string());
  if (detail::has_gzip_magic(path)) {
    std::istringstream in(detail::read_gzip(path));
    return parse_edge_list(in, options);
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_edge_list(in, options);
}

}  // namespace tristream
