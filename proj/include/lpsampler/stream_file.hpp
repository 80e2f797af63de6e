#pragma once

// Text stream files:
//   n=<int> p=<real>
//   <index> <delta>      one update per line, index 1-based
// Blank lines and anything after '#' are ignored.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lps {

struct StreamUpdate {
  std::uint64_t index = 0;  // 0-based
  std::int64_t delta = 0;
};

struct StreamFile {
  std::uint64_t n = 0;
  double p = 0.0;
  std::vector<StreamUpdate> updates;
};

// Throws ParseError naming the offending line.
StreamFile parse_stream(std::istream& in, std::int64_t magnitude_bound = 1'000'000'000);
StreamFile read_stream_file(const std::string& path, std::int64_t magnitude_bound = 1'000'000'000);

}  // namespace lps
