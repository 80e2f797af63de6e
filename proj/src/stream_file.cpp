#include "lpsampler/stream_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>

#include "lpsampler/error.hpp"

namespace lps {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, const char* what, int line) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + std::string(text) + "'", line);
  }
  return value;
}

// Splits on runs of blanks.
std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

StreamFile parse_stream(std::istream& in, std::int64_t magnitude_bound) {
  StreamFile out;
  bool have_header = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto parts = fields(text);
    if (!have_header) {
      bool got_n = false;
      bool got_p = false;
      for (const auto part : parts) {
        if (part.starts_with("n=")) {
          out.n = parse_number<std::uint64_t>(part.substr(2), "n", line);
          got_n = true;
        } else if (part.starts_with("p=")) {
          out.p = parse_number<double>(part.substr(2), "p", line);
          got_p = true;
        } else {
          throw ParseError("line " + std::to_string(line) + ": unexpected header field '" + std::string(part) + "'", line);
        }
      }
      if (!got_n || !got_p) throw ParseError("line " + std::to_string(line) + ": header needs n=<int> p=<real>", line);
      if (out.n < 1) throw ParseError("line " + std::to_string(line) + ": n must be at least 1", line);
      if (!(out.p > 0.0 && out.p < 2.0)) throw ParseError("line " + std::to_string(line) + ": p must lie in (0, 2)", line);
      have_header = true;
      continue;
    }
    if (parts.size() != 2) throw ParseError("line " + std::to_string(line) + ": expected '<index> <delta>'", line);
    const auto index = parse_number<std::uint64_t>(parts[0], "index", line);
    const auto delta = parse_number<std::int64_t>(parts[1], "delta", line);
    if (index < 1 || index > out.n) {
      throw ParseError("line " + std::to_string(line) + ": index " + std::to_string(index) + " outside [1, " +
                           std::to_string(out.n) + "]",
                       line);
    }
    if (delta > magnitude_bound || delta < -magnitude_bound) {
      throw ParseError("line " + std::to_string(line) + ": |delta| exceeds " + std::to_string(magnitude_bound), line);
    }
    out.updates.push_back({index - 1, delta});
  }
  if (!have_header) throw ParseError("missing header line n=<int> p=<real>", line);
  return out;
}

StreamFile read_stream_file(const std::string& path, std::int64_t magnitude_bound) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file " + path);
  return parse_stream(in, magnitude_bound);
}

}  // namespace lps
