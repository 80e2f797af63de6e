#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "lpsampler/verify.hpp"

namespace lps::verify {

// "name" followed by a short rendering of value, for row names.
inline std::string tagged(const std::string& name, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", value);
  return name + buffer;
}

std::vector<CheckRow> gamma_suite(std::uint64_t seed);
std::vector<CheckRow> cf_suite(std::uint64_t seed);
std::vector<CheckRow> cdf_suite(std::uint64_t seed);
std::vector<CheckRow> head_suite(std::uint64_t seed);
std::vector<CheckRow> tail_suite(std::uint64_t seed);
std::vector<CheckRow> sketch_suite(std::uint64_t seed);
std::vector<CheckRow> end2end_suite(std::uint64_t seed);

}  // namespace lps::verify
