#include "patmine/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace patmine {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_patterns(const PatternSet& patterns, const Dictionary& dict) {
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  rows.reserve(patterns.size());
  for (const auto& [seq, freq] : patterns) rows.emplace_back(decode(seq, dict), freq);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::ostringstream out;
  for (const auto& [text, freq] : rows) out << text << '\t' << freq << '\n';
  return out.str();
}

std::string format_generated(const SequenceSet& generated, std::size_t line, const Dictionary& dict) {
  std::vector<std::string> rows;
  for (const auto& seq : generated) rows.push_back(decode(seq, dict));
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  for (const auto& row : rows) out << row << '\t' << line << '\n';
  return out.str();
}

}  // namespace patmine
