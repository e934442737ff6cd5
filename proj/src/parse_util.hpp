#ifndef BREGENV_SRC_PARSE_UTIL_HPP
#define BREGENV_SRC_PARSE_UTIL_HPP

#include <charconv>
#include <string>
#include <vector>

#include "bregenv/error.hpp"

namespace bregenv::detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_any(const std::string& s, const char* seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::string(seps).find(ch) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Locale-independent, whole-token double parse.
inline double parse_double(const std::string& token) {
  std::string t = trim(token);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::parse, "not a number: '" + token + "'");
  }
  return v;
}

} // namespace bregenv::detail

#endif
