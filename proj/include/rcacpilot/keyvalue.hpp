#pragma once

// Line-oriented "key = value" text used by scenario configs and mission files.
// '#' starts a comment; blank lines are ignored; keys may repeat.

#include <rcacpilot/errors.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace rcacpilot::kv {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<Entry> parse(std::string_view text, const std::string& source = "<text>") {
  std::vector<Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    entries.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return entries;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline double to_double(std::string_view s, const std::string& context) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(context + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline long long to_int(std::string_view s, const std::string& context) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(context + ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

inline bool to_bool(std::string_view s, const std::string& context) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(context + ": not a boolean: '" + std::string(s) + "'");
}

/// Whitespace- or comma-separated list of numbers.
inline std::vector<double> to_doubles(std::string_view s, const std::string& context) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(to_double(s.substr(i, j - i), context));
    i = j;
  }
  return out;
}

/// Shortest decimal text that reads back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace rcacpilot::kv
