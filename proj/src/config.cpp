#include "patchbound/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "patchbound/errors.hpp"

namespace patchbound {

namespace {

// Subnormal doubles parse like any other value, unlike std::stod.
template <typename T>
bool parse_whole(const std::string& text, T& value) {
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && !text.empty();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<std::string> KeyValues::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const std::string& KeyValues::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("missing key '" + key + "'");
  return it->second;
}

int KeyValues::get_int(const std::string& key) const {
  try {
    return parse_int(get_string(key));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("key '" + key + "': " + e.what());
  }
}

double KeyValues::get_double(const std::string& key) const {
  try {
    return parse_double(get_string(key));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("key '" + key + "': " + e.what());
  }
}

KeyValues parse_key_values(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? std::string{} : trim(line.substr(0, eq));
    if (key.empty()) {
      throw InvalidArgument(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    kv.set(key, trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_key_values(in, path);
}

int parse_int(const std::string& text) {
  int value = 0;
  if (!parse_whole(text, value)) throw InvalidArgument("'" + text + "' is not an integer");
  return value;
}

long parse_long(const std::string& text) {
  long value = 0;
  if (!parse_whole(text, value)) throw InvalidArgument("'" + text + "' is not an integer");
  return value;
}

double parse_double(const std::string& text) {
  double value = 0;
  if (!parse_whole(text, value)) throw InvalidArgument("'" + text + "' is not a number");
  return value;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
  if (out.empty()) throw InvalidArgument("empty number list");
  return out;
}

}  // namespace patchbound
