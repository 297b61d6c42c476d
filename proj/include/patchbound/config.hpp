#ifndef PATCHBOUND_CONFIG_HPP
#define PATCHBOUND_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace patchbound {

// Flat "key = value" text, one pair per line; '#' starts a comment.
class KeyValues {
public:
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::optional<std::string> find(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  int get_int(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
  std::map<std::string, std::string> values_;
};

KeyValues parse_key_values(std::istream& in, const std::string& origin = "<stream>");
KeyValues read_key_values(const std::string& path);

// Strict conversions: the whole string must be consumed.
int parse_int(const std::string& text);
long parse_long(const std::string& text);
double parse_double(const std::string& text);
// Comma-separated list of numbers, e.g. "16,32,64".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace patchbound

#endif  // PATCHBOUND_CONFIG_HPP
