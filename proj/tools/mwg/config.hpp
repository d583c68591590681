#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwg/mwg.h"

namespace mwgcli {

enum class KeyKind { number, integer, text };

struct KeySpec {
  const char* name;  // section.key, unit suffix in the key
  KeyKind kind;
  const char* fallback;  // empty: no default
  const char* help;
};

const std::vector<KeySpec>& key_registry();
const KeySpec* find_key(const std::string& name);

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

// key=start:stop:count, count >= 1, points evenly spaced including both ends.
SweepAxis parse_sweep(const std::string& spec);

// Flat sectioned key/value configuration. Unknown keys are rejected.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool is_set(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::string text(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set_number(const std::string& key, double value);

  // Effective values of every key under the given sections, in registry order.
  std::vector<std::pair<std::string, std::string>> effective(const std::vector<std::string>& sections) const;

  bool has_beam() const;
  mwg_beam beam() const;
  // Grating from [grating], or derived from [beam] when the beam section is complete.
  mwg_grating grating() const;
  // kdtli.talbot_ratio, or derived from beam and interferometer.separation_m.
  double talbot_ratio() const;

 private:
  std::map<std::string, std::string> values_;
  std::string raw(const std::string& key) const;
};

}  // namespace mwgcli
