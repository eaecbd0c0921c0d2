#pragma once
#include <map>
#include <string>
#include <vector>

namespace epnls {

// TOML-syntax key/value file. Dotted or sectioned keys come back joined by '.'.
using KeyValues = std::map<std::string, std::vector<std::string>>;

KeyValues read_kv_file(const std::string& path);
double kv_double(const KeyValues& kv, const std::string& key);
double kv_double(const KeyValues& kv, const std::string& key, double fallback);

} // namespace epnls
