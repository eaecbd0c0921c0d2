#include "epnls/config.hpp"

#include <CLI11.hpp>

#include <stdexcept>

namespace epnls {

KeyValues read_kv_file(const std::string& path) {
    KeyValues out;
    try {
        for (const auto& item : CLI::ConfigTOML().from_file(path)) {
            if (item.name == "++" || item.name == "--") continue;  // section markers
            out[item.fullname()] = item.inputs;
        }
    } catch (const CLI::Error& e) {
        throw std::runtime_error("cannot read config " + path + ": " + e.what());
    }
    return out;
}

double kv_double(const KeyValues& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.size() != 1) throw std::runtime_error("config: missing scalar key " + key);
    return std::stod(it->second[0]);
}

double kv_double(const KeyValues& kv, const std::string& key, double fallback) {
    return kv.count(key) ? kv_double(kv, key) : fallback;
}

} // namespace epnls
