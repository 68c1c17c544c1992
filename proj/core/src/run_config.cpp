#include "taxo/run_config.hpp"

#include "taxo/common.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace taxo {

using json = nlohmann::json;

RunConfig RunConfig::load(std::istream& in) {
    RunConfig cfg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw DataError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path);
    return load(in);
}

void RunConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw DataError("missing required config key \"" + key + "\"");
    return it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw DataError("config key \"" + key + "\" is not a number: " + it->second);
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw DataError("config key \"" + key + "\" is not an integer: " + it->second);
    }
}

uint64_t RunConfig::get_seed(const std::string& key, uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw DataError("config key \"" + key + "\" is not a seed: " + it->second);
    }
}

json RunConfig::to_json() const {
    json j = json::object();
    for (const auto& [k, v] : values_) j[k] = v;
    return j;
}

uint64_t RunConfig::hash() const {
    std::string blob;
    for (const auto& [k, v] : values_) {
        blob += k;
        blob += '\x1f';
        blob += v;
        blob += '\x1e';
    }
    return fnv1a64(blob);
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

json make_manifest(const std::string& command, const RunConfig& config,
                   const std::vector<std::string>& input_paths, uint64_t seed) {
    json inputs = json::object();
    for (const auto& p : input_paths) inputs[p] = file_hash_hex(p);
    return json{{"command", command},
                {"config", config.to_json()},
                {"config_hash", hex64(config.hash())},
                {"inputs", inputs},
                {"seed", seed}};
}

} // namespace taxo
