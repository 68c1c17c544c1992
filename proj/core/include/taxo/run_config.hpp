#pragma once

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taxo {

/// Flat key=value run configuration; file values first, CLI overrides on
/// top. All paths are resolved relative to the process working directory.
class RunConfig {
public:
    static RunConfig load(std::istream& in);
    static RunConfig load_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    uint64_t get_seed(const std::string& key, uint64_t fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    nlohmann::json to_json() const;
    uint64_t hash() const;

private:
    std::map<std::string, std::string> values_;
};

/// FNV-1a content hash of a file, as 16 hex digits.
std::string file_hash_hex(const std::string& path);

/// Reproduction manifest: command, echoed config, config hash, seed and
/// content hashes of every input path. No timestamps, so reruns are
/// byte-identical.
nlohmann::json make_manifest(const std::string& command, const RunConfig& config,
                             const std::vector<std::string>& input_paths, uint64_t seed);

} // namespace taxo
