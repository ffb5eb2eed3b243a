#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace scengen {

std::string sha256_file(const std::filesystem::path& path);

// Reproducibility sidecar written next to every command's outputs: the
// exact configuration, input file hashes and output file hashes. File
// names are stored without directories so a moved output tree still
// verifies. No timestamps or absolute paths — reruns must be
// byte-identical.
struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config; // insertion-ordered key/value
    std::map<std::string, std::string> inputs;               // basename -> sha256
    std::map<std::string, std::string> outputs;              // basename -> sha256

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

} // namespace scengen
