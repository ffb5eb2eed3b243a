#include "scengen/manifest.hpp"

#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "scengen/error.hpp"

namespace scengen {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open: " + path.string());

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw DataError("sha256 init failed");
    }
    char buf[1 << 16];
    while (f) {
        f.read(buf, sizeof(buf));
        const std::streamsize got = f.gcount();
        if (got > 0 && EVP_DigestUpdate(ctx, buf, static_cast<size_t>(got)) != 1) {
            EVP_MD_CTX_free(ctx);
            throw DataError("sha256 update failed");
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw DataError("sha256 final failed");
    }
    EVP_MD_CTX_free(ctx);

    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

void Manifest::set(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    config.emplace_back(key, std::string(buf, res.ptr));
}

void Manifest::set(const std::string& key, long long value) {
    config.emplace_back(key, std::to_string(value));
}

void Manifest::add_input(const std::filesystem::path& path) {
    inputs[path.filename().string()] = sha256_file(path);
}

void Manifest::add_output(const std::filesystem::path& path) {
    outputs[path.filename().string()] = sha256_file(path);
}

void Manifest::save(const std::filesystem::path& path) const {
    nlohmann::json doc;
    doc["command"] = command;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    doc["config"] = std::move(cfg);
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;

    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open for writing: " + path.string());
    f << doc.dump(2) << '\n';
    if (!f)
        throw DataError("write failed: " + path.string());
}

} // namespace scengen
