#pragma once

// A directory of JSON results keyed by (polynomial, kind, version). Files
// carry a CRC-32 of the payload and are replaced atomically.

#include <filesystem>
#include <optional>
#include <string>

namespace cmorder {

inline constexpr int kCacheVersion = 1;

class FileCache {
public:
    explicit FileCache(std::filesystem::path dir, int version = kCacheVersion);

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path path_for(const std::string& poly, const std::string& kind) const;

    /// The stored payload, or nothing on a miss. A file that fails to parse
    /// or whose checksum does not match is a miss, reported in `warning`.
    std::optional<std::string> get(const std::string& poly, const std::string& kind,
                                   std::string* warning = nullptr) const;
    /// Throws std::runtime_error on I/O failure.
    void put(const std::string& poly, const std::string& kind, const std::string& payload) const;

private:
    std::filesystem::path dir_;
    int version_;
};

}  // namespace cmorder
