#include "cmorder/cache.hpp"

#include <json.hpp>
#include <zlib.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cmorder {

namespace {

unsigned long crc(const std::string& s) {
    return crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size()));
}

std::string hex(unsigned long v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08lx", v & 0xffffffffUL);
    return buf;
}

}  // namespace

FileCache::FileCache(std::filesystem::path dir, int version) : dir_(std::move(dir)), version_(version) {}

std::filesystem::path FileCache::path_for(const std::string& poly, const std::string& kind) const {
    return dir_ / (kind + "-" + hex(crc(poly)) + ".json");
}

std::optional<std::string> FileCache::get(const std::string& poly, const std::string& kind,
                                          std::string* warning) const {
    const auto path = path_for(poly, kind);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
        if (j.at("version").get<int>() != version_) return std::nullopt;
        if (j.at("kind").get<std::string>() != kind || j.at("poly").get<std::string>() != poly) return std::nullopt;
        std::string payload = j.at("payload").get<std::string>();
        if (j.at("crc32").get<std::string>() != hex(crc(payload))) throw std::runtime_error("checksum mismatch");
        return payload;
    } catch (const std::exception& e) {
        if (warning) *warning = "ignoring corrupted cache file " + path.string() + ": " + e.what();
        return std::nullopt;
    }
}

void FileCache::put(const std::string& poly, const std::string& kind, const std::string& payload) const {
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(dir_);
    nlohmann::json j = {{"version", version_}, {"kind", kind}, {"poly", poly},
                        {"crc32", hex(crc(payload))}, {"payload", payload}};
    const auto path = path_for(poly, kind);
    std::ostringstream tag;
    tag << ".tmp." << std::this_thread::get_id() << "." << counter++;
    auto tmp = path;
    tmp += tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump();
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
    }
}

}  // namespace cmorder
