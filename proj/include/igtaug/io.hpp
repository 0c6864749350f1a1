#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "igtaug/errors.hpp"

namespace igtaug {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::string out((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    return out;
}

// Write-temp-then-rename so readers never observe a half-written file and
// interrupted runs leave no truncated outputs behind.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("short write: " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace igtaug
