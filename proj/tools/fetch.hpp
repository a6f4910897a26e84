#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "coraltda/datasets.hpp"

namespace coraltda::cli {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Streams `url` to `out`; throws std::runtime_error on transport or HTTP errors.
void download(const std::string& url, const std::filesystem::path& out);

// Decompresses a gzip file (plain files pass through unchanged).
void gunzip_file(const std::filesystem::path& in, const std::filesystem::path& out);

// <dir>/<name>.txt, the decompressed edge list a fetch produces.
std::filesystem::path dataset_path(const std::filesystem::path& dir, const std::string& name);

// Downloads, checks the pinned hash when one is set, and decompresses.
// Skips work when the edge list already exists unless `force` is set.
std::filesystem::path fetch_dataset(const ManifestEntry& entry, const std::filesystem::path& dir, bool force,
                                    std::ostream& log);

}  // namespace coraltda::cli
