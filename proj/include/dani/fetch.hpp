#pragma once

#include <filesystem>
#include <string>

namespace dani {

struct FetchOptions {
  // Lowercase hex SHA-256 of the archive; empty disables the check.
  std::string sha256;
};

/// Downloads `url` (http, https or file) into `dest` and unpacks it when it
/// is a .tar.gz / .tgz / .tar archive. A marker file records the URL; a
/// repeated call with the same URL on a populated `dest` does nothing.
/// Throws FetchError on transfer failure, IntegrityError on checksum
/// mismatch, IoError when `dest` cannot be written.
void fetch_dataset(const std::string& url, const std::filesystem::path& dest,
                   const FetchOptions& options = {});

/// Unpacks a (optionally gzip-compressed) ustar archive into `dest`.
/// Entries escaping `dest` via absolute paths or `..` are rejected.
void extract_tar(const std::filesystem::path& archive, const std::filesystem::path& dest);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace dani
