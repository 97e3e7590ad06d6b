#include "dani/fetch.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <vector>

#include "dani/errors.hpp"

namespace dani {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMarker = ".dani-fetched";

std::string url_basename(const std::string& url) {
  auto end = url.find_first_of("?#");
  auto path = url.substr(0, end);
  auto slash = path.find_last_of('/');
  auto name = slash == std::string::npos ? path : path.substr(slash + 1);
  return name.empty() ? std::string("download") : name;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

size_t write_to_file(char* data, size_t size, size_t nmemb, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  out->write(data, static_cast<std::streamsize>(size * nmemb));
  return out->good() ? size * nmemb : 0;
}

void download(const std::string& url, const fs::path& target) {
  static std::once_flag init;
  std::call_once(init, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });

  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + target.string());

  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw FetchError("curl_easy_init failed");
  std::array<char, CURL_ERROR_SIZE> errbuf{};
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, errbuf.data());
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &out);
  CURLcode rc = curl_easy_perform(curl.get());
  out.close();
  if (rc != CURLE_OK) {
    std::error_code ec;
    fs::remove(target, ec);
    std::string detail = errbuf[0] ? errbuf.data() : curl_easy_strerror(rc);
    throw FetchError("download of " + url + " failed: " + detail);
  }
}

std::vector<unsigned char> read_maybe_gzip(const fs::path& archive) {
  gzFile gz = gzopen(archive.string().c_str(), "rb");
  if (!gz) throw IoError("cannot open " + archive.string());
  std::vector<unsigned char> data;
  std::array<unsigned char, 1 << 16> buf{};
  while (true) {
    int n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) {
      gzclose(gz);
      throw FetchError("corrupt archive " + archive.string());
    }
    if (n == 0) break;
    data.insert(data.end(), buf.begin(), buf.begin() + n);
  }
  gzclose(gz);
  return data;
}

std::string field(const unsigned char* p, std::size_t n) {
  std::size_t len = 0;
  while (len < n && p[len] != '\0') ++len;
  return std::string(reinterpret_cast<const char*>(p), len);
}

std::uint64_t octal(const unsigned char* p, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] >= '0' && p[i] <= '7') v = v * 8 + (p[i] - '0');
    else if (p[i] == '\0' || p[i] == ' ') {
      if (v) break;
    }
  }
  return v;
}

fs::path safe_join(const fs::path& dest, const std::string& name) {
  fs::path rel(name);
  if (rel.is_absolute()) throw FetchError("archive entry has absolute path: " + name);
  for (const auto& part : rel) {
    if (part == "..") throw FetchError("archive entry escapes destination: " + name);
  }
  return dest / rel;
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void extract_tar(const fs::path& archive, const fs::path& dest) {
  auto data = read_maybe_gzip(archive);
  std::size_t pos = 0;
  std::string long_name;
  while (pos + 512 <= data.size()) {
    const unsigned char* h = data.data() + pos;
    bool zero = std::all_of(h, h + 512, [](unsigned char c) { return c == 0; });
    if (zero) break;
    std::string name = field(h, 100);
    std::string prefix = field(h + 345, 155);
    if (!prefix.empty() && std::string(reinterpret_cast<const char*>(h + 257), 5) == "ustar") {
      name = prefix + "/" + name;
    }
    std::uint64_t size = octal(h + 124, 12);
    char type = static_cast<char>(h[156]);
    pos += 512;
    if (pos + size > data.size()) throw FetchError("truncated archive " + archive.string());
    const unsigned char* body = data.data() + pos;
    pos += (size + 511) / 512 * 512;

    if (type == 'L') {  // GNU long name for the next entry
      long_name = field(body, size);
      continue;
    }
    if (!long_name.empty()) {
      name = long_name;
      long_name.clear();
    }
    if (type == 'x' || type == 'g') continue;  // pax headers carry nothing we need

    auto target = safe_join(dest, name);
    std::error_code ec;
    if (type == '5') {
      fs::create_directories(target, ec);
    } else if (type == '0' || type == '\0') {
      fs::create_directories(target.parent_path(), ec);
      std::ofstream out(target, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + target.string());
      out.write(reinterpret_cast<const char*>(body), static_cast<std::streamsize>(size));
    }
    if (ec) throw IoError("cannot create " + target.string() + ": " + ec.message());
  }
}

void fetch_dataset(const std::string& url, const fs::path& dest, const FetchOptions& options) {
  std::error_code ec;
  fs::create_directories(dest, ec);
  if (ec) throw IoError("cannot create " + dest.string() + ": " + ec.message());

  auto marker = dest / kMarker;
  {
    std::ifstream in(marker);
    std::string recorded;
    if (in && std::getline(in, recorded) && recorded == url) return;
  }

  auto archive = dest / url_basename(url);
  download(url, archive);

  if (!options.sha256.empty()) {
    auto actual = sha256_file(archive);
    if (actual != options.sha256) {
      fs::remove(archive, ec);
      throw IntegrityError("checksum mismatch for " + url + ": expected " + options.sha256 +
                           ", got " + actual);
    }
  }

  auto name = archive.filename().string();
  if (has_suffix(name, ".tar.gz") || has_suffix(name, ".tgz") || has_suffix(name, ".tar")) {
    extract_tar(archive, dest);
  }

  std::ofstream out(marker, std::ios::trunc);
  out << url << '\n';
  if (!out) throw IoError("cannot write " + marker.string());
}

}  // namespace dani
