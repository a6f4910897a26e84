#include "fetch.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

namespace coraltda::cli {

namespace fs = std::filesystem;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

std::size_t write_to_file(char* data, std::size_t size, std::size_t count, void* stream) {
  return std::fwrite(data, size, count, static_cast<std::FILE*>(stream));
}

}  // namespace

void download(const std::string& url, const fs::path& out) {
  std::unique_ptr<std::FILE, decltype(&std::fclose)> file(std::fopen(out.c_str(), "wb"), &std::fclose);
  if (!file) throw std::runtime_error("cannot write " + out.string());
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) throw std::runtime_error("curl init failed");
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &write_to_file);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, file.get());
  const CURLcode rc = curl_easy_perform(curl.get());
  file.reset();
  if (rc != CURLE_OK) {
    fs::remove(out);
    throw std::runtime_error("download of " + url + " failed: " + curl_easy_strerror(rc));
  }
}

void gunzip_file(const fs::path& in, const fs::path& out) {
  std::unique_ptr<gzFile_s, decltype(&gzclose)> gz(gzopen(in.c_str(), "rb"), &gzclose);
  if (!gz) throw std::runtime_error("cannot open " + in.string());
  std::ofstream dst(out, std::ios::binary);
  if (!dst) throw std::runtime_error("cannot write " + out.string());
  std::array<char, 1 << 16> buffer{};
  for (;;) {
    const int n = gzread(gz.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (n < 0) {
      int code = 0;
      throw std::runtime_error("corrupt gzip stream in " + in.string() + ": " + gzerror(gz.get(), &code));
    }
    if (n == 0) break;
    dst.write(buffer.data(), n);
  }
}

fs::path dataset_path(const fs::path& dir, const std::string& name) { return dir / (name + ".txt"); }

fs::path fetch_dataset(const ManifestEntry& entry, const fs::path& dir, bool force, std::ostream& log) {
  fs::create_directories(dir);
  const auto target = dataset_path(dir, entry.name);
  if (!force && fs::exists(target)) {
    log << entry.name << ": cached at " << target.string() << '\n';
    return target;
  }
  const auto archive = dir / (entry.name + ".download");
  log << entry.name << ": downloading " << entry.url << '\n';
  download(entry.url, archive);
  const auto digest = sha256_file(archive);
  if (!entry.sha256.empty() && digest != entry.sha256) {
    fs::remove(archive);
    throw std::runtime_error(entry.name + ": sha256 mismatch, expected " + entry.sha256 + " got " + digest);
  }
  log << entry.name << ": sha256 " << digest << (entry.sha256.empty() ? " (not pinned)" : " (verified)") << '\n';
  gunzip_file(archive, target);
  fs::remove(archive);
  return target;
}

}  // namespace coraltda::cli
