#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "confront/cli.hpp"
#include "confront/error.hpp"
#include "confront/normalize.hpp"

namespace confront::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::Io, "cannot initialise SHA-256");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t size) { EVP_DigestUpdate(ctx_, data, size); }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int size = 0;
    EVP_DigestFinal_ex(ctx_, digest.data(), &size);
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < size; ++i) {
      out.push_back(kDigits[digest[i] >> 4]);
      out.push_back(kDigits[digest[i] & 0xF]);
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

nlohmann::ordered_json canonical(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["normalization_table_version"] = kNormalizationTableVersion;
  j["command"] = m.command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : m.inputs) {
    j["inputs"].push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }
  j["methods"] = m.methods;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  params["k"] = m.k ? nlohmann::ordered_json(*m.k) : nlohmann::ordered_json();
  params["threshold"] = m.threshold ? nlohmann::ordered_json(*m.threshold) : nlohmann::ordered_json();
  params["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nlohmann::ordered_json();
  j["parameters"] = params;
  j["outputs"] = m.outputs;
  return j;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string current_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(epoch));
  std::tm utc{};
  gmtime_r(&t, &utc);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf.data();
}

std::string RunManifest::hash() const { return sha256_hex(canonical(*this).dump()); }

std::string RunManifest::to_json() const {
  auto j = canonical(*this);
  j["hash"] = hash();
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

}  // namespace confront::cli
