#pragma once

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "rdisc/factorize.hpp"
#include "rdisc/polynomial.hpp"

namespace rdisc {

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

/// Content-addressed polynomial cache: one file per key at
/// <dir>/<sha256(key)>.poly, containing
///   vars: a1 a2 ... an
///   <coeff> <e1> ... <en>        (one line per term, canonical order)
///   # sha256 <hex of everything above>
/// Writes are atomic (temp file + rename). Corrupt or mismatched entries are
/// treated as misses and recomputed; IO errors are never fatal.
class PolyCache : public PolyStore {
 public:
  explicit PolyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    enabled_ = !ec && std::filesystem::is_directory(dir_, ec);
  }

  bool enabled() const { return enabled_; }

  std::optional<Polynomial> load(const std::string& key,
                                 const TablePtr& table) override {
    if (!enabled_) return std::nullopt;
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    std::string payload;
    std::string checksum_line;
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("# sha256 ", 0) == 0) {
        checksum_line = line;
        break;
      }
      payload += line;
      payload += '\n';
    }
    if (checksum_line.empty()) return std::nullopt;
    // The checksum trailer must be the last line; trailing bytes are corruption.
    while (std::getline(in, line))
      if (!line.empty()) return std::nullopt;
    if ("# sha256 " + sha256_hex(payload) != checksum_line) return std::nullopt;
    return parse_payload(payload, table);
  }

  void store(const std::string& key, const Polynomial& value) override {
    if (!enabled_) return;
    std::string payload = serialize_payload(value);
    payload += "# sha256 " + sha256_hex(payload) + "\n";
    std::filesystem::path target = path_for(key);
    std::filesystem::path temp = target;
    temp += ".tmp";
    {
      std::ofstream out(temp, std::ios::trunc);
      if (!out) return;
      out << payload;
      if (!out) return;
    }
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) std::filesystem::remove(temp, ec);
  }

  std::filesystem::path path_for(const std::string& key) const {
    return dir_ / (sha256_hex(key) + ".poly");
  }

  static std::string serialize_payload(const Polynomial& value) {
    const auto& table = *value.table();
    std::string out = "vars:";
    for (std::size_t i = 0; i < table.size(); ++i) out += " " + table.name(i);
    out += '\n';
    for (const auto& t : value.terms()) {
      out += t.coeff.get_str();
      for (std::size_t i = 0; i < table.size(); ++i)
        out += " " + std::to_string(t.mono.exp(i));
      out += '\n';
    }
    return out;
  }

 private:
  static std::optional<Polynomial> parse_payload(const std::string& payload,
                                                 const TablePtr& table) {
    std::istringstream in(payload);
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    {
      std::istringstream header(line);
      std::string tag;
      header >> tag;
      if (tag != "vars:") return std::nullopt;
      std::string name;
      std::size_t i = 0;
      while (header >> name) {
        if (i >= table->size() || table->name(i) != name) return std::nullopt;
        ++i;
      }
      if (i != table->size()) return std::nullopt;
    }
    std::vector<Polynomial::Term> terms;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string coeff_text;
      if (!(row >> coeff_text)) return std::nullopt;
      Int coeff;
      if (mpz_set_str(coeff.get_mpz_t(), coeff_text.c_str(), 10) != 0)
        return std::nullopt;
      std::vector<unsigned> exps(table->size(), 0u);
      for (std::size_t i = 0; i < table->size(); ++i)
        if (!(row >> exps[i])) return std::nullopt;
      long extra;
      if (row >> extra) return std::nullopt;
      terms.push_back({Monomial::make(*table, exps), std::move(coeff)});
    }
    return Polynomial::from_terms(table, std::move(terms));
  }

  std::filesystem::path dir_;
  bool enabled_ = false;
};

}  // namespace rdisc
