#include "hinv/cache.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace hinv::cache {

namespace {

constexpr char kMagic[8] = {'H', 'I', 'N', 'V', 'C', 'A', 'C', 'H'};

void put_u64(std::string& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_field(std::string& out, const std::string& f) {
  put_u64(out, f.size());
  out += f;
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  bool u64(std::uint64_t& x) {
    if (s_.size() - pos_ < 8) return false;
    x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t{static_cast<unsigned char>(s_[pos_ + i])} << (8 * i);
    pos_ += 8;
    return true;
  }
  bool u32(std::uint32_t& x) {
    if (s_.size() - pos_ < 4) return false;
    x = 0;
    for (int i = 0; i < 4; ++i) x |= std::uint32_t{static_cast<unsigned char>(s_[pos_ + i])} << (8 * i);
    pos_ += 4;
    return true;
  }
  bool field(std::string& f) {
    std::uint64_t n = 0;
    if (!u64(n) || s_.size() - pos_ < n) return false;
    f = s_.substr(pos_, n);
    pos_ += n;
    return true;
  }
  bool bytes(const char* p, std::size_t n) {
    if (s_.size() - pos_ < n || std::memcmp(s_.data() + pos_, p, n) != 0) return false;
    pos_ += n;
    return true;
  }
  [[nodiscard]] bool done() const { return pos_ == s_.size(); }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string hash_field(std::uint64_t h) {
  std::string s;
  put_u64(s, h);
  return s;
}

}  // namespace

std::string encode_record(const Key& key, const std::string& value) {
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kSchemaVersion);
  put_field(out, key.kind);
  put_field(out, hash_field(key.system_hash));
  put_field(out, key.indices);
  put_field(out, value);
  return out;
}

std::optional<std::string> decode_record(const std::string& bytes, const Key& key) {
  Reader r(bytes);
  std::uint32_t version = 0;
  std::string kind, hash, indices, value;
  if (!r.bytes(kMagic, sizeof kMagic) || !r.u32(version) || version != kSchemaVersion) return std::nullopt;
  if (!r.field(kind) || !r.field(hash) || !r.field(indices) || !r.field(value) || !r.done()) return std::nullopt;
  if (kind != key.kind || hash != hash_field(key.system_hash) || indices != key.indices) return std::nullopt;
  return value;
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::filesystem::path Cache::path_of(const Key& key) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << key.system_hash << '-' << key.kind << '-';
  for (char c : key.indices) name << (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  name << ".v" << std::dec << kSchemaVersion << ".bin";
  return dir_ / name.str();
}

std::optional<std::string> Cache::get(const Key& key) const {
  std::ifstream in(path_of(key), std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto value = decode_record(bytes, key);
  ++(value ? hits_ : misses_);
  return value;
}

bool Cache::put(const Key& key, const std::string& value) {
  const std::lock_guard lock(mu_);
  const auto target = path_of(key);
  if (std::filesystem::exists(target)) return false;
  // write to a private temporary and rename, so readers never see a partial record
  auto tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    const auto bytes = encode_record(key, value);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  if (std::filesystem::exists(target)) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

std::string encode_polys(const std::vector<LaurentPoly>& polys) {
  std::string out;
  put_u64(out, polys.size());
  for (const auto& p : polys) {
    put_u32(out, static_cast<std::uint32_t>(p.terms().size()));
    for (const auto& [e, c] : p.terms()) {
      put_u32(out, static_cast<std::uint32_t>(e));
      put_u64(out, static_cast<std::uint64_t>(c));
    }
  }
  return out;
}

std::optional<std::vector<LaurentPoly>> decode_polys(const std::string& bytes) {
  Reader r(bytes);
  std::uint64_t n = 0;
  if (!r.u64(n) || n > bytes.size()) return std::nullopt;
  std::vector<LaurentPoly> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t terms = 0;
    if (!r.u32(terms)) return std::nullopt;
    std::vector<LaurentPoly::Term> t;
    for (std::uint32_t k = 0; k < terms; ++k) {
      std::uint32_t e = 0;
      std::uint64_t c = 0;
      if (!r.u32(e) || !r.u64(c)) return std::nullopt;
      t.emplace_back(static_cast<std::int32_t>(e), static_cast<std::int64_t>(c));
    }
    out.push_back(LaurentPoly::from_terms(std::move(t)));
  }
  if (!r.done()) return std::nullopt;
  return out;
}

std::shared_ptr<const hecke::KLTable> kl_table(Cache* cache, const coxeter::ElementTable& table) {
  if (!cache) return std::make_shared<const hecke::KLTable>(hecke::KLTable::compute(table));
  const Key key{table.system().content_hash(), "kl",
                "n" + std::to_string(table.size()) + "l" + std::to_string(table.max_length())};
  if (auto bytes = cache->get(key)) {
    auto polys = decode_polys(*bytes);
    if (polys && polys->size() == table.size() * table.size())
      return std::make_shared<const hecke::KLTable>(table.size(), std::move(*polys));
  }
  auto kl = std::make_shared<const hecke::KLTable>(hecke::KLTable::compute(table));
  cache->put(key, encode_polys(kl->raw()));
  return kl;
}

}  // namespace hinv::cache
