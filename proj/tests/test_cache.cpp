#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hinv/cache.hpp"

using namespace hinv;
using namespace hinv::cache;

namespace {

std::filesystem::path fresh_dir(const char* name) {
  auto d = std::filesystem::temp_directory_path() / ("hinv_cache_test_" + std::string(name) + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("record encoding") {
  const Key k{0x0123456789abcdefULL, "kl", "n6l3"};
  const std::string value("\0\1binary\xff", 10);
  const auto rec = encode_record(k, value);
  CHECK(rec.substr(0, 8) == "HINVCACH");
  CHECK(decode_record(rec, k) == value);
  // length prefixes: magic 8 + version 4 + four fields with 8-byte lengths
  CHECK(rec.size() == 8 + 4 + 4 * 8 + k.kind.size() + 8 + k.indices.size() + value.size());

  CHECK_FALSE(decode_record(rec, Key{k.system_hash + 1, "kl", "n6l3"}));
  CHECK_FALSE(decode_record(rec, Key{k.system_hash, "cells", "n6l3"}));
  CHECK_FALSE(decode_record(rec, Key{k.system_hash, "kl", "n6l4"}));
  CHECK_FALSE(decode_record(rec.substr(0, rec.size() - 1), k));
  CHECK_FALSE(decode_record(rec + "x", k));
  auto bumped = rec;
  bumped[8] = static_cast<char>(kSchemaVersion + 1);
  CHECK_FALSE(decode_record(bumped, k));
  auto bad_magic = rec;
  bad_magic[0] = 'X';
  CHECK_FALSE(decode_record(bad_magic, k));
}

TEST_CASE("polynomial encoding") {
  const std::vector<LaurentPoly> polys{LaurentPoly(), LaurentPoly(1), LaurentPoly::u_power(1) + 1,
                                       LaurentPoly::monomial(-7, -5) + LaurentPoly::monomial(1LL << 40, 9)};
  CHECK(decode_polys(encode_polys(polys)) == polys);
  CHECK_FALSE(decode_polys(encode_polys(polys) + "z"));
  CHECK_FALSE(decode_polys(encode_polys(polys).substr(3)));
}

TEST_CASE("cache is write-once and round-trips KL tables") {
  const auto dir = fresh_dir("kl");
  {
    Cache c(dir);
    const Key k{42, "kl", "x"};
    CHECK_FALSE(c.get(k));
    CHECK(c.put(k, "first"));
    CHECK_FALSE(c.put(k, "second"));
    CHECK(c.get(k) == std::string("first"));
    // a corrupted file reads as a miss
    std::ofstream(c.path_of(Key{43, "kl", "x"}), std::ios::binary) << "garbage";
    CHECK_FALSE(c.get(Key{43, "kl", "x"}));
  }
  for (const char* label : {"A3", "B2", "Dinf"}) {
    const auto sys = coxeter::CoxeterSystem::from_label(label);
    const coxeter::ElementTable t = sys.is_finite() ? coxeter::ElementTable(sys) : coxeter::ElementTable(sys, 9);
    Cache c(dir);
    const auto cold = kl_table(&c, t);
    CHECK(c.misses() == 1);
    Cache c2(dir);
    const auto warm = kl_table(&c2, t);
    CHECK(c2.hits() == 1);
    CHECK(warm->raw() == cold->raw());
    CHECK(cold->raw() == hecke::KLTable::compute(t).raw());
  }
  // windows of different length are distinct keys
  const auto sys = coxeter::CoxeterSystem::from_label("Dinf");
  Cache c(dir);
  const coxeter::ElementTable t7(sys, 7);
  CHECK(kl_table(&c, t7)->size() == t7.size());
  CHECK(c.misses() == 1);
  std::filesystem::remove_all(dir);
}
