#include "bitsel/bitfile.hpp"

#include <cstring>
#include <fstream>

#include "bitsel/error.hpp"
#include "bitsel/sha256.hpp"

namespace bitsel {

namespace {

std::vector<uint8_t> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "' for reading");
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::io, "read error on '" + path + "'");
  return data;
}

void write_all(const std::string& path, std::span<const uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  if (!out) throw Error(ErrorKind::io, "write error on '" + path + "'");
}

}  // namespace

std::vector<uint8_t> to_bitfile_bytes(const BitString& s) {
  std::vector<uint8_t> out;
  auto payload = s.to_packed();
  out.reserve(14 + payload.size());
  out.insert(out.end(), kBitFileMagic, kBitFileMagic + 5);
  out.push_back(kBitFileVersion);
  uint64_t len = s.size();
  for (int i = 0; i < 8; ++i) out.push_back(uint8_t(len >> (8 * i)));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

BitString from_bitfile_bytes(std::span<const uint8_t> bytes) {
  if (bytes.size() < 14 || std::memcmp(bytes.data(), kBitFileMagic, 5) != 0)
    throw Error(ErrorKind::parse, "not a BSEQ1 bit file (bad magic)");
  if (bytes[5] != kBitFileVersion)
    throw Error(ErrorKind::parse, "unsupported bit-file version " + std::to_string(bytes[5]));
  uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= uint64_t(bytes[6 + i]) << (8 * i);
  uint64_t payload_bytes = (len + 7) / 8;
  if (bytes.size() != 14 + payload_bytes)
    throw Error(ErrorKind::parse, "bit-file payload size mismatch (declared " + std::to_string(len) +
                                      " bits, got " + std::to_string(bytes.size() - 14) + " bytes)");
  auto s = BitString::from_packed(bytes.subspan(14), len);
  // padding bits must be zero
  auto repacked = s.to_packed();
  if (!std::equal(repacked.begin(), repacked.end(), bytes.begin() + 14))
    throw Error(ErrorKind::parse, "bit-file has nonzero padding bits");
  return s;
}

void write_bitfile(const BitString& s, const std::string& path) {
  auto bytes = to_bitfile_bytes(s);
  write_all(path, bytes);
}

BitString read_bitfile(const std::string& path) { return from_bitfile_bytes(read_all(path)); }

void write_bit_text(const BitString& s, const std::string& path) {
  std::string text = s.to_text();
  text.push_back('\n');
  write_all(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

BitString read_bits_auto(const std::string& path) {
  auto data = read_all(path);
  if (data.size() >= 5 && std::memcmp(data.data(), kBitFileMagic, 5) == 0)
    return from_bitfile_bytes(data);
  return BitString::from_text({reinterpret_cast<const char*>(data.data()), data.size()});
}

std::string payload_sha256(const BitString& s) {
  auto payload = s.to_packed();
  return sha256_hex(payload);
}

}  // namespace bitsel
