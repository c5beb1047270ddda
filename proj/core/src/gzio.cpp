#include "pheno/gzio.hpp"

#include <zlib.h>

#include <cstring>

#include "pheno/error.hpp"

namespace pheno {

namespace {

std::vector<std::uint8_t> deflate_bytes(const std::uint8_t* data, size_t size, int level,
                                        int window_bits) {
  z_stream zs{};
  if (deflateInit2(&zs, level, Z_DEFLATED, window_bits, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw Error(Errc::IoError, "deflateInit2 failed");
  std::vector<std::uint8_t> out;
  out.resize(deflateBound(&zs, static_cast<uLong>(size)));
  zs.next_in = const_cast<Bytef*>(data);
  zs.avail_in = static_cast<uInt>(size);
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(Errc::IoError, "deflate failed");
  out.resize(zs.total_out);
  return out;
}

std::vector<std::uint8_t> inflate_bytes(const std::uint8_t* data, size_t size, int window_bits) {
  z_stream zs{};
  if (inflateInit2(&zs, window_bits) != Z_OK)
    throw Error(Errc::DecompressFailure, "inflateInit2 failed");
  std::vector<std::uint8_t> out;
  out.resize(size * 4 + 1024);
  zs.next_in = const_cast<Bytef*>(data);
  zs.avail_in = static_cast<uInt>(size);
  size_t written = 0;
  int rc = Z_OK;
  while (true) {
    zs.next_out = out.data() + written;
    zs.avail_out = static_cast<uInt>(out.size() - written);
    rc = inflate(&zs, Z_NO_FLUSH);
    written = zs.total_out;
    if (rc == Z_STREAM_END) break;
    if (rc == Z_OK || rc == Z_BUF_ERROR) {
      if (zs.avail_out == 0) {
        out.resize(out.size() * 2);
        continue;
      }
      if (rc == Z_BUF_ERROR) {  // no progress possible: truncated input
        inflateEnd(&zs);
        throw Error(Errc::DecompressFailure, "truncated compressed stream");
      }
      continue;
    }
    inflateEnd(&zs);
    throw Error(Errc::DecompressFailure, "corrupt compressed stream");
  }
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

}  // namespace

std::vector<std::uint8_t> gzip_compress(std::string_view data, int level) {
  // 10-byte gzip header with MTIME=0, XFL=0, OS=255 (unknown), then raw
  // deflate, then CRC32 + ISIZE little-endian.
  auto body = deflate_bytes(reinterpret_cast<const std::uint8_t*>(data.data()), data.size(), level,
                            -MAX_WBITS);
  std::vector<std::uint8_t> out;
  out.reserve(body.size() + 18);
  const std::uint8_t header[10] = {0x1f, 0x8b, 8, 0, 0, 0, 0, 0, 0, 0xff};
  out.insert(out.end(), header, header + 10);
  out.insert(out.end(), body.begin(), body.end());
  uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
                    static_cast<uInt>(data.size()));
  std::uint32_t isize = static_cast<std::uint32_t>(data.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((crc >> (8 * i)) & 0xff));
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((isize >> (8 * i)) & 0xff));
  return out;
}

std::string gzip_decompress(const std::uint8_t* data, size_t size) {
  // 16+MAX_WBITS: accept gzip framing, verify trailer CRC.
  auto bytes = inflate_bytes(data, size, 16 + MAX_WBITS);
  return std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

std::vector<std::uint8_t> zlib_compress(const std::uint8_t* data, size_t size, int level) {
  return deflate_bytes(data, size, level, MAX_WBITS);
}

std::vector<std::uint8_t> zlib_decompress(const std::uint8_t* data, size_t size) {
  return inflate_bytes(data, size, MAX_WBITS);
}

}  // namespace pheno
