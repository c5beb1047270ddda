#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pheno {

// Deterministic gzip: identical input bytes yield identical output bytes.
// zlib's gzopen stamps the current time into the header, so we frame raw
// DEFLATE ourselves with MTIME=0.
std::vector<std::uint8_t> gzip_compress(std::string_view data, int level = 6);
std::string gzip_decompress(const std::uint8_t* data, size_t size);
inline std::string gzip_decompress(const std::vector<std::uint8_t>& data) {
  return gzip_decompress(data.data(), data.size());
}

// Raw zlib-wrapped DEFLATE (used inside the encrypted container).
std::vector<std::uint8_t> zlib_compress(const std::uint8_t* data, size_t size, int level = 6);
std::vector<std::uint8_t> zlib_decompress(const std::uint8_t* data, size_t size);

}  // namespace pheno
