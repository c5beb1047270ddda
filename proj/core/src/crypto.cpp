#include "pheno/crypto.hpp"

#include <sodium.h>

#include <cstring>

#include "pheno/error.hpp"
#include "pheno/gzio.hpp"

namespace pheno {

namespace {

constexpr std::uint8_t kMagic[4] = {'H', 'O', 'P', 'E'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kSuite = 1;
constexpr size_t kNonceLen = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;  // 24
constexpr size_t kSymKeyLen = crypto_aead_xchacha20poly1305_ietf_KEYBYTES;  // 32

void ensure_sodium() {
  if (sodium_init() < 0) throw Error(Errc::EntropyFailure, "libsodium initialization failed");
}

}  // namespace

KeyPair generate_keypair(const std::optional<Bytes>& seed) {
  ensure_sodium();
  KeyPair kp;
  kp.public_key.resize(crypto_box_PUBLICKEYBYTES);
  kp.private_key.resize(crypto_box_SECRETKEYBYTES);
  if (seed) {
    std::uint8_t s[crypto_box_SEEDBYTES];
    crypto_generichash(s, sizeof(s), seed->data(), seed->size(), nullptr, 0);
    crypto_box_seed_keypair(kp.public_key.data(), kp.private_key.data(), s);
  } else {
    crypto_box_keypair(kp.public_key.data(), kp.private_key.data());
  }
  return kp;
}

Bytes encrypt_chunk(const Bytes& plaintext, const Bytes& public_key, bool compress) {
  ensure_sodium();
  if (public_key.size() != crypto_box_PUBLICKEYBYTES)
    throw Error(Errc::InvalidKey, "public key must be 32 bytes");

  const Bytes* body = &plaintext;
  Bytes compressed;
  if (compress) {
    compressed = zlib_compress(plaintext.data(), plaintext.size(), 3);
    body = &compressed;
  }

  std::uint8_t sym[kSymKeyLen];
  randombytes_buf(sym, sizeof(sym));

  Bytes wrapped(crypto_box_SEALBYTES + kSymKeyLen);
  if (crypto_box_seal(wrapped.data(), sym, sizeof(sym), public_key.data()) != 0)
    throw Error(Errc::InvalidKey, "key wrap failed");

  Bytes out;
  out.reserve(9 + wrapped.size() + kNonceLen + body->size() +
              crypto_aead_xchacha20poly1305_ietf_ABYTES);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(compress ? 0x01 : 0x00);
  out.push_back(kSuite);
  out.push_back(static_cast<std::uint8_t>(wrapped.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(wrapped.size() & 0xff));
  out.insert(out.end(), wrapped.begin(), wrapped.end());

  std::uint8_t nonce[kNonceLen];
  randombytes_buf(nonce, sizeof(nonce));
  out.insert(out.end(), nonce, nonce + kNonceLen);

  size_t aad_len = out.size();  // magic..nonce inclusive
  size_t ct_off = out.size();
  out.resize(out.size() + body->size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long ct_len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(out.data() + ct_off, &ct_len, body->data(),
                                             body->size(), out.data(), aad_len, nullptr, nonce,
                                             sym);
  out.resize(ct_off + ct_len);
  sodium_memzero(sym, sizeof(sym));
  return out;
}

ChunkHeader parse_chunk_header(const Bytes& chunk) {
  if (chunk.size() < 9) throw Error(Errc::Truncated, "chunk shorter than fixed header");
  if (std::memcmp(chunk.data(), kMagic, 4) != 0)
    throw Error(Errc::BadMagic, "missing HOPE magic");
  ChunkHeader h;
  h.version = chunk[4];
  h.flags = chunk[5];
  h.suite_id = chunk[6];
  h.wrapped_key_len = static_cast<std::uint16_t>((chunk[7] << 8) | chunk[8]);
  return h;
}

Bytes decrypt_chunk(const Bytes& chunk, const Bytes& private_key) {
  ensure_sodium();
  if (private_key.size() != crypto_box_SECRETKEYBYTES)
    throw Error(Errc::InvalidKey, "private key must be 32 bytes");
  ChunkHeader h = parse_chunk_header(chunk);
  if (h.version != kVersion)
    throw Error(Errc::UnknownVersion, "container version " + std::to_string(h.version));
  if (h.suite_id != kSuite)
    throw Error(Errc::UnknownSuite, "cipher suite " + std::to_string(h.suite_id));

  size_t pos = 9;
  if (chunk.size() < pos + h.wrapped_key_len + kNonceLen +
                         crypto_aead_xchacha20poly1305_ietf_ABYTES)
    throw Error(Errc::Truncated, "chunk body shorter than header promises");
  const std::uint8_t* wrapped = chunk.data() + pos;
  pos += h.wrapped_key_len;
  const std::uint8_t* nonce = chunk.data() + pos;
  pos += kNonceLen;
  size_t aad_len = pos;

  if (h.wrapped_key_len != crypto_box_SEALBYTES + kSymKeyLen)
    throw Error(Errc::AuthFailure, "wrapped key has unexpected length");
  std::uint8_t pub[crypto_box_PUBLICKEYBYTES];
  crypto_scalarmult_base(pub, private_key.data());
  std::uint8_t sym[kSymKeyLen];
  if (crypto_box_seal_open(sym, wrapped, h.wrapped_key_len, pub, private_key.data()) != 0)
    throw Error(Errc::AuthFailure, "key unwrap failed");

  Bytes body(chunk.size() - pos);
  unsigned long long body_len = 0;
  int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(body.data(), &body_len, nullptr,
                                                      chunk.data() + pos, chunk.size() - pos,
                                                      chunk.data(), aad_len, nonce, sym);
  sodium_memzero(sym, sizeof(sym));
  if (rc != 0) throw Error(Errc::AuthFailure, "ciphertext authentication failed");
  body.resize(body_len);

  if (h.flags & 0x01) {
    Bytes plain = zlib_decompress(body.data(), body.size());
    return plain;
  }
  return body;
}

std::string hash_contact(const Bytes& salt, const std::string& counterparty) {
  ensure_sodium();
  std::uint8_t digest[8];
  crypto_generichash(digest, sizeof(digest),
                     reinterpret_cast<const std::uint8_t*>(counterparty.data()),
                     counterparty.size(), salt.data(), salt.size());
  Bytes d(digest, digest + sizeof(digest));
  return to_hex(d);
}

Bytes random_bytes(size_t n) {
  ensure_sodium();
  Bytes b(n);
  if (n) randombytes_buf(b.data(), n);
  return b;
}

std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (std::uint8_t c : b) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 0xf]);
  }
  return s;
}

Bytes from_hex(const std::string& s) {
  auto nib = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(Errc::BadArgument, "invalid hex digit");
  };
  if (s.size() % 2) throw Error(Errc::BadArgument, "odd-length hex string");
  Bytes out(s.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nib(s[2 * i]) << 4) | nib(s[2 * i + 1]));
  return out;
}

}  // namespace pheno
