#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pheno {

using Bytes = std::vector<std::uint8_t>;

// X25519 keypair. suite 1 wraps a per-chunk symmetric key with a sealed box
// to this public key and encrypts the body with XChaCha20-Poly1305.
struct KeyPair {
  Bytes public_key;   // 32 bytes
  Bytes private_key;  // 32 bytes
  int algorithm_id = 1;
};

// Random keypair, or deterministic from a caller-supplied seed (test mode:
// the seed bytes are hashed down to the generator seed, so any length works).
KeyPair generate_keypair(const std::optional<Bytes>& seed = std::nullopt);

// Container layout (all lengths in bytes):
//   "HOPE" | version=1 | flags | suite_id=1 | wrapped_key_len (u16 BE)
//   | wrapped_key | nonce(24) | ciphertext+tag
// flags bit0 marks compress-before-encrypt (zlib stream inside).
// Everything before the ciphertext is bound as AEAD associated data.
Bytes encrypt_chunk(const Bytes& plaintext, const Bytes& public_key, bool compress);
Bytes decrypt_chunk(const Bytes& chunk, const Bytes& private_key);

// Header peek without keys (used for flag honesty checks and tooling).
struct ChunkHeader {
  std::uint8_t version = 0;
  std::uint8_t flags = 0;
  std::uint8_t suite_id = 0;
  std::uint16_t wrapped_key_len = 0;
};
ChunkHeader parse_chunk_header(const Bytes& chunk);

constexpr const char* kChunkExtension = ".hcz";

// Salted counterparty token: 16 lowercase hex chars, keyed BLAKE2b.
std::string hash_contact(const Bytes& salt, const std::string& counterparty);

Bytes random_bytes(size_t n);

std::string to_hex(const Bytes& b);
Bytes from_hex(const std::string& s);

}  // namespace pheno
