#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pheno/crypto.hpp"
#include "pheno/geo.hpp"

namespace pheno {

struct TokenSet {
  std::string access_token;
  std::string refresh_token;
  std::int64_t expires_at = 0;  // epoch seconds
};

// One registry row. The private key never lives here — it sits in the
// on-premise keystore (`<root>/keystore/<id>.key`); likewise contact_salt
// stays inside registry.json and is never copied into processed outputs.
struct Participant {
  std::string id;  // 10-char alphanumeric
  Bytes public_key;
  Bytes contact_salt;  // 16 bytes
  GpsOffset gps_offset;
  std::string enrollment_date;          // YYYY-MM-DD
  std::vector<std::string> visit_dates; // sorted YYYY-MM-DD
  std::string phone_model;
  std::string credential_secret;        // wearable-cloud credential
  TokenSet tokens;
};

struct Registry {
  std::vector<Participant> participants;

  Participant& add(Participant p);                    // throws DuplicateParticipant
  Participant& find(const std::string& id);           // throws UnknownParticipant
  const Participant& find(const std::string& id) const;
  bool contains(const std::string& id) const;
};

Registry load_registry(const std::string& path);      // missing file → empty registry
void save_registry(const Registry& reg, const std::string& path);

std::string registry_to_json(const Registry& reg);
Registry registry_from_json(const std::string& text);

// Figure-6-style identifier: 10 chars from [A-Za-z0-9], seeded RNG variant
// for reproducible studies.
std::string make_participant_id(std::uint64_t seed);

}  // namespace pheno
