#include "pheno/registry.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <random>

#include "pheno/error.hpp"
#include "pheno/layout.hpp"

namespace pheno {

using nlohmann::json;

Participant& Registry::add(Participant p) {
  if (contains(p.id)) throw Error(Errc::DuplicateParticipant, p.id);
  participants.push_back(std::move(p));
  return participants.back();
}

bool Registry::contains(const std::string& id) const {
  for (const auto& p : participants)
    if (p.id == id) return true;
  return false;
}

Participant& Registry::find(const std::string& id) {
  for (auto& p : participants)
    if (p.id == id) return p;
  throw Error(Errc::UnknownParticipant, id);
}

const Participant& Registry::find(const std::string& id) const {
  for (const auto& p : participants)
    if (p.id == id) return p;
  throw Error(Errc::UnknownParticipant, id);
}

std::string registry_to_json(const Registry& reg) {
  json arr = json::array();
  for (const auto& p : reg.participants) {
    json j;
    j["id"] = p.id;
    j["public_key"] = to_hex(p.public_key);
    j["contact_salt"] = to_hex(p.contact_salt);
    j["gps_offset"] = {p.gps_offset.east_m, p.gps_offset.north_m};
    j["enrollment_date"] = p.enrollment_date;
    j["visit_dates"] = p.visit_dates;
    j["phone_model"] = p.phone_model;
    j["credential_secret"] = p.credential_secret;
    j["tokens"] = {{"access_token", p.tokens.access_token},
                   {"refresh_token", p.tokens.refresh_token},
                   {"expires_at", p.tokens.expires_at}};
    arr.push_back(std::move(j));
  }
  json root;
  root["participants"] = std::move(arr);
  return root.dump(2) + "\n";
}

Registry registry_from_json(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.contains("participants"))
    throw Error(Errc::BadArgument, "registry.json malformed");
  Registry reg;
  for (const auto& j : root["participants"]) {
    Participant p;
    p.id = j.at("id").get<std::string>();
    p.public_key = from_hex(j.at("public_key").get<std::string>());
    p.contact_salt = from_hex(j.at("contact_salt").get<std::string>());
    auto off = j.at("gps_offset");
    p.gps_offset.east_m = off.at(0).get<double>();
    p.gps_offset.north_m = off.at(1).get<double>();
    p.enrollment_date = j.value("enrollment_date", "");
    if (j.contains("visit_dates"))
      p.visit_dates = j["visit_dates"].get<std::vector<std::string>>();
    p.phone_model = j.value("phone_model", "");
    p.credential_secret = j.value("credential_secret", "");
    if (j.contains("tokens")) {
      const auto& t = j["tokens"];
      p.tokens.access_token = t.value("access_token", "");
      p.tokens.refresh_token = t.value("refresh_token", "");
      p.tokens.expires_at = t.value("expires_at", std::int64_t{0});
    }
    reg.participants.push_back(std::move(p));
  }
  return reg;
}

Registry load_registry(const std::string& path) {
  if (!std::filesystem::exists(path)) return Registry{};
  return registry_from_json(read_file(path));
}

void save_registry(const Registry& reg, const std::string& path) {
  write_file_atomic(path, registry_to_json(reg));
}

std::string make_participant_id(std::uint64_t seed) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 61);
  std::string id;
  for (int i = 0; i < 10; ++i) id.push_back(alphabet[pick(rng)]);
  return id;
}

}  // namespace pheno
