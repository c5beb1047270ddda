#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pheno/config.hpp"
#include "pheno/layout.hpp"

namespace pheno {

struct GenSpec {
  int participants = 20;
  int days = 90;
  // 0-based day index at which the stay-home regime starts; -1 = never.
  int lockdown_day = -1;
  std::uint64_t seed = 7;
  std::string start_date = "2020-01-06";
};

// Writes a complete synthetic study under the layout root: registry,
// keystore, study config, and encrypted raw uploads for all 13 kinds.
// Deterministic: the same spec writes the same registry and the same
// post-decryption file contents (ciphertexts differ run to run because key
// wrapping is randomized). Participants are generated from independent
// sub-seeds, so the output does not depend on generation order.
//
// From lockdown_day onward each participant shifts regime: steps scale by
// 0.65, time at home rises, distinct apps drop ~15%, entertainment tap share
// rises ~30%, peak ambient light scales by 0.7, incoming calls halve, and
// sleep efficiency drops one percentage point.
//
// Returns the participant ids in generation order.
std::vector<std::string> generate_study(const StudyLayout& layout, const StudyConfig& cfg,
                                        const GenSpec& spec);

}  // namespace pheno
