#pragma once

#include <string>

namespace pheno {

// The seven app groups. Enum order fixes the per-group column order in the
// taps daily features.
enum class AppGroup {
  social_messenger,
  social_media,
  entertainment,
  map_navigation,
  utility_tools,
  games,
  android_system,
};

constexpr int kAppGroupCount = 7;

const char* app_group_name(AppGroup g);        // "social messenger", ...
const char* app_group_token(AppGroup g);       // "social_messenger", ... (column-safe)
AppGroup app_group_from_token(const std::string& token);

// Package → group. Unmapped packages and system-vendor prefixes
// (com.android., com.samsung., android.) fall back to android_system.
AppGroup classify_app(const std::string& package);

}  // namespace pheno
