#include "pheno/appgroups.hpp"

#include <unordered_map>

#include "pheno/error.hpp"

namespace pheno {

const char* app_group_name(AppGroup g) {
  switch (g) {
    case AppGroup::social_messenger: return "social messenger";
    case AppGroup::social_media: return "social media";
    case AppGroup::entertainment: return "entertainment";
    case AppGroup::map_navigation: return "map navigation";
    case AppGroup::utility_tools: return "utility tools";
    case AppGroup::games: return "games";
    case AppGroup::android_system: return "android system";
  }
  return "?";
}

const char* app_group_token(AppGroup g) {
  switch (g) {
    case AppGroup::social_messenger: return "social_messenger";
    case AppGroup::social_media: return "social_media";
    case AppGroup::entertainment: return "entertainment";
    case AppGroup::map_navigation: return "map_navigation";
    case AppGroup::utility_tools: return "utility_tools";
    case AppGroup::games: return "games";
    case AppGroup::android_system: return "android_system";
  }
  return "?";
}

AppGroup app_group_from_token(const std::string& token) {
  for (int i = 0; i < kAppGroupCount; ++i) {
    AppGroup g = static_cast<AppGroup>(i);
    if (token == app_group_token(g)) return g;
  }
  throw Error(Errc::BadArgument, "unknown app group '" + token + "'");
}

namespace {

// Static package table. Real deployments would refresh this from the app
// store; here it is part of the build so classification is reproducible.
const std::unordered_map<std::string, AppGroup>& package_table() {
  static const std::unordered_map<std::string, AppGroup> table = {
      // social messenger: person-to-person realtime communication
      {"com.whatsapp", AppGroup::social_messenger},
      {"com.tencent.mobileqq", AppGroup::social_messenger},
      {"com.tencent.mm", AppGroup::social_messenger},
      {"org.telegram.messenger", AppGroup::social_messenger},
      {"com.google.android.gm", AppGroup::social_messenger},
      {"com.microsoft.office.outlook", AppGroup::social_messenger},
      {"com.tinder", AppGroup::social_messenger},
      {"com.okcupid.okcupid", AppGroup::social_messenger},
      {"com.facebook.orca", AppGroup::social_messenger},
      {"jp.naver.line.android", AppGroup::social_messenger},
      {"com.viber.voip", AppGroup::social_messenger},
      {"com.skype.raider", AppGroup::social_messenger},
      // social media: information exchange with the world
      {"com.google.android.youtube", AppGroup::social_media},
      {"com.android.chrome", AppGroup::social_media},
      {"org.mozilla.firefox", AppGroup::social_media},
      {"com.facebook.katana", AppGroup::social_media},
      {"com.instagram.android", AppGroup::social_media},
      {"com.twitter.android", AppGroup::social_media},
      {"com.reddit.frontpage", AppGroup::social_media},
      {"com.linkedin.android", AppGroup::social_media},
      {"com.zhiliaoapp.musically", AppGroup::social_media},
      {"com.pinterest", AppGroup::social_media},
      // entertainment: education/comics/stories/sports/music/video
      {"com.spotify.music", AppGroup::entertainment},
      {"com.netflix.mediaclient", AppGroup::entertainment},
      {"com.amazon.avod.thirdpartyclient", AppGroup::entertainment},
      {"com.audible.application", AppGroup::entertainment},
      {"com.duolingo", AppGroup::entertainment},
      {"com.crunchyroll.crunchyroid", AppGroup::entertainment},
      {"com.soundcloud.android", AppGroup::entertainment},
      {"sg.mediacorp.tv.toggle", AppGroup::entertainment},
      {"com.viki.android", AppGroup::entertainment},
      // map navigation
      {"com.sgbus.android", AppGroup::map_navigation},
      {"sg.busleh", AppGroup::map_navigation},
      {"com.google.android.apps.maps", AppGroup::map_navigation},
      {"com.mapswithme.maps.pro", AppGroup::map_navigation},
      {"com.grabtaxi.passenger", AppGroup::map_navigation},
      {"com.gojek.app", AppGroup::map_navigation},
      {"com.waze", AppGroup::map_navigation},
      // utility tools: banking, finance, documents, editors
      {"com.dbs.dbspaylah", AppGroup::utility_tools},
      {"com.ocbc.mobile", AppGroup::utility_tools},
      {"com.axs.payandroid", AppGroup::utility_tools},
      {"com.dropbox.android", AppGroup::utility_tools},
      {"cn.wps.moffice_eng", AppGroup::utility_tools},
      {"com.adobe.reader", AppGroup::utility_tools},
      {"com.uob.mighty.app", AppGroup::utility_tools},
      {"com.posb.digibank", AppGroup::utility_tools},
      {"com.google.android.apps.docs", AppGroup::utility_tools},
      {"com.google.android.calculator", AppGroup::utility_tools},
      // games
      {"com.supercell.clashofclans", AppGroup::games},
      {"com.king.candycrushsaga", AppGroup::games},
      {"com.mojang.minecraftpe", AppGroup::games},
      {"com.nianticlabs.pokemongo", AppGroup::games},
      {"com.tencent.ig", AppGroup::games},
      {"com.miHoYo.GenshinImpact", AppGroup::games},
      {"jp.pokemon.pokemonunite", AppGroup::games},
  };
  return table;
}

}  // namespace

AppGroup classify_app(const std::string& package) {
  auto it = package_table().find(package);
  if (it != package_table().end()) return it->second;
  // Built-ins and anything unknown (not resolvable in a store lookup).
  return AppGroup::android_system;
}

}  // namespace pheno
