#include "pheno/layout.hpp"

#include <algorithm>
#include <fstream>

#include "pheno/error.hpp"

namespace pheno {

fs::path StudyLayout::stage_dir(int stage) const {
  if (stage < 1 || stage > 6) throw Error(Errc::BadArgument, "stage must be 1..6");
  if (stage == 1) return root / "decrypted";
  return root / (std::to_string(stage - 1) + ".decrypted");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + p.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

Bytes read_file_bytes(const fs::path& p) {
  std::string s = read_file(p);
  return Bytes(s.begin(), s.end());
}

static void write_atomic_impl(const fs::path& p, const char* data, size_t size) {
  fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot create " + tmp.string());
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) throw Error(Errc::IoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, p);
}

void write_file_atomic(const fs::path& p, std::string_view data) {
  write_atomic_impl(p, data.data(), data.size());
}

void write_file_atomic(const fs::path& p, const Bytes& data) {
  write_atomic_impl(p, reinterpret_cast<const char*>(data.data()), data.size());
}

std::vector<std::string> list_files(const fs::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file()) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> list_dirs(const fs::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_directory()) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

bool needs_rebuild(const fs::path& out, const fs::path& in) {
  std::error_code ec;
  auto out_t = fs::last_write_time(out, ec);
  if (ec) return true;
  auto in_t = fs::last_write_time(in, ec);
  if (ec) return false;  // no input: keep existing output
  return in_t > out_t;
}

}  // namespace pheno
