#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "tlk/cli.hpp"
#include "tlk/recoupling.hpp"

namespace tlk::cli {

namespace fs = std::filesystem;

ProjectorCache::ProjectorCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cache: cannot create " + dir_.string() + ": " + ec.message());
  if (!fs::is_directory(dir_)) throw std::runtime_error("cache: " + dir_.string() + " is not a directory");
}

fs::path ProjectorCache::file_for(int n) const {
  return dir_ / ("jw-" + std::to_string(n) + ".v" + std::to_string(kFormatVersion) + ".json");
}

std::optional<SkeinElement> ProjectorCache::get(int n) {
  const fs::path path = file_for(n);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buf.str());
    if (j.at("format") != "tlk-jw" || j.at("version") != kFormatVersion || j.at("n") != n)
      throw std::invalid_argument("header mismatch");
    SkeinElement f = skein_from_json(j.at("element"));
    if (f.bottom() != n || f.top() != n) throw std::invalid_argument("wrong size");
    ++hits_;
    return f;
  } catch (const std::exception&) {
    ++rejected_;
    return std::nullopt;
  }
}

void ProjectorCache::put(int n, const SkeinElement& f) {
  const nlohmann::json j = {{"format", "tlk-jw"}, {"version", kFormatVersion}, {"n", n}, {"element", to_json(f)}};
  const fs::path target = file_for(n);
  const fs::path tmp = dir_ / (target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump() << '\n';
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cache: cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cache: cannot move " + tmp.string() + " to " + target.string() + ": " + ec.message());
  }
}

void ProjectorCache::install() {
  set_projector_store({[this](int n) { return get(n); }, [this](int n, const SkeinElement& f) { put(n, f); }});
}

}  // namespace tlk::cli
