#include "mbbp/konect_fetch.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "mbbp/error.hpp"

namespace fs = std::filesystem;

namespace mbbp {

namespace {

constexpr std::array<konect_dataset, 25> catalog{{
    {"actor-movie", 127823, 383640, 1470418},
    {"bibsonomy-2ui", 5794, 767447, 2555080},
    {"bookcrossing_full-rating", 105278, 340523, 1149739},
    {"dblp-author", 1425813, 4000150, 8649016},
    {"dbpedia-genre", 258934, 7783, 463497},
    {"dbpedia-location", 172091, 53407, 293697},
    {"dbpedia-occupation", 127577, 101730, 250945},
    {"dbpedia-producer", 48833, 138844, 207268},
    {"dbpedia-recordlabel", 168337, 18421, 233286},
    {"dbpedia-starring", 76099, 81085, 281396},
    {"dbpedia-team", 901166, 34461, 1366466},
    {"dbpedia-writer", 89356, 46213, 144340},
    {"discogs_affiliation", 1754823, 270771, 14414659},
    {"discogs_lgenre", 270771, 15, 4147665},
    {"discogs_style", 1617943, 383, 24085580},
    {"edit-frwiki", 288275, 4022276, 46168355},
    {"edit-frwiktionary", 5017, 1907247, 7399298},
    {"flickr-groupmemberships", 395979, 103631, 8545307},
    {"github", 56519, 120867, 440237},
    {"moreno_crime", 829, 551, 1476},
    {"opsahl-collaboration", 16726, 22015, 58595},
    {"opsahl-ucforum", 899, 522, 33720},
    {"stackexchange-stackoverflow", 545196, 96680, 1301942},
    {"wiki-en-cat", 1853493, 182947, 3795796},
    {"youtube-groupmemberships", 94238, 30087, 293360},
}};

// Exclusive advisory lock held for the lifetime of the object.
class file_lock {
public:
  explicit file_lock(const fs::path &path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw fetch_error("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw fetch_error("cannot lock " + path.string());
    }
  }
  ~file_lock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  file_lock(const file_lock &) = delete;
  file_lock &operator=(const file_lock &) = delete;

private:
  int fd_ = -1;
};

std::optional<fs::path> find_edge_list(const fs::path &dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return std::nullopt;
  std::optional<fs::path> best;
  for (const auto &entry : fs::recursive_directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const auto fname = entry.path().filename().string();
    if (fname.rfind("out.", 0) == 0 && (!best || entry.path() < *best)) best = entry.path();
  }
  return best;
}

std::optional<std::uintmax_t> recorded_size(const fs::path &sidecar) {
  std::ifstream in(sidecar);
  std::uintmax_t size = 0;
  if (in >> size) return size;
  return std::nullopt;
}

std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

void download(const std::string &base_url, const std::string &path, const fs::path &dest,
              int timeout_seconds) {
  httplib::Client cli(base_url);
  cli.set_follow_location(true);
  cli.set_connection_timeout(timeout_seconds, 0);
  cli.set_read_timeout(timeout_seconds, 0);

  const fs::path partial = dest.string() + ".part";
  std::ofstream out(partial, std::ios::binary | std::ios::trunc);
  if (!out) throw fetch_error("cannot write " + partial.string());

  std::optional<std::uintmax_t> expected;
  std::uintmax_t received = 0;
  auto res = cli.Get(
      path,
      [&](const httplib::Response &r) {
        if (r.status != 200) return false;
        if (r.has_header("Content-Length"))
          expected = std::stoull(r.get_header_value("Content-Length"));
        return true;
      },
      [&](const char *data, std::size_t len) {
        out.write(data, static_cast<std::streamsize>(len));
        received += len;
        return static_cast<bool>(out);
      });
  out.close();

  if (!res) {
    fs::remove(partial);
    throw fetch_error("GET " + base_url + path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    fs::remove(partial);
    throw fetch_error("GET " + base_url + path + " returned HTTP " + std::to_string(res->status));
  }
  if (expected && *expected != received) {
    fs::remove(partial);
    throw fetch_error("truncated download of " + path + ": " + std::to_string(received) +
                      " of " + std::to_string(*expected) + " bytes");
  }
  fs::rename(partial, dest);
}

} // namespace

std::span<const konect_dataset> konect_catalog() noexcept { return catalog; }

const konect_dataset *find_konect_dataset(std::string_view name) noexcept {
  for (const auto &d : catalog)
    if (d.name == name) return &d;
  return nullptr;
}

fs::path default_cache_dir() {
  if (const char *dir = std::getenv("MBBP_CACHE_DIR"); dir && *dir) return dir;
  if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "mbbp";
  if (const char *home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "mbbp";
  return fs::temp_directory_path() / "mbbp-cache";
}

fetch_options default_fetch_options() {
  fetch_options o;
  if (const char *url = std::getenv("MBBP_KONECT_URL"); url && *url) o.base_url = url;
  return o;
}

fs::path fetch_konect(std::string_view name, const fs::path &cache_dir,
                      const fetch_options &options) {
  if (!find_konect_dataset(name)) {
    std::string known;
    for (const auto &d : catalog) {
      if (!known.empty()) known += ", ";
      known += d.name;
    }
    throw usage_error("unknown KONECT dataset '" + std::string(name) + "'; known: " + known);
  }

  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (ec) throw fetch_error("cannot create cache directory " + cache_dir.string());

  const std::string key(name);
  file_lock lock(cache_dir / (key + ".lock"));
  const fs::path archive = cache_dir / (key + ".tar.bz2");
  const fs::path sidecar = cache_dir / (key + ".tar.bz2.size");
  const fs::path unpack_dir = cache_dir / key;

  if (fs::exists(archive, ec)) {
    const auto size = fs::file_size(archive, ec);
    const auto recorded = recorded_size(sidecar);
    if (!ec && recorded && *recorded == size) {
      if (auto edges = find_edge_list(unpack_dir)) return *edges;
    } else {
      fs::remove(archive, ec);
    }
  }

  if (!fs::exists(archive, ec)) {
    download(options.base_url, options.path_prefix + key + ".tar.bz2", archive,
             options.timeout_seconds);
    std::ofstream(sidecar) << fs::file_size(archive) << '\n';
  }

  fs::remove_all(unpack_dir, ec);
  const std::string cmd = "tar -xjf " + shell_quote(archive.string()) + " -C " +
                          shell_quote(cache_dir.string());
  if (std::system(cmd.c_str()) != 0) throw fetch_error("failed to unpack " + archive.string());
  if (auto edges = find_edge_list(unpack_dir)) return *edges;
  throw fetch_error("archive " + archive.string() + " holds no out.* edge list under " +
                    unpack_dir.string());
}

} // namespace mbbp
