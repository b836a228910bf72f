#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace mbbp {

/// A KONECT bipartite network known to the fetcher, with the sizes the
/// benchmark tables list for it.
struct konect_dataset {
  std::string_view name;
  std::size_t n_u;
  std::size_t n_v;
  std::size_t edges;
};

std::span<const konect_dataset> konect_catalog() noexcept;
const konect_dataset *find_konect_dataset(std::string_view name) noexcept;

/// $MBBP_CACHE_DIR if set, else $XDG_CACHE_HOME/mbbp, else ~/.cache/mbbp.
std::filesystem::path default_cache_dir();

struct fetch_options {
  /// Scheme and host; $MBBP_KONECT_URL overrides the default.
  std::string base_url = "http://konect.cc";
  std::string path_prefix = "/files/download.tsv.";
  int timeout_seconds = 60;
};

fetch_options default_fetch_options();

/**
 * Ensures the dataset archive is downloaded and unpacked under `cache_dir`
 * and returns the path of its out.* edge list.
 *
 * A cached archive is reused without touching the network when its size
 * matches the size recorded at download time; otherwise it is fetched again.
 * Concurrent callers are serialized per dataset with a lock file.
 *
 * Throws usage_error for names outside the catalog (the message lists the
 * known names) and fetch_error for network, HTTP or unpacking failures.
 */
std::filesystem::path fetch_konect(std::string_view name, const std::filesystem::path &cache_dir,
                                   const fetch_options &options = default_fetch_options());

} // namespace mbbp
