#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mbbp/instance_io.hpp"
#include "mbbp/solver.hpp"

namespace mbbp {

enum class file_format { bip, konect };

/// Where an instance comes from: a file, a KONECT dataset, or the generator.
struct instance_spec {
  enum class kind { file, konect, generated };
  kind source = kind::file;
  std::filesystem::path path;
  file_format format = file_format::bip;
  std::string konect_name;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t id = 0;

  static instance_spec from_file(std::filesystem::path path, file_format format);
  static instance_spec from_konect(std::string name);
  static instance_spec generated(std::size_t n, double p, std::uint64_t id);
};

/// Parses "n,p,id" as used by --gen. Throws usage_error on malformed input.
instance_spec parse_gen_triple(const std::string &triple);

/// Loads (and for KONECT, fetches) an instance. Generated instances use
/// `id` as the generator seed.
instance load_instance(const instance_spec &spec, const std::filesystem::path &cache_dir);

struct campaign_config {
  std::vector<instance_spec> instances;
  std::size_t runs = 1;
  /// Per-run parameters; the seed of run i is base_seed + i.
  solver_params params;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  std::filesystem::path cache_dir;
};

struct run_record {
  std::uint64_t seed = 0;
  run_report report;
  /// Biclique re-checked against a freshly loaded copy of the instance.
  bool valid = false;
};

struct instance_summary {
  std::size_t best = 0;
  double average = 0.0;
  double average_time_to_best = 0.0;
  double average_restarts = 0.0;
  /// Reduction counts from the first run that reached `best`.
  std::size_t removed_by_peel = 0;
  std::size_t removed_by_exact = 0;
  std::size_t optimal_runs = 0;
  std::size_t invalid_runs = 0;
};

struct instance_result {
  instance_meta meta;
  std::optional<std::string> error;
  std::vector<run_record> runs;
  instance_summary summary;
};

struct campaign_report {
  std::vector<instance_result> instances;

  /// 0 on success; 1 when every instance failed or a biclique failed validation.
  int exit_code() const;
};

/// Runs every (instance, run) pair, `jobs` at a time, then aggregates.
campaign_report run_campaign(const campaign_config &config);

instance_summary summarize(const std::vector<run_record> &runs);

enum class emit_format { table, csv, json };

void emit_table(const campaign_report &report, std::ostream &out);
void emit_csv(const campaign_report &report, std::ostream &out);
void emit_json(const campaign_report &report, std::ostream &out);
void emit(const campaign_report &report, emit_format format, std::ostream &out);

/// Reads back the per-instance summary rows written by emit_csv.
std::vector<std::pair<std::string, instance_summary>> read_summary_csv(std::istream &in);
/// Reads back a report written by emit_json.
campaign_report read_report_json(std::istream &in);

/// One labelled campaign per solver variant, on the same instances and seeds.
struct variant_result {
  std::string label;
  campaign_report report;
};

enum class study_kind { unbalance, reduction };

std::vector<variant_result> run_variant_study(const campaign_config &config, study_kind kind);
void emit_variant_table(const std::vector<variant_result> &results, std::ostream &out);
void emit_variant_json(const std::vector<variant_result> &results, std::ostream &out);

} // namespace mbbp
