#include "mbbp/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mbbp/error.hpp"
#include "mbbp/konect_fetch.hpp"

namespace mbbp {

using json = nlohmann::json;

instance_spec instance_spec::from_file(std::filesystem::path path, file_format format) {
  instance_spec s;
  s.source = kind::file;
  s.path = std::move(path);
  s.format = format;
  return s;
}

instance_spec instance_spec::from_konect(std::string name) {
  instance_spec s;
  s.source = kind::konect;
  s.konect_name = std::move(name);
  return s;
}

instance_spec instance_spec::generated(std::size_t n, double p, std::uint64_t id) {
  instance_spec s;
  s.source = kind::generated;
  s.n = n;
  s.p = p;
  s.id = id;
  return s;
}

instance_spec parse_gen_triple(const std::string &triple) {
  std::istringstream in(triple);
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t id = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> n >> c1 >> p >> c2 >> id) || c1 != ',' || c2 != ',' || in.peek() != EOF)
    throw usage_error("--gen expects n,p,id (e.g. 250,0.95,1), got '" + triple + "'");
  if (n < 1 || !(p > 0.0 && p < 1.0))
    throw usage_error("--gen needs n >= 1 and 0 < p < 1, got '" + triple + "'");
  return instance_spec::generated(n, p, id);
}

instance load_instance(const instance_spec &spec, const std::filesystem::path &cache_dir) {
  switch (spec.source) {
  case instance_spec::kind::generated: {
    auto g = gen_random(spec.n, spec.p, spec.id);
    instance_meta meta{random_instance_name(spec.n, spec.p, spec.id), g.n_u(), g.n_v(),
                       g.edge_count(), instance_source::generated};
    return {std::move(g), std::move(meta)};
  }
  case instance_spec::kind::konect: {
    const auto path = fetch_konect(spec.konect_name, cache_dir);
    std::ifstream in(path);
    if (!in) throw fetch_error("cannot open " + path.string());
    auto inst = parse_konect(in, spec.konect_name);
    inst.meta.source = instance_source::fetched;
    return inst;
  }
  case instance_spec::kind::file: {
    std::ifstream in(spec.path);
    if (!in) throw parse_error("cannot open " + spec.path.string());
    const auto name = spec.path.stem().string();
    return spec.format == file_format::bip ? parse_bip(in, name) : parse_konect(in, name);
  }
  }
  throw usage_error("load_instance: unknown source");
}

instance_summary summarize(const std::vector<run_record> &runs) {
  instance_summary s;
  if (runs.empty()) return s;
  double total = 0.0, ttb = 0.0, restarts = 0.0;
  for (const auto &r : runs) {
    s.best = std::max(s.best, r.report.omega);
    total += static_cast<double>(r.report.omega);
    ttb += r.report.time_to_best;
    restarts += static_cast<double>(r.report.restarts);
    if (r.report.proven_optimal) ++s.optimal_runs;
    if (!r.valid) ++s.invalid_runs;
  }
  const auto n = static_cast<double>(runs.size());
  s.average = total / n;
  s.average_time_to_best = ttb / n;
  s.average_restarts = restarts / n;
  for (const auto &r : runs) {
    if (r.report.omega == s.best) {
      s.removed_by_peel = r.report.removed_by_peel;
      s.removed_by_exact = r.report.removed_by_exact;
      break;
    }
  }
  return s;
}

int campaign_report::exit_code() const {
  bool any_ok = false;
  for (const auto &inst : instances) {
    if (inst.error) continue;
    any_ok = true;
    if (inst.summary.invalid_runs > 0) return 1;
  }
  return any_ok || instances.empty() ? 0 : 1;
}

campaign_report run_campaign(const campaign_config &config) {
  if (config.runs < 1) throw usage_error("campaign: runs must be at least 1");
  config.params.validate();

  campaign_report report;
  std::vector<std::optional<instance>> loaded(config.instances.size());
  report.instances.resize(config.instances.size());
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    auto &res = report.instances[i];
    try {
      loaded[i] = load_instance(config.instances[i], config.cache_dir);
      res.meta = loaded[i]->meta;
      res.runs.resize(config.runs);
    } catch (const std::exception &e) {
      res.error = e.what();
      const auto &spec = config.instances[i];
      res.meta.name = spec.source == instance_spec::kind::konect ? spec.konect_name
                      : spec.source == instance_spec::kind::file
                          ? spec.path.string()
                          : random_instance_name(spec.n, spec.p, spec.id);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < loaded.size(); ++i)
    if (loaded[i])
      for (std::size_t r = 0; r < config.runs; ++r) tasks.emplace_back(i, r);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const auto t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto [i, r] = tasks[t];
      try {
        auto params = config.params;
        params.seed = config.base_seed + r;
        auto &rec = report.instances[i].runs[r];
        rec.seed = params.seed;
        rec.report = solve(loaded[i]->graph, params);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < loaded.size(); ++i) {
    if (!loaded[i]) continue;
    // Revalidate against a fresh copy so a solver bug cannot hide behind
    // the graph it mutated.
    const auto fresh = load_instance(config.instances[i], config.cache_dir);
    auto &res = report.instances[i];
    for (auto &rec : res.runs) {
      const auto &b = rec.report.best;
      rec.valid = b.balance_deviation() == 0 && b.balanced_size() == rec.report.omega &&
                  is_biclique(fresh.graph, b);
    }
    res.summary = summarize(res.runs);
  }
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string exact_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string best_ave(const instance_result &r) {
  const auto &s = r.summary;
  bool identical = std::all_of(r.runs.begin(), r.runs.end(), [&](const run_record &rec) {
    return rec.report.omega == s.best;
  });
  std::string out = std::to_string(s.best);
  if (!identical) out += " (" + fixed(s.average, 2) + ")";
  return out;
}

json biclique_json(const biclique &b) { return {{"x", b.x()}, {"y", b.y()}}; }

json summary_json(const instance_summary &s) {
  return {{"best", s.best},
          {"average", s.average},
          {"average_time_to_best", s.average_time_to_best},
          {"average_restarts", s.average_restarts},
          {"removed_by_peel", s.removed_by_peel},
          {"removed_by_exact", s.removed_by_exact},
          {"optimal_runs", s.optimal_runs},
          {"invalid_runs", s.invalid_runs}};
}

instance_summary summary_from_json(const json &j) {
  instance_summary s;
  s.best = j.at("best").get<std::size_t>();
  s.average = j.at("average").get<double>();
  s.average_time_to_best = j.at("average_time_to_best").get<double>();
  s.average_restarts = j.at("average_restarts").get<double>();
  s.removed_by_peel = j.at("removed_by_peel").get<std::size_t>();
  s.removed_by_exact = j.at("removed_by_exact").get<std::size_t>();
  s.optimal_runs = j.at("optimal_runs").get<std::size_t>();
  s.invalid_runs = j.at("invalid_runs").get<std::size_t>();
  return s;
}

json report_json(const campaign_report &report) {
  json instances = json::array();
  for (const auto &inst : report.instances) {
    json runs = json::array();
    for (const auto &rec : inst.runs) {
      const auto &r = rec.report;
      runs.push_back({{"seed", rec.seed},
                      {"omega", r.omega},
                      {"proven_optimal", r.proven_optimal},
                      {"time_to_best", r.time_to_best},
                      {"total_time", r.total_time},
                      {"restarts", r.restarts},
                      {"removed_by_peel", r.removed_by_peel},
                      {"removed_by_exact", r.removed_by_exact},
                      {"valid", rec.valid},
                      {"best", biclique_json(r.best)}});
    }
    json j = {{"name", inst.meta.name},
              {"n_u", inst.meta.n_u},
              {"n_v", inst.meta.n_v},
              {"edges", inst.meta.edge_count},
              {"source", std::string(to_string(inst.meta.source))},
              {"error", inst.error ? json(*inst.error) : json(nullptr)},
              {"runs", std::move(runs)},
              {"summary", summary_json(inst.summary)}};
    instances.push_back(std::move(j));
  }
  return {{"instances", std::move(instances)}};
}

} // namespace

void emit_table(const campaign_report &report, std::ostream &out) {
  out << std::left << std::setw(28) << "instance" << std::setw(22) << "(|U|,|V|)"
      << std::setw(12) << "|E|" << std::setw(16) << "best(ave)" << std::setw(10) << "time"
      << std::setw(10) << "red_1" << std::setw(10) << "red_2" << "opt\n";
  for (const auto &inst : report.instances) {
    out << std::setw(28) << inst.meta.name;
    if (inst.error) {
      out << "error: " << *inst.error << '\n';
      continue;
    }
    const auto &s = inst.summary;
    out << std::setw(22)
        << "(" + std::to_string(inst.meta.n_u) + ", " + std::to_string(inst.meta.n_v) + ")"
        << std::setw(12) << inst.meta.edge_count << std::setw(16) << best_ave(inst)
        << std::setw(10) << fixed(s.average_time_to_best, 2) << std::setw(10)
        << s.removed_by_peel << std::setw(10) << s.removed_by_exact << s.optimal_runs << '/'
        << inst.runs.size() << '\n';
  }
  out << std::right;
}

void emit_csv(const campaign_report &report, std::ostream &out) {
  out << "instance,n_u,n_v,edges,runs,best,average,average_time_to_best,average_restarts,"
         "removed_by_peel,removed_by_exact,optimal_runs,invalid_runs,error\n";
  for (const auto &inst : report.instances) {
    const auto &s = inst.summary;
    std::string err = inst.error.value_or("");
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << inst.meta.name << ',' << inst.meta.n_u << ',' << inst.meta.n_v << ','
        << inst.meta.edge_count << ',' << inst.runs.size() << ',' << s.best << ','
        << exact_double(s.average) << ',' << exact_double(s.average_time_to_best) << ','
        << exact_double(s.average_restarts) << ',' << s.removed_by_peel << ','
        << s.removed_by_exact << ',' << s.optimal_runs << ',' << s.invalid_runs << ','
        << err << '\n';
  }
}

void emit_json(const campaign_report &report, std::ostream &out) {
  out << report_json(report).dump(2) << '\n';
}

void emit(const campaign_report &report, emit_format format, std::ostream &out) {
  switch (format) {
  case emit_format::table: emit_table(report, out); break;
  case emit_format::csv: emit_csv(report, out); break;
  case emit_format::json: emit_json(report, out); break;
  }
}

std::vector<std::pair<std::string, instance_summary>> read_summary_csv(std::istream &in) {
  std::vector<std::pair<std::string, instance_summary>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (++lineno == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() == 13) cells.emplace_back();
    if (cells.size() != 14) throw parse_error("expected 14 CSV columns", lineno);
    instance_summary s;
    s.best = std::stoull(cells[5]);
    s.average = std::stod(cells[6]);
    s.average_time_to_best = std::stod(cells[7]);
    s.average_restarts = std::stod(cells[8]);
    s.removed_by_peel = std::stoull(cells[9]);
    s.removed_by_exact = std::stoull(cells[10]);
    s.optimal_runs = std::stoull(cells[11]);
    s.invalid_runs = std::stoull(cells[12]);
    rows.emplace_back(cells[0], s);
  }
  return rows;
}

campaign_report read_report_json(std::istream &in) {
  const json j = json::parse(in);
  campaign_report report;
  for (const auto &ji : j.at("instances")) {
    instance_result inst;
    inst.meta.name = ji.at("name").get<std::string>();
    inst.meta.n_u = ji.at("n_u").get<std::size_t>();
    inst.meta.n_v = ji.at("n_v").get<std::size_t>();
    inst.meta.edge_count = ji.at("edges").get<std::size_t>();
    const auto src = ji.at("source").get<std::string>();
    inst.meta.source = src == "generated" ? instance_source::generated
                       : src == "fetched" ? instance_source::fetched
                                          : instance_source::file;
    if (!ji.at("error").is_null()) inst.error = ji.at("error").get<std::string>();
    for (const auto &jr : ji.at("runs")) {
      run_record rec;
      rec.seed = jr.at("seed").get<std::uint64_t>();
      rec.valid = jr.at("valid").get<bool>();
      auto &r = rec.report;
      r.omega = jr.at("omega").get<std::size_t>();
      r.proven_optimal = jr.at("proven_optimal").get<bool>();
      r.time_to_best = jr.at("time_to_best").get<double>();
      r.total_time = jr.at("total_time").get<double>();
      r.restarts = jr.at("restarts").get<std::uint64_t>();
      r.removed_by_peel = jr.at("removed_by_peel").get<std::size_t>();
      r.removed_by_exact = jr.at("removed_by_exact").get<std::size_t>();
      r.best = biclique(jr.at("best").at("x").get<std::vector<vertex_id>>(),
                        jr.at("best").at("y").get<std::vector<vertex_id>>());
      inst.runs.push_back(std::move(rec));
    }
    inst.summary = summary_from_json(ji.at("summary"));
    report.instances.push_back(std::move(inst));
  }
  return report;
}

std::vector<variant_result> run_variant_study(const campaign_config &config, study_kind kind) {
  std::vector<variant_result> out;
  if (kind == study_kind::unbalance) {
    for (auto v : {unbalance_variant::unbounded, unbalance_variant::bound1,
                   unbalance_variant::bound2}) {
      auto cfg = config;
      cfg.params.unbalance = v;
      out.push_back({"unbalance=" + std::string(to_string(v)), run_campaign(cfg)});
    }
  } else {
    for (auto v : {reduction_variant::none, reduction_variant::peel,
                   reduction_variant::peel_exact}) {
      auto cfg = config;
      cfg.params.reduction = v;
      out.push_back({"reduction=" + std::string(to_string(v)), run_campaign(cfg)});
    }
  }
  return out;
}

void emit_variant_table(const std::vector<variant_result> &results, std::ostream &out) {
  if (results.empty()) return;
  out << std::left << std::setw(28) << "instance";
  for (const auto &v : results)
    out << std::setw(18) << v.label << std::setw(10) << "time" << std::setw(12) << "iter";
  out << '\n';
  const auto &first = results.front().report.instances;
  for (std::size_t i = 0; i < first.size(); ++i) {
    out << std::setw(28) << first[i].meta.name;
    for (const auto &v : results) {
      const auto &inst = v.report.instances[i];
      if (inst.error) {
        out << std::setw(40) << "error";
        continue;
      }
      out << std::setw(18) << best_ave(inst) << std::setw(10)
          << fixed(inst.summary.average_time_to_best, 2) << std::setw(12)
          << fixed(inst.summary.average_restarts, 0);
    }
    out << '\n';
  }
  out << std::right;
}

void emit_variant_json(const std::vector<variant_result> &results, std::ostream &out) {
  json j = json::array();
  for (const auto &v : results) j.push_back({{"variant", v.label}, {"report", report_json(v.report)}});
  out << j.dump(2) << '\n';
}

} // namespace mbbp
