#include "mbbp/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mbbp/error.hpp"
#include "mbbp/random.hpp"

namespace mbbp {

std::string_view to_string(instance_source s) noexcept {
  switch (s) {
  case instance_source::generated: return "generated";
  case instance_source::file: return "file";
  case instance_source::fetched: return "fetched";
  }
  return "?";
}

bipartite_graph gen_random(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw usage_error("gen_random: n must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw usage_error("gen_random: p must lie in (0, 1)");
  rng_t rng(seed);
  std::vector<side_edge> edges;
  edges.reserve(static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) * static_cast<double>(n))));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (uniform_unit(rng) < p) edges.emplace_back(u, v);
  return bipartite_graph(n, n, edges);
}

std::string random_instance_name(std::size_t n, double p, std::uint64_t id) {
  std::ostringstream os;
  os << "G_" << n << '_' << p << '_' << id;
  return os.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char *what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw parse_error(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
  return value;
}

std::size_t parse_positive(std::string_view tok, std::size_t line, const char *what) {
  if (!tok.empty() && tok.front() == '-')
    throw parse_error(std::string("non-positive ") + what + " '" + std::string(tok) + "'", line);
  const auto v = parse_count(tok, line, what);
  if (v == 0) throw parse_error(std::string("non-positive ") + what + " '0'", line);
  return v;
}

} // namespace

instance parse_konect(std::istream &in, std::string name) {
  std::vector<side_edge> edges;
  std::size_t n_u = 0, n_v = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '%') continue;
    if (toks.size() < 2) throw parse_error("expected 'u v [weight [timestamp]]'", lineno);
    if (toks.size() > 4) throw parse_error("too many columns", lineno);
    const auto u = parse_positive(toks[0], lineno, "left index");
    const auto v = parse_positive(toks[1], lineno, "right index");
    n_u = std::max(n_u, u);
    n_v = std::max(n_v, v);
    edges.emplace_back(u - 1, v - 1);
  }
  bipartite_graph g(n_u, n_v, edges);
  instance_meta meta{std::move(name), n_u, n_v, g.edge_count(), instance_source::file};
  return {std::move(g), std::move(meta)};
}

instance parse_bip(std::istream &in, std::string name) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n_u = 0, n_v = 0, m = 0;
  std::vector<side_edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front() == "c") continue;
    if (toks.front() == "p") {
      if (have_header) throw parse_error("duplicate header", lineno);
      if (toks.size() != 5 || toks[1] != "bip")
        throw parse_error("expected 'p bip <nU> <nV> <m>'", lineno);
      n_u = parse_count(toks[2], lineno, "nU");
      n_v = parse_count(toks[3], lineno, "nV");
      m = parse_count(toks[4], lineno, "edge count");
      have_header = true;
      edges.reserve(m);
    } else if (toks.front() == "e") {
      if (!have_header) throw parse_error("edge before header", lineno);
      if (toks.size() != 3) throw parse_error("expected 'e <u> <v>'", lineno);
      const auto u = parse_positive(toks[1], lineno, "u index");
      const auto v = parse_positive(toks[2], lineno, "v index");
      if (u > n_u || v > n_v) throw parse_error("edge endpoint out of range", lineno);
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw parse_error("unknown line type '" + std::string(toks.front()) + "'", lineno);
    }
  }
  if (!have_header) throw parse_error("missing 'p bip' header");
  if (edges.size() != m)
    throw parse_error("header declares " + std::to_string(m) + " edges but " +
                      std::to_string(edges.size()) + " were read");
  bipartite_graph g(n_u, n_v, edges);
  instance_meta meta{std::move(name), n_u, n_v, g.edge_count(), instance_source::file};
  return {std::move(g), std::move(meta)};
}

void write_bip(const bipartite_graph &g, std::ostream &out) {
  const auto edges = g.alive_edges();
  out << "p bip " << g.n_u() << ' ' << g.n_v() << ' ' << edges.size() << '\n';
  for (const auto &[u, v] : edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

std::uint64_t complement_size(const bipartite_graph &g) {
  std::uint64_t alive_pairs =
      static_cast<std::uint64_t>(g.alive_u_count()) * g.alive_v_count();
  std::uint64_t alive_edges = 0;
  for (vertex_id u : g.alive_vertices())
    if (g.is_u(u)) alive_edges += g.degree(u);
  return alive_pairs - alive_edges;
}

namespace {

// Keeps LP rows within the line-length limits of common readers.
class term_writer {
public:
  explicit term_writer(std::ostream &out) : out_(out) {}

  void term(char sign, std::string_view var) {
    if (count_ > 0 && count_ % 8 == 0) out_ << "\n   ";
    if (count_ > 0 || sign == '-') out_ << ' ' << sign << ' ';
    else out_ << ' ';
    out_ << var;
    ++count_;
  }

private:
  std::ostream &out_;
  std::size_t count_ = 0;
};

std::string var_name(const bipartite_graph &g, vertex_id v) {
  return (g.is_u(v) ? "xU_" : "xV_") + std::to_string(g.side_index(v) + 1);
}

} // namespace

void export_lp(const bipartite_graph &g, std::ostream &out, const lp_options &options) {
  const auto comp = complement_size(g);
  if (comp > options.max_complement)
    throw usage_error("export_lp: bipartite complement has " + std::to_string(comp) +
                      " pairs, above the cap of " + std::to_string(options.max_complement));

  std::vector<vertex_id> us, vs;
  for (vertex_id v = 0; v < g.vertex_count(); ++v) {
    if (!g.alive(v)) continue;
    (g.is_u(v) ? us : vs).push_back(v);
  }

  out << "\\ Maximum balanced biclique: " << us.size() << " + " << vs.size()
      << " vertices, " << comp << " non-edges\n";
  out << "Maximize\n obj:";
  {
    term_writer w(out);
    for (vertex_id u : us) w.term('+', var_name(g, u));
  }
  out << "\nSubject To\n";

  std::size_t row = 0;
  for (vertex_id u : us) {
    const auto adj = g.adjacency(u);
    auto it = adj.begin();
    for (vertex_id v : vs) {
      while (it != adj.end() && *it < v) ++it;
      if (it != adj.end() && *it == v) continue;
      out << " ne" << ++row << ": " << var_name(g, u) << " + " << var_name(g, v)
          << " <= 1\n";
    }
  }

  if (!us.empty() || !vs.empty()) {
    out << " balance:";
    term_writer w(out);
    for (vertex_id u : us) w.term('+', var_name(g, u));
    for (vertex_id v : vs) w.term('-', var_name(g, v));
    out << " = 0\n";
  }

  out << "Binary\n";
  std::size_t col = 0;
  for (auto side : {&us, &vs}) {
    for (vertex_id v : *side) {
      out << ' ' << var_name(g, v);
      if (++col % 8 == 0) out << '\n';
    }
  }
  if (col % 8 != 0) out << '\n';
  out << "End\n";
}

} // namespace mbbp
