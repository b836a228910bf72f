#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mbbp/bipartite_graph.hpp"

namespace mbbp {

enum class instance_source { generated, file, fetched };

std::string_view to_string(instance_source s) noexcept;

struct instance_meta {
  std::string name;
  std::size_t n_u = 0;
  std::size_t n_v = 0;
  std::size_t edge_count = 0;
  instance_source source = instance_source::file;
};

struct instance {
  bipartite_graph graph;
  instance_meta meta;
};

/**
 * Random balanced bipartite graph with |U| = |V| = n where each of the n^2
 * pairs is an edge independently with probability p.
 *
 * Reproducible everywhere: the pairs are visited in row-major order (u, v)
 * and pair (u, v) is an edge iff the next 64-bit output x of
 * std::mt19937_64(seed) satisfies (x >> 11) * 2^-53 < p.
 *
 * Throws usage_error unless n >= 1 and 0 < p < 1.
 */
bipartite_graph gen_random(std::size_t n, double p, std::uint64_t seed);

/// Name used for generated instances: G_<n>_<p>_<id>.
std::string random_instance_name(std::size_t n, double p, std::uint64_t id);

/// KONECT bipartite edge list: '%' comment lines, then "u v [weight [time]]"
/// with 1-based, independently indexed sides. Extra columns and duplicate
/// edges are ignored. Throws parse_error with the line number.
instance parse_konect(std::istream &in, std::string name = "konect");

/// Native format: a "p bip <nU> <nV> <m>" header, then m lines "e <u> <v>"
/// with 1-based side-local indices. Lines starting with 'c' are comments.
instance parse_bip(std::istream &in, std::string name = "bip");

/// Writes the alive edges of g in the native format (original ids).
void write_bip(const bipartite_graph &g, std::ostream &out);

struct lp_options {
  /// Refuse to export when the bipartite complement has more pairs than this.
  std::uint64_t max_complement = 10'000'000;
};

/**
 * Binary program for the maximum balanced biclique on the alive part of g,
 * in CPLEX LP format: maximize the number of chosen U vertices, forbid every
 * non-adjacent (u, v) pair, and require as many chosen U as V vertices.
 * Variables are xU_<i> and xV_<j>, 1-based within each side.
 *
 * Throws usage_error, quoting the complement size, when it exceeds the cap.
 */
void export_lp(const bipartite_graph &g, std::ostream &out, const lp_options &options = {});

/// Number of non-adjacent (u, v) pairs among alive vertices.
std::uint64_t complement_size(const bipartite_graph &g);

} // namespace mbbp
