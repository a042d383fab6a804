#ifndef VARROB_GENERATORS_HPP
#define VARROB_GENERATORS_HPP

#include <optional>

#include "varrob/instance.hpp"

namespace varrob {

/// p x p assignment with i.i.d. uniform integer costs in {0,...,c_max}.
Instance gen_assignment(int p, int c_max, std::uint64_t seed);

struct SeriesParallelInstance {
    Instance instance;
    int num_nodes = 0;
    int num_arcs = 0;
};

/// Random series-parallel graph from a random composition tree with
/// `edge_ops` leaves (arcs); arc costs uniform integers in
/// {c_lo,...,c_hi}.
SeriesParallelInstance gen_series_parallel(int edge_ops, std::uint64_t seed,
                                           int c_lo = 1, int c_hi = 20);

struct LayeredInstance {
    Instance instance;
    int layers = 0;
    int width = 0;
};

/// Layered graph: source, `layers` fully connected layers of `width`
/// nodes, sink.
LayeredInstance gen_layered(int layers, int width, std::uint64_t seed, int c_lo = 1,
                            int c_hi = 20);

/// Structural check: reduces the graph by series contractions and parallel
/// merges; true when it collapses to a single source-sink arc.
bool is_series_parallel(const Instance& inst);

/// Random weight vector with uniform integer entries in {lo,...,hi}.
Vec gen_weights(int n, int lo, int hi, std::uint64_t seed);

/// Random simple digraph on `nodes` nodes (forward arcs sampled per seed)
/// used by the regret phenomenon search; always s=0, t=nodes-1, validated
/// connected.
std::optional<Instance> gen_random_digraph(int nodes, std::uint64_t seed, int c_lo = 1,
                                           int c_hi = 20);

struct NonmonotoneSearchResult {
    Instance instance;
    std::uint64_t seed = 0;
    double bad_lambda = 0.0; // an interior budget where x_hat loses optimality
};

/// Searches seeds for a shortest-path instance whose nominal solution is
/// regret-optimal at 0 and at 1 but not at some interior lambda; the
/// feasible budget set is then disconnected.
std::optional<NonmonotoneSearchResult> find_regret_nonmonotone_instance(
    int nodes, std::uint64_t max_seeds);

} // namespace varrob

#endif // VARROB_GENERATORS_HPP
