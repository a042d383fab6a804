#ifndef VARROB_JSON_IO_HPP
#define VARROB_JSON_IO_HPP

#include <string>

#include "varrob/frontier.hpp"
#include "varrob/instance.hpp"
#include "varrob/uncertainty.hpp"

namespace varrob {

/// Instance schema:
///   { "kind": "shortest-path"|"assignment"|"unconstrained",
///     "n": int, "c_hat": [..],
///     "nodes": int, "arcs": [[u,v,element_index]..], "s": int, "t": int,
///     "p": int,
///     "A": [[..]..], "b": [..], "integral_relaxation": bool }
/// A/b are optional and describe Ax >= b rows overriding the canonical
/// feasible-set description.
Instance instance_from_json(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// Shape schema: { "variant": .., "d": [..] | "Q": [[..]..] | "L": [[..]..] }.
Shape shape_from_json(const std::string& text);
Shape load_shape(const std::string& path);

/// Sidecar for chart CSVs: solution incidence vectors keyed by id.
std::string frontier_solutions_json(const Frontier& frontier);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace varrob

#endif // VARROB_JSON_IO_HPP
