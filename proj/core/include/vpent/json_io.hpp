#pragma once

#include <string>
#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/fractional.hpp"
#include "vpent/graph.hpp"
#include "vpent/graphon.hpp"
#include "vpent/set_system.hpp"
#include "vpent/solver.hpp"

namespace vpent {

// Canonical JSON schemas:
//   system: {"universe":[{"id":"v1","mass":0.2},...],"sets":[["v1","v3"],...]}
//   graph:  {"vertices":["v1",...],"edges":[["v1","v2"],...],"pi":{"v1":0.2,...}}
//   step graphon: {"masses":[...],"support":[[0,1,...],...]}
// Masses are accepted both as numbers and as decimal strings.
// Parse errors raise input_error with the document location.

SetSystem parse_system(const std::string& text);
FiniteGraph parse_graph(const std::string& text);
StepGraphon parse_step_graphon(const std::string& text);

// A bare JSON array of masses (numbers or decimal strings).
std::vector<double> parse_mass_array(const std::string& text);

std::string serialize_system(const SetSystem& system);
std::string serialize_graph(const FiniteGraph& graph);

// Certificate payload:
// {"value":..., "gap":..., "bracket":[lo,hi], "weights":[[k,q],...],
//  "a":{"v1":...}, "converged":true, "log_base":"nat", "entropy":...}
// Infinite values are emitted as the string "infinity". log2 = true rescales
// every entropy-like quantity to bits.
std::string certificate_to_json(const EntropyCertificate& cert, const SetSystem& system,
                                bool log2);

std::string frac_to_json(const LpResult& chi, const LpResult& omega,
                         const Distribution& pi_star);

// All reals in emitted JSON use up to 12 significant digits,
// locale-independent.
std::string format_real(double v);

// Reparse + dump with sorted keys and no insignificant whitespace.
std::string canonical_json(const std::string& text);

// Hex SHA-256 of a string (used for input digests in run manifests).
std::string sha256_hex(const std::string& data);

}  // namespace vpent
