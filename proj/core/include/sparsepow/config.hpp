#pragma once

// Structured-text (JSON) model configuration and right-hand-side files.
//
// Model:
//   { "kind": "banded", "offsets": [-1, 0, 1], "stencil": [s_-1, s_0, s_1],
//     "envelope": { "c": ..., "norm_bound": ..., "d": ... },
//     "boundary": { ... } }
//   { "kind": "lattice", "a": ..., "b": ..., "boundary": { ... } }
//
// Stencil values are numbers or [re, im] pairs. The optional "boundary" is
//   { "kind": "zero" } | { "kind": "periodic" } (lattice only)
//   | { "kind": "corners", "entries": [[i, j, re, im], ...] }
// where i, j select a window corner: -1 is the lower corner -P, +1 the upper
// corner Q. The default is periodic for lattices and zero otherwise.
//
// Right-hand side: one "index re im" triple per line, separated by spaces or
// commas; blank lines and lines starting with '#' are skipped.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sparsepow/driver.hpp"
#include "sparsepow/lattice.hpp"
#include "sparsepow/matrix.hpp"

namespace sparsepow {

struct ModelConfig {
  InfiniteMatrixSpec spec;
  BoundaryPolicy boundary;
  std::string boundary_kind;
  std::optional<LatticeModelParams> lattice;
};

/// Throws Error(Parse) naming the offending field; library validation errors
/// (envelope, stencil symmetry) propagate with their own kinds.
ModelConfig parse_model_config(const nlohmann::json& config);

ModelConfig load_model_config(const std::filesystem::path& path);

std::map<Index, Complex> parse_rhs(std::istream& in);

std::map<Index, Complex> load_rhs(const std::filesystem::path& path);

}  // namespace sparsepow
