#include "sparsepow/config.hpp"

#include <fstream>
#include <sstream>

namespace sparsepow {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Parse, "config field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, "expected a number");
  return value.get<double>();
}

Index integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "expected an integer");
  return value.get<Index>();
}

Complex scalar(const json& value, const std::string& field) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  fail(field, "expected a number or an [re, im] pair");
}

std::string kind_of(const json& obj, const std::string& path) {
  const json& kind = require(obj, "kind", path);
  const std::string field = path.empty() ? "kind" : path + ".kind";
  if (!kind.is_string()) fail(field, "expected a string");
  return kind.get<std::string>();
}

SpectralEnvelope parse_envelope(const json& obj) {
  const json& env = require(obj, "envelope", "");
  SpectralEnvelope e;
  e.c = number(require(env, "c", "envelope"), "envelope.c");
  e.norm_bound = number(require(env, "norm_bound", "envelope"), "envelope.norm_bound");
  e.d = env.contains("d") ? number(env["d"], "envelope.d") : 0.0;
  return e;
}

InfiniteMatrixSpec parse_banded(const json& obj) {
  const json& offsets = require(obj, "offsets", "");
  const json& stencil = require(obj, "stencil", "");
  if (!offsets.is_array() || offsets.empty()) fail("offsets", "expected a non-empty array");
  if (!stencil.is_array()) fail("stencil", "expected an array");
  if (stencil.size() != offsets.size()) fail("stencil", "length differs from offsets");

  std::vector<std::pair<Index, Complex>> entries;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const std::string suffix = "[" + std::to_string(i) + "]";
    entries.emplace_back(integer(offsets[i], "offsets" + suffix), scalar(stencil[i], "stencil" + suffix));
  }
  return banded_spec(entries, parse_envelope(obj));
}

LatticeModelParams parse_lattice(const json& obj) {
  LatticeModelParams p;
  p.a = number(require(obj, "a", ""), "a");
  p.b = number(require(obj, "b", ""), "b");
  return p;
}

Index corner_of(const Window& window, Index selector) {
  return selector < 0 ? window.lower() : window.upper();
}

BoundaryPolicy parse_boundary(const json& obj, const std::optional<LatticeModelParams>& lattice,
                              std::string& kind) {
  kind = kind_of(obj, "boundary");
  if (kind == "zero") return zero_boundary_policy();
  if (kind == "periodic") {
    if (!lattice) fail("boundary.kind", "periodic boundary is only defined for lattice models");
    const LatticeModelParams params = *lattice;
    return [params](const Window& w) { return periodic_boundary(w, params); };
  }
  if (kind == "corners") {
    const json& entries = require(obj, "entries", "boundary");
    if (!entries.is_array()) fail("boundary.entries", "expected an array");
    struct Corner {
      Index i, j;
      Complex value;
    };
    std::vector<Corner> corners;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string field = "boundary.entries[" + std::to_string(k) + "]";
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 4) fail(field, "expected [i, j, re, im]");
      const Index i = integer(e[0], field + "[0]");
      const Index j = integer(e[1], field + "[1]");
      if ((i != -1 && i != 1) || (j != -1 && j != 1)) {
        fail(field, "corner selectors must be -1 (lower corner) or 1 (upper corner)");
      }
      corners.push_back({i, j, {number(e[2], field + "[2]"), number(e[3], field + "[3]")}});
    }
    // Validate Hermitian symmetry once, on a window with distinct corners.
    {
      std::map<BoundarySpec::Key, Complex> probe;
      for (const auto& c : corners) probe[{c.i, c.j}] += c.value;
      try {
        BoundarySpec check(probe);
      } catch (const Error& e) {
        fail("boundary.entries", e.what());
      }
    }
    return [corners](const Window& w) {
      std::map<BoundarySpec::Key, Complex> entries;
      for (const auto& c : corners) entries[{corner_of(w, c.i), corner_of(w, c.j)}] += c.value;
      return BoundarySpec(std::move(entries));
    };
  }
  fail("boundary.kind", "unknown boundary kind '" + kind + "'");
}

}  // namespace

ModelConfig parse_model_config(const json& config) {
  if (!config.is_object()) fail("<root>", "expected an object");
  const std::string kind = kind_of(config, "");

  std::optional<LatticeModelParams> lattice;
  std::optional<InfiniteMatrixSpec> spec;
  if (kind == "banded") {
    spec = parse_banded(config);
  } else if (kind == "lattice") {
    lattice = parse_lattice(config);
    spec = lattice_spec(*lattice);
  } else {
    fail("kind", "unknown matrix kind '" + kind + "'");
  }

  std::string boundary_kind;
  BoundaryPolicy boundary;
  if (config.contains("boundary")) {
    boundary = parse_boundary(config["boundary"], lattice, boundary_kind);
  } else if (lattice) {
    boundary = parse_boundary(json{{"kind", "periodic"}}, lattice, boundary_kind);
  } else {
    boundary = parse_boundary(json{{"kind", "zero"}}, lattice, boundary_kind);
  }
  return ModelConfig{std::move(*spec), std::move(boundary), boundary_kind, lattice};
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config file " + path.string());
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_model_config(config);
}

std::map<Index, Complex> parse_rhs(std::istream& in) {
  std::map<Index, Complex> rhs;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    Index index = 0;
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(fields >> index >> re >> im) || (fields >> extra)) {
      throw Error(ErrorKind::Parse,
                  "rhs line " + std::to_string(lineno) + ": expected 'index re im'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw Error(ErrorKind::Parse, "rhs line " + std::to_string(lineno) + ": non-finite value");
    }
    rhs[index] += Complex{re, im};
  }
  return rhs;
}

std::map<Index, Complex> load_rhs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open rhs file " + path.string());
  return parse_rhs(in);
}

}  // namespace sparsepow
