#include "tori/spec_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "tori/errors.hpp"

namespace tori {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::size_t parse_count(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected a non-negative integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const long long x = v.get<long long>();
  if (x < 0) throw ValidationError(where + ": must be non-negative, got " + std::to_string(x));
  return static_cast<std::size_t>(x);
}

long parse_long(const json& v, const std::string& where) {
  const Integer x = parse_integer(v, where);
  if (!x.fits_slong_p()) throw ValidationError(where + ": value out of range");
  return x.get_si();
}

IntVector parse_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected a list of integers");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// Rows of a matrix; `cols_if_empty` sets the width of a matrix with no rows.
IntMatrix parse_matrix(const json& v, const std::string& where, std::size_t cols_if_empty) {
  if (!v.is_array()) throw SchemaError(where + ": expected a list of rows");
  if (v.empty()) return IntMatrix(0, cols_if_empty);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(parse_vector(v[i], where + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size())
      throw SchemaError(where + ": row " + std::to_string(i) + " has length " +
                        std::to_string(rows.back().size()) + ", expected " +
                        std::to_string(rows.front().size()));
  }
  return IntMatrix::from_rows(rows, rows.front().size());
}

ArchBlocks parse_arch(const json& a) {
  const std::string where = "archimedean";
  if (!a.is_object()) throw SchemaError(where + ": expected an object");
  ArchBlocks b;
  b.n1 = parse_count(require(a, "n1", where), where + ".n1");
  b.n2 = parse_count(require(a, "n2", where), where + ".n2");
  b.n3 = parse_count(require(a, "n3", where), where + ".n3");
  b.m1 = parse_count(require(a, "m1", where), where + ".m1");
  b.m2 = parse_count(require(a, "m2", where), where + ".m2");
  b.m3 = parse_count(require(a, "m3", where), where + ".m3");
  auto block = [&](const char* key, std::size_t rows, std::size_t cols) {
    auto it = a.find(key);
    if (it == a.end()) {
      if (rows == 0 || cols == 0) return IntMatrix(rows, cols);
      throw SchemaError(where + ": missing key \"" + key + "\"");
    }
    IntMatrix m = parse_matrix(*it, where + "." + key, cols);
    // An all-empty list of rows stands for a rows x 0 block.
    if (cols == 0 && m.rows() == 0) return IntMatrix(rows, 0);
    return m;
  };
  b.A1 = block("A1", b.m1, b.n1);
  b.A2 = block("A2", b.m2, b.n1);
  b.A3 = block("A3", b.m3, b.n1);
  b.C = block("C", b.m3, b.n2);
  b.B1 = block("B1", b.m1, b.n3);
  b.B2 = block("B2", b.m2, b.n3);
  if (auto it = a.find("B3"); it != a.end()) {
    if (!it->is_array()) throw SchemaError(where + ".B3: expected a list of rows");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& row = (*it)[i];
      const std::string rw = where + ".B3[" + std::to_string(i) + "]";
      if (!row.is_array()) throw SchemaError(rw + ": expected a list of [b, b'] pairs");
      std::vector<std::pair<Integer, Integer>> out;
      for (std::size_t j = 0; j < row.size(); ++j) {
        const std::string pw = rw + "[" + std::to_string(j) + "]";
        if (!row[j].is_array() || row[j].size() != 2)
          throw SchemaError(pw + ": expected a pair [b, b']");
        out.emplace_back(parse_integer(row[j][0], pw + "[0]"), parse_integer(row[j][1], pw + "[1]"));
      }
      b.B3.push_back(std::move(out));
    }
  } else if (b.m3 > 0 && b.n3 > 0) {
    throw SchemaError(where + ": missing key \"B3\"");
  } else {
    b.B3.assign(b.m3, {});
  }
  validate(b);
  return b;
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Integer parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
    return Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    Integer x;
    if (x.set_str(v.get<std::string>(), 10) == 0) return x;
  }
  throw SchemaError(where + ": expected an integer");
}

Rational parse_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(parse_integer(v, where));
  if (v.is_string()) {
    Rational x;
    if (x.set_str(v.get<std::string>(), 10) == 0 && x.get_den() != 0) {
      x.canonicalize();
      return x;
    }
  }
  throw SchemaError(where + ": expected an integer or a \"p/q\" string");
}

ordered_json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

InputSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SchemaError("spec: expected a JSON object");
  InputSpec spec;
  spec.dim = parse_count(require(doc, "dim", "spec"), "dim");

  const json& gens = require(doc, "generators", "spec");
  if (!gens.is_array()) throw SchemaError("generators: expected a list of matrices");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string where = "generators[" + std::to_string(k) + "]";
    IntMatrix g = parse_matrix(gens[k], where, spec.dim);
    if (g.rows() != spec.dim || g.cols() != spec.dim)
      throw SchemaError(where + ": expected a " + std::to_string(spec.dim) + "x" +
                        std::to_string(spec.dim) + " matrix");
    spec.generators.push_back(std::move(g));
  }

  const json& cws = require(doc, "coweights", "spec");
  if (!cws.is_array()) throw SchemaError("coweights: expected a list");
  for (std::size_t k = 0; k < cws.size(); ++k) {
    const std::string where = "coweights[" + std::to_string(k) + "]";
    if (!cws[k].is_object()) throw SchemaError(where + ": expected an object");
    CoweightEntry e;
    e.vector = parse_vector(require(cws[k], "vector", where), where + ".vector");
    if (e.vector.size() != spec.dim)
      throw SchemaError(where + ".vector: expected length " + std::to_string(spec.dim));
    if (auto it = cws[k].find("multiplicity"); it != cws[k].end()) {
      e.multiplicity = parse_long(*it, where + ".multiplicity");
      if (e.multiplicity < 1)
        throw ValidationError(where + ".multiplicity: must be positive");
    }
    spec.coweights.push_back(std::move(e));
  }

  if (auto it = doc.find("gtilde"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("gtilde: expected an object");
    const json& mode = require(*it, "mode", "gtilde");
    if (!mode.is_string()) throw SchemaError("gtilde.mode: expected \"full\" or \"explicit\"");
    const std::string m = mode.get<std::string>();
    if (m == "explicit") {
      const json& g = require(*it, "generators", "gtilde");
      if (!g.is_array()) throw SchemaError("gtilde.generators: expected a list");
      std::vector<GTildeGenerator> out;
      for (std::size_t k = 0; k < g.size(); ++k) {
        const std::string where = "gtilde.generators[" + std::to_string(k) + "]";
        if (!g[k].is_object()) throw SchemaError(where + ": expected an object");
        GTildeGenerator gen;
        const json& word = require(g[k], "g", where);
        if (!word.is_array()) throw SchemaError(where + ".g: expected a list of generator indices");
        for (std::size_t j = 0; j < word.size(); ++j)
          gen.word.push_back(parse_count(word[j], where + ".g[" + std::to_string(j) + "]"));
        gen.unit = parse_long(require(g[k], "unit", where), where + ".unit");
        out.push_back(std::move(gen));
      }
      spec.gtilde = std::move(out);
    } else if (m != "full") {
      throw SchemaError("gtilde.mode: expected \"full\" or \"explicit\", got \"" + m + "\"");
    }
  }

  if (auto it = doc.find("archimedean"); it != doc.end()) spec.archimedean = parse_arch(*it);
  return spec;
}

InputSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_spec(doc);
}

Torus InputSpec::build(TorusOptions options) const {
  return Torus(TorusSpec(dim, generators, options.group_cap), coweights, options);
}

ordered_json to_json(const InputSpec& spec) {
  ordered_json doc;
  doc["dim"] = spec.dim;
  ordered_json gens = ordered_json::array();
  for (const auto& g : spec.generators) gens.push_back(matrix_json(g));
  doc["generators"] = gens;
  ordered_json cws = ordered_json::array();
  for (const auto& c : spec.coweights) {
    ordered_json v = ordered_json::array();
    for (const auto& x : c.vector) v.push_back(integer_json(x));
    cws.push_back({{"vector", v}, {"multiplicity", c.multiplicity}});
  }
  doc["coweights"] = cws;
  if (spec.gtilde) {
    ordered_json g = ordered_json::array();
    for (const auto& gen : *spec.gtilde) g.push_back({{"g", gen.word}, {"unit", gen.unit}});
    doc["gtilde"] = {{"mode", "explicit"}, {"generators", g}};
  }
  if (spec.archimedean) {
    const ArchBlocks& b = *spec.archimedean;
    ordered_json a;
    a["n1"] = b.n1;
    a["n2"] = b.n2;
    a["n3"] = b.n3;
    a["m1"] = b.m1;
    a["m2"] = b.m2;
    a["m3"] = b.m3;
    a["A1"] = matrix_json(b.A1);
    a["A2"] = matrix_json(b.A2);
    a["A3"] = matrix_json(b.A3);
    a["C"] = matrix_json(b.C);
    a["B1"] = matrix_json(b.B1);
    a["B2"] = matrix_json(b.B2);
    ordered_json b3 = ordered_json::array();
    for (const auto& row : b.B3) {
      ordered_json r = ordered_json::array();
      for (const auto& [x, y] : row) r.push_back({integer_json(x), integer_json(y)});
      b3.push_back(std::move(r));
    }
    a["B3"] = b3;
    doc["archimedean"] = a;
  }
  return doc;
}

std::vector<std::vector<Rational>> parse_rational_rows(const json& doc, std::size_t& cols) {
  const json* rows = &doc;
  if (doc.is_object()) rows = &require(doc, "rows", "matrix");
  if (!rows->is_array() || rows->empty()) throw SchemaError("matrix: expected a nonempty list of rows");
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    const json& r = (*rows)[i];
    const std::string where = "rows[" + std::to_string(i) + "]";
    if (!r.is_array()) throw SchemaError(where + ": expected a list");
    std::vector<Rational> row;
    for (std::size_t j = 0; j < r.size(); ++j)
      row.push_back(parse_rational(r[j], where + "[" + std::to_string(j) + "]"));
    if (!out.empty() && row.size() != out.front().size())
      throw SchemaError(where + ": ragged row");
    out.push_back(std::move(row));
  }
  cols = out.front().size();
  return out;
}

}  // namespace tori
