#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tori/arch.hpp"
#include "tori/orbit.hpp"
#include "tori/torus.hpp"

namespace tori {

struct InputSpec {
  std::size_t dim = 0;
  std::vector<IntMatrix> generators;
  std::vector<CoweightEntry> coweights;
  // Set when the document asks for an explicit G~.
  std::optional<std::vector<GTildeGenerator>> gtilde;
  std::optional<ArchBlocks> archimedean;

  Torus build(TorusOptions options = {}) const;
};

// Throws SchemaError for structural problems (missing keys, wrong types,
// ragged rows) and ValidationError for out-of-range values.
InputSpec parse_spec(const nlohmann::json& doc);
InputSpec load_spec(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const InputSpec& spec);

// Rational matrix for the binf command: {"rows": [[...], ...]} or a bare
// list of rows; entries are integers or "p/q" strings.
std::vector<std::vector<Rational>> parse_rational_rows(const nlohmann::json& doc,
                                                       std::size_t& cols);

Integer parse_integer(const nlohmann::json& v, const std::string& where);
Rational parse_rational(const nlohmann::json& v, const std::string& where);
nlohmann::ordered_json integer_json(const Integer& v);

}  // namespace tori
