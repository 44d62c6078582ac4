#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tori/errors.hpp"
#include "tori/matroid.hpp"
#include "tori/report.hpp"
#include "tori/spec_io.hpp"

namespace tori {

namespace {

std::vector<std::size_t> parse_word(const std::string& text) {
  std::vector<std::size_t> word;
  if (text.empty()) return word;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      word.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw SchemaError("--frobenius: expected comma-separated generator indices, got \"" +
                        text + "\"");
    }
  }
  return word;
}

void emit(std::ostream& out, const std::string& format, const nlohmann::ordered_json& j,
          const std::string& text) {
  if (format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants of algebraic tori: conductor exponent, log degree, local factors, B_inf"};
  app.require_subcommand(0, 1);

  std::string input, format = "text", frobenius, q_text;
  long cap = 2;
  std::size_t distinct_cap = TorusOptions{}.distinct_cap;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Invariants and orbit count for a torus spec");
  analyze_cmd->add_option("--input", input, "Spec JSON file")->required();
  analyze_cmd->add_option("--distinct-cap", distinct_cap, "Limit on distinct coweights");
  add_format(analyze_cmd);

  CLI::App* local_cmd = app.add_subcommand("local", "Unramified local factor coefficients");
  local_cmd->add_option("--input", input, "Spec JSON file")->required();
  local_cmd->add_option("--q", q_text, "Residue field size")->required();
  local_cmd->add_option("--frobenius", frobenius,
                        "Frobenius as comma-separated generator indices (default: identity)");
  local_cmd->add_option("--cap", cap, "Largest exponent e")->check(CLI::NonNegativeNumber);
  local_cmd->add_option("--distinct-cap", distinct_cap, "Limit on distinct coweights");
  add_format(local_cmd);

  CLI::App* binf_cmd = app.add_subcommand("binf", "B_inf of a rational matrix with a bias witness");
  binf_cmd->add_option("matrix,--input", input, "Matrix JSON file")->required();
  add_format(binf_cmd);

  CLI::App* examples_cmd = app.add_subcommand("examples", "Run the built-in example gallery");
  add_format(examples_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (app.get_subcommands().empty()) {
    out << app.help();
    return 0;
  }

  TorusOptions options;
  options.distinct_cap = distinct_cap;

  try {
    if (analyze_cmd->parsed()) {
      const AnalysisReport r = analyze(load_spec(input), options);
      emit(out, format, to_json(r), to_text(r));
    } else if (local_cmd->parsed()) {
      Integer q;
      if (q_text.empty() || q.set_str(q_text, 10) != 0)
        throw SchemaError("--q: expected an integer, got \"" + q_text + "\"");
      const LocalReport r = analyze_local(load_spec(input), q, parse_word(frobenius), cap, options);
      emit(out, format, to_json(r), to_text(r));
    } else if (binf_cmd->parsed()) {
      std::ifstream in(input);
      if (!in) throw SchemaError("cannot read " + input);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(input + ": invalid JSON: " + e.what());
      }
      std::size_t cols = 0;
      auto rows = parse_rational_rows(doc, cols);
      const LinearMatroid m(std::move(rows), cols);
      const BiasCertificate c = b_infinity(m);
      emit(out, format, to_json(c), to_text(c));
    } else if (examples_cmd->parsed()) {
      const auto rows = run_gallery(gallery_cases());
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : rows)
        j.push_back({{"example", r.example}, {"variant", r.variant}, {"pass", r.pass},
                     {"detail", r.detail}});
      emit(out, format, j, gallery_table(rows));
      const auto [total, passed] = gallery_score(rows);
      return passed == total ? 0 : 3;
    }
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const EnumerationCapError& e) {
    err << "enumeration limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace tori
