#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tori/local.hpp"
#include "tori/matroid.hpp"
#include "tori/spec_io.hpp"

namespace tori {

struct StratumReport {
  std::size_t a = 0;
  long b = 0;
  std::vector<SubMultiset> subsets;
  std::size_t orbits = 0;
};

struct ArchReport {
  Rational abscissa;
  Rational b_infinity;
  bool domination = false;
};

struct AnalysisReport {
  bool faithful = false;
  // Everything below is only meaningful when faithful.
  Rational A;
  Integer lambda;
  std::size_t sigma_size = 0;
  std::size_t sigma_tilde0_size = 0;
  std::size_t orbit_count = 0;
  long deg_P = 0;
  std::vector<StratumReport> strata;
  Rational abscissa_ramified;
  Rational abscissa_archimedean;
  std::optional<ArchReport> arch;

  std::string verdict() const { return faithful ? "finite" : "infinite"; }
};

AnalysisReport analyze(const InputSpec& spec, TorusOptions options = {});
nlohmann::ordered_json to_json(const AnalysisReport& r);
std::string to_text(const AnalysisReport& r);

struct LocalReport {
  Integer q;
  Integer p;
  std::size_t f = 1;
  Integer lambda;
  EulerFactorTruncation factor;
  std::vector<std::pair<SubMultiset, Integer>> a_values;  // Frobenius-stable S in Sigma
  std::vector<ConductorTerm> terms;
};

LocalReport analyze_local(const InputSpec& spec, const Integer& q,
                          const std::vector<std::size_t>& frobenius_word, long cap,
                          TorusOptions options = {});
nlohmann::ordered_json to_json(const LocalReport& r);
std::string to_text(const LocalReport& r);

nlohmann::ordered_json to_json(const BiasCertificate& c);
std::string to_text(const BiasCertificate& c);

// Built-in examples with hard-coded expected invariants.
struct GalleryCase {
  std::string example;  // rows with the same example pass or fail together
  std::string variant;
  InputSpec spec;
  std::optional<Rational> A;
  std::optional<Integer> lambda;
  std::optional<std::size_t> sigma_tilde0_size;
  std::optional<long> deg_P;
};

struct GalleryRow {
  std::string example;
  std::string variant;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Torus of (Res_{K/k} G_m)/G_m for a degree-n extension whose Galois group
// is generated by the given permutations of {0..n-1}.
InputSpec norm_one_quotient_spec(std::size_t n,
                                 const std::vector<std::vector<std::size_t>>& permutations);

std::vector<GalleryCase> gallery_cases();
std::vector<GalleryRow> run_gallery(const std::vector<GalleryCase>& cases);
std::string gallery_table(const std::vector<GalleryRow>& rows);
// Number of distinct examples, and how many of them passed in full.
std::pair<std::size_t, std::size_t> gallery_score(const std::vector<GalleryRow>& rows);

std::string format_submultiset(const SubMultiset& s);

}  // namespace tori
