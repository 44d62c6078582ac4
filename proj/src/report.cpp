#include "tori/report.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "tori/arch.hpp"
#include "tori/errors.hpp"
#include "tori/orbit.hpp"

namespace tori {

using nlohmann::ordered_json;

namespace {

ordered_json counts_json(const SubMultiset& s) {
  ordered_json v = ordered_json::array();
  for (long c : s.counts) v.push_back(c);
  return v;
}

}  // namespace

std::string format_submultiset(const SubMultiset& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.counts[i]);
  }
  return out + "]";
}

AnalysisReport analyze(const InputSpec& spec, TorusOptions options) {
  const Torus torus = spec.build(options);
  AnalysisReport r;
  r.faithful = torus.is_faithful();
  if (!r.faithful) return r;

  r.A = torus.invariant_A().value;
  r.lambda = torus.lambda_invariant();
  if (!r.lambda.fits_slong_p()) throw EnumerationCapError("lambda too large");
  r.sigma_size = torus.sigma_set().size();

  FiberedSet fibered(torus, build_gtilde(torus, r.lambda.get_si(), spec.gtilde));
  const OrbitSummary orbits = fibered.orbits();
  r.sigma_tilde0_size = fibered.sigma_tilde0().size();
  r.orbit_count = orbits.orbit_count;
  r.deg_P = orbits.deg_P;

  for (auto& [key, subsets] : torus.strata()) {
    StratumReport s{key.a, key.b, subsets, 0};
    if (auto it = orbits.orbits_per_stratum.find(key); it != orbits.orbits_per_stratum.end())
      s.orbits = it->second;
    r.strata.push_back(std::move(s));
  }
  r.abscissa_ramified = torus.abscissa(AbscissaVariant::kRamified);
  r.abscissa_archimedean = torus.abscissa(AbscissaVariant::kArchimedean);

  if (spec.archimedean) {
    const ArchMatrices mats = assemble(*spec.archimedean);
    const Domination d = check_domination(mats);
    r.arch = ArchReport{d.lhs, d.b_infinity, d.holds};
  }
  return r;
}

ordered_json to_json(const AnalysisReport& r) {
  ordered_json j;
  j["faithful"] = r.faithful;
  j["verdict"] = r.verdict();
  if (!r.faithful) return j;
  j["A"] = to_string(r.A);
  j["lambda"] = integer_json(r.lambda);
  j["sigma_size"] = r.sigma_size;
  j["sigma_tilde0_size"] = r.sigma_tilde0_size;
  j["orbit_count"] = r.orbit_count;
  j["deg_P"] = r.deg_P;
  ordered_json strata = ordered_json::array();
  for (const auto& s : r.strata) {
    ordered_json subsets = ordered_json::array();
    for (const auto& x : s.subsets) subsets.push_back(counts_json(x));
    strata.push_back({{"a", s.a}, {"b", s.b}, {"subsets", subsets}, {"orbits", s.orbits}});
  }
  j["strata"] = strata;
  j["abscissae"] = {{"ramified", to_string(r.abscissa_ramified)},
                    {"archimedean", to_string(r.abscissa_archimedean)}};
  if (r.arch)
    j["archimedean"] = {{"abscissa", to_string(r.arch->abscissa)},
                        {"b_infinity_M_prime", to_string(r.arch->b_infinity)},
                        {"domination", r.arch->domination}};
  return j;
}

std::string to_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "faithful           " << (r.faithful ? "yes" : "no") << "\n";
  out << "verdict            " << r.verdict() << "\n";
  if (!r.faithful) return out.str();
  out << "A                  " << to_string(r.A) << "\n";
  out << "lambda             " << r.lambda << "\n";
  out << "|Sigma|            " << r.sigma_size << "\n";
  out << "|Sigma~_0|         " << r.sigma_tilde0_size << "\n";
  out << "orbits             " << r.orbit_count << "\n";
  out << "deg P              " << r.deg_P << "\n";
  out << "abscissa ramified  " << to_string(r.abscissa_ramified) << "\n";
  out << "abscissa arch.     " << to_string(r.abscissa_archimedean) << "\n";
  if (r.arch) {
    out << "arch abscissa      " << to_string(r.arch->abscissa) << "\n";
    out << "B_inf(M')          " << to_string(r.arch->b_infinity) << "\n";
    out << "domination         " << (r.arch->domination ? "holds" : "FAILS") << "\n";
  }
  out << "\nstrata (a = dim D(S), b = |S|)\n";
  out << "  a    b  orbits  subsets\n";
  for (const auto& s : r.strata) {
    out << std::setw(3) << s.a << std::setw(5) << s.b << std::setw(8) << s.orbits << "  ";
    for (std::size_t i = 0; i < s.subsets.size(); ++i)
      out << (i ? " " : "") << format_submultiset(s.subsets[i]);
    out << "\n";
  }
  return out.str();
}

LocalReport analyze_local(const InputSpec& spec, const Integer& q,
                          const std::vector<std::size_t>& frobenius_word, long cap,
                          TorusOptions options) {
  const Torus torus = spec.build(options);
  const std::size_t fr = torus.spec().element_of_word(frobenius_word);
  const LocalFactors lf(torus, make_local_data(torus.spec(), q, fr));
  LocalReport r;
  r.q = lf.local().q;
  r.p = lf.local().p;
  r.f = lf.local().f;
  r.lambda = lf.lambda();
  r.terms = lf.conductor_terms(cap);
  r.factor.cap = cap;
  r.factor.coefficients.assign(static_cast<std::size_t>(cap) + 1, 0);
  for (const auto& t : r.terms) r.factor.coefficients[static_cast<std::size_t>(t.weight)] += t.pi_eq;
  for (const auto& s : torus.sigma_set())
    if (torus.act(fr, s) == s) r.a_values.emplace_back(s, lf.a_count(s));
  return r;
}

ordered_json to_json(const LocalReport& r) {
  ordered_json j;
  j["q"] = integer_json(r.q);
  j["p"] = integer_json(r.p);
  j["frobenius_order"] = r.f;
  j["lambda"] = integer_json(r.lambda);
  j["cap"] = r.factor.cap;
  ordered_json coeffs = ordered_json::array();
  for (std::size_t e = 0; e < r.factor.coefficients.size(); ++e)
    coeffs.push_back({{"e", e}, {"coefficient", integer_json(r.factor.coefficients[e])}});
  j["coefficients"] = coeffs;
  ordered_json a = ordered_json::array();
  for (const auto& [s, v] : r.a_values) a.push_back({{"S", counts_json(s)}, {"a", integer_json(v)}});
  j["a"] = a;
  ordered_json terms = ordered_json::array();
  for (const auto& t : r.terms) {
    ordered_json c = ordered_json::array();
    for (long x : t.c) c.push_back(x);
    terms.push_back({{"c", c}, {"weight", t.weight}, {"pi_eq", integer_json(t.pi_eq)}});
  }
  j["pi_eq"] = terms;
  return j;
}

std::string to_text(const LocalReport& r) {
  std::ostringstream out;
  out << "q = " << r.q << " (p = " << r.p << "), Frobenius order " << r.f << ", lambda = "
      << r.lambda << "\n\n";
  out << "   e  coefficient\n";
  for (std::size_t e = 0; e < r.factor.coefficients.size(); ++e)
    out << std::setw(4) << e << "  " << r.factor.coefficients[e] << "\n";
  out << "\nFrobenius-stable S in Sigma\n";
  if (r.a_values.empty()) out << "  (none)\n";
  for (const auto& [s, v] : r.a_values) out << "  a(" << format_submultiset(s) << ") = " << v << "\n";
  out << "\nnonzero Pi_=(c)\n";
  for (const auto& t : r.terms) {
    SubMultiset c{t.c};
    out << "  c = " << format_submultiset(c) << "  |c| = " << t.weight << "  Pi_= = " << t.pi_eq
        << "\n";
  }
  return out.str();
}

ordered_json to_json(const BiasCertificate& c) {
  ordered_json subset = ordered_json::array();
  for (auto i : c.subset) subset.push_back(i + 1);
  return {{"value", to_string(c.ratio)},
          {"certificate", {{"subset", subset}, {"alpha", c.alpha}, {"beta", c.beta}}}};
}

std::string to_text(const BiasCertificate& c) {
  std::ostringstream out;
  out << "B_inf = " << to_string(c.ratio) << "\nwitness A = {";
  for (std::size_t i = 0; i < c.subset.size(); ++i) out << (i ? "," : "") << c.subset[i] + 1;
  out << "}  alpha = " << c.alpha << "  beta = " << c.beta << "\n";
  return out.str();
}

InputSpec norm_one_quotient_spec(std::size_t n,
                                 const std::vector<std::vector<std::size_t>>& permutations) {
  if (n < 2) throw ValidationError("degree must be at least 2");
  const std::size_t d = n - 1;
  InputSpec spec;
  spec.dim = d;
  // Coweight i is e_i for i < n-1 and -(e_0 + ... + e_{n-2}) for i = n-1.
  auto coweight = [&](std::size_t i) {
    IntVector v(d, 0);
    if (i < d)
      v[i] = 1;
    else
      for (auto& x : v) x = -1;
    return v;
  };
  for (const auto& perm : permutations) {
    if (perm.size() != n) throw ValidationError("permutation has the wrong length");
    IntMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const IntVector img = coweight(perm[i]);
      for (std::size_t r = 0; r < d; ++r) g(r, i) = img[r];
    }
    spec.generators.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < n; ++i) spec.coweights.push_back({coweight(i), 1});
  return spec;
}

std::vector<GalleryCase> gallery_cases() {
  std::vector<GalleryCase> out;
  auto gl1 = [](std::vector<std::pair<long, long>> cw) {
    InputSpec s;
    s.dim = 1;
    for (auto [v, m] : cw) s.coweights.push_back({IntVector{v}, m});
    return s;
  };

  out.push_back({"Example 1", "GL1, r = z", gl1({{1, 1}}), Rational(2), Integer(1),
                 std::size_t{1}, 0L});
  out.push_back({"Example 2", "GL1, r = z^1001", gl1({{1, 1001}}), Rational(2, 1001), Integer(1),
                 std::nullopt, 0L});
  out.push_back({"Example 3", "GL1, r = z^2 + z^3", gl1({{2, 1}, {3, 1}}), Rational(1),
                 Integer(6), std::size_t{4}, 2L});

  InputSpec product;
  product.dim = 2;
  product.coweights = {{IntVector{1, 0}, 1}, {IntVector{0, 1}, 1}};
  out.push_back({"Example 4", "GL1 x GL1, r = z1 + z2", product, Rational(2), Integer(1),
                 std::size_t{2}, 1L});

  out.push_back({"Example 5", "G = S3", norm_one_quotient_spec(3, {{1, 0, 2}, {1, 2, 0}}),
                 Rational(1), Integer(1), std::nullopt, 1L});
  out.push_back({"Example 5", "G = S4", norm_one_quotient_spec(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}),
                 Rational(1), Integer(1), std::nullopt, 2L});
  out.push_back({"Example 5", "G = Z/4", norm_one_quotient_spec(4, {{1, 2, 3, 0}}), Rational(1),
                 Integer(1), std::nullopt, 3L});
  return out;
}

std::vector<GalleryRow> run_gallery(const std::vector<GalleryCase>& cases) {
  std::vector<GalleryRow> rows;
  for (const auto& c : cases) {
    GalleryRow row{c.example, c.variant, true, "", 0};
    const auto start = std::chrono::steady_clock::now();
    try {
      const AnalysisReport r = analyze(c.spec);
      std::vector<std::string> notes;
      auto check = [&](bool ok, const std::string& what) {
        if (!ok) {
          row.pass = false;
          notes.push_back(what);
        }
      };
      check(r.faithful, "not faithful");
      if (c.A) check(r.A == *c.A, "A = " + to_string(r.A) + ", expected " + to_string(*c.A));
      if (c.lambda)
        check(r.lambda == *c.lambda,
              "lambda = " + r.lambda.get_str() + ", expected " + c.lambda->get_str());
      if (c.sigma_tilde0_size)
        check(r.sigma_tilde0_size == *c.sigma_tilde0_size,
              "|Sigma~_0| = " + std::to_string(r.sigma_tilde0_size) + ", expected " +
                  std::to_string(*c.sigma_tilde0_size));
      if (c.deg_P)
        check(r.deg_P == *c.deg_P, "deg P = " + std::to_string(r.deg_P) + ", expected " +
                                       std::to_string(*c.deg_P));
      if (row.pass) {
        row.detail = "A = " + to_string(r.A) + ", lambda = " + r.lambda.get_str() +
                     ", |Sigma~_0| = " + std::to_string(r.sigma_tilde0_size) +
                     ", deg P = " + std::to_string(r.deg_P);
      } else {
        for (std::size_t i = 0; i < notes.size(); ++i) row.detail += (i ? "; " : "") + notes[i];
      }
    } catch (const std::exception& e) {
      row.pass = false;
      row.detail = std::string("error: ") + e.what();
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string gallery_table(const std::vector<GalleryRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(11) << "example" << std::setw(24) << "variant" << std::setw(8)
      << "result" << std::setw(10) << "time" << "details\n";
  for (const auto& r : rows) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << r.seconds << "s";
    out << std::left << std::setw(11) << r.example << std::setw(24) << r.variant << std::setw(8)
        << (r.pass ? "pass" : "FAIL") << std::setw(10) << t.str() << r.detail << "\n";
  }
  const auto [total, passed] = gallery_score(rows);
  out << passed << "/" << total << " examples pass\n";
  return out.str();
}

std::pair<std::size_t, std::size_t> gallery_score(const std::vector<GalleryRow>& rows) {
  std::map<std::string, bool> ok;
  for (const auto& r : rows) {
    auto [it, inserted] = ok.emplace(r.example, r.pass);
    if (!inserted) it->second = it->second && r.pass;
  }
  std::size_t passed = 0;
  for (const auto& [name, pass] : ok) passed += pass;
  return {ok.size(), passed};
}

}  // namespace tori
