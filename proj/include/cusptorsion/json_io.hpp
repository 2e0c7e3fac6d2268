#ifndef CUSPTORSION_JSON_IO_HPP
#define CUSPTORSION_JSON_IO_HPP

#include <json.hpp>

#include "cusptorsion/assembler.hpp"
#include "cusptorsion/nilcoh.hpp"
#include "cusptorsion/torsion.hpp"

namespace cusptorsion {

using json = nlohmann::json;

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ValidationError("expected a rational as integer or \"p/q\" string");
}

inline json rat_to_json(const Rat& r) { return format_rat(r); }

inline std::vector<Rat> rat_vector_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals");
  std::vector<Rat> v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

// --- based cochain complexes -------------------------------------------------

inline RatMat matrix_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a matrix as an array of rows");
  std::vector<RatVec> rows;
  for (const auto& row : j) rows.push_back(rat_vector_from_json(row));
  return RatMat::from_rows(rows);
}

inline json matrix_to_json(const RatMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// {"degrees":[q0,q1], "d":[matrix,...], "H_bases":{"q":[[...],...]}}; entries
/// are exact rationals as integers or "p/q" strings. A single-degree complex
/// (empty "d") carries its dimension in an explicit "dims" array.
inline BasedCochainComplex complex_from_json(const json& j) {
  if (!j.contains("degrees") || !j["degrees"].is_array() || j["degrees"].size() != 2)
    throw ValidationError("complex JSON needs \"degrees\": [q0, q1]");
  BasedCochainComplex c;
  c.degree_min = j["degrees"][0].get<int>();
  int degree_max = j["degrees"][1].get<int>();
  if (degree_max < c.degree_min) throw ValidationError("degree range is empty");
  const int count = degree_max - c.degree_min + 1;

  const json& d = j.contains("d") ? j["d"] : json::array();
  if (static_cast<int>(d.size()) != count - 1)
    throw ValidationError("complex JSON needs one differential per adjacent degree pair");
  for (const auto& mj : d) c.differentials.push_back(matrix_from_json(mj));

  if (count == 1) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 1)
      throw ValidationError("single-degree complex needs an explicit \"dims\" array");
    c.dims = {j["dims"][0].get<int>()};
  } else {
    c.dims.push_back(c.differentials.front().cols());
    for (const auto& m : c.differentials) c.dims.push_back(m.rows());
  }

  if (j.contains("H_bases")) {
    for (const auto& [key, vecs] : j["H_bases"].items()) {
      int q = std::stoi(key);
      std::vector<RatVec> basis;
      for (const auto& v : vecs) basis.push_back(rat_vector_from_json(v));
      c.cohomology_bases[q] = std::move(basis);
    }
  }
  c.validate();
  return c;
}

inline json complex_to_json(const BasedCochainComplex& c) {
  json j;
  j["degrees"] = {c.degree_min, c.degree_max()};
  j["d"] = json::array();
  for (const auto& m : c.differentials) j["d"].push_back(matrix_to_json(m));
  if (c.degree_count() == 1) j["dims"] = {c.dims[0]};
  if (!c.cohomology_bases.empty()) {
    json h = json::object();
    for (const auto& [q, basis] : c.cohomology_bases) {
      json vecs = json::array();
      for (const auto& v : basis) {
        json vec = json::array();
        for (const auto& x : v) vec.push_back(rat_to_json(x));
        vecs.push_back(vec);
      }
      h[std::to_string(q)] = vecs;
    }
    j["H_bases"] = h;
  }
  return j;
}

// --- problem specifications --------------------------------------------------

/// CLI-facing problem description; parses into the validated domain types.
struct ProblemSpec {
  int d = 3;
  Flavor flavor = Flavor::SO0;
  std::vector<Rat> highest_weight;
  int kappa = 1;
  std::vector<double> torus_volumes = {1.0};
  std::vector<double> truncation_Ys;

  GroupDatum group() const { return GroupDatum::make(d, flavor); }

  HighestWeight weight() const {
    GroupDatum g = group();
    if (static_cast<int>(highest_weight.size()) != g.n + 1)
      throw ValidationError("highest weight needs n+1 = " + std::to_string(g.n + 1) +
                            " components for d = " + std::to_string(d));
    return make_weight(highest_weight, WeightContext::G, flavor);
  }

  CuspGeometry geometry() const {
    CuspGeometry geom{kappa, torus_volumes, truncation_Ys};
    geom.validate();
    return geom;
  }
};

inline ProblemSpec problem_from_json(const json& j) {
  ProblemSpec s;
  if (j.contains("d")) s.d = j["d"].get<int>();
  if (j.contains("flavor")) s.flavor = parse_flavor(j["flavor"].get<std::string>());
  if (j.contains("highest_weight")) s.highest_weight = rat_vector_from_json(j["highest_weight"]);
  if (j.contains("cusps")) {
    const json& c = j["cusps"];
    if (c.contains("kappa")) s.kappa = c["kappa"].get<int>();
    if (c.contains("torus_volumes")) s.torus_volumes = c["torus_volumes"].get<std::vector<double>>();
  }
  if (j.contains("truncation_Ys")) s.truncation_Ys = j["truncation_Ys"].get<std::vector<double>>();
  return s;
}

inline json problem_to_json(const ProblemSpec& s) {
  json j;
  j["d"] = s.d;
  j["flavor"] = flavor_name(s.flavor);
  j["highest_weight"] = json::array();
  for (const auto& k : s.highest_weight) j["highest_weight"].push_back(rat_to_json(k));
  j["cusps"] = {{"kappa", s.kappa}, {"torus_volumes", s.torus_volumes}};
  j["truncation_Ys"] = s.truncation_Ys;
  return j;
}

// --- reports ------------------------------------------------------------------

inline json weight_to_json(const HighestWeight& w) {
  json comps = json::array();
  for (const auto& k : w.components) comps.push_back(rat_to_json(k));
  return comps;
}

inline json profile_to_json(const BoundaryProfile& p) {
  json j;
  j["n"] = p.n;
  j["kappa"] = p.kappa;
  j["strongly_acyclic"] = p.strongly_acyclic;
  json degrees = json::array();
  for (int k = 0; k <= 2 * p.n; ++k) {
    json row;
    row["k"] = k;
    row["dim"] = p.dims[k].str();
    if (k == p.n) {
      row["lambda_plus"] = rat_to_json(p.lambda_n_plus);
      row["lambda_minus"] = rat_to_json(p.lambda_n_minus);
      row["sigma_plus"] = weight_to_json(p.sigma_n_plus);
      row["sigma_minus"] = weight_to_json(p.sigma_n_minus);
    } else {
      row["lambda"] = rat_to_json(p.lambdas[k]);
      row["sigma"] = weight_to_json(p.sigmas[k]);
    }
    degrees.push_back(row);
  }
  j["degrees"] = degrees;
  return j;
}

inline json theorem_report_to_json(const TheoremReport& r) {
  json j;
  j["d"] = r.d;
  j["n"] = r.n;
  j["flavor"] = flavor_name(r.flavor);
  j["highest_weight"] = weight_to_json(r.weight);
  j["strongly_acyclic"] = r.strongly_acyclic;
  if (!r.strongly_acyclic) {
    j["refusal"] = "weight is theta-fixed (last component zero); the identity's "
                   "hypotheses fail";
    j["theta_twist"] = weight_to_json(r.theta_twisted);
    return j;
  }
  j["rk_E"] = r.rk_E.str();
  j["c_n"] = r.c_n;
  j["anomaly_term"] = r.anomaly;
  j["cohomology_term"] = r.cohomology_term;
  j["profile"] = profile_to_json(r.profile);
  json checks = json::array();
  for (const auto& yc : r.y_checks.checks) {
    json c;
    c["Y"] = yc.Y;
    c["S"] = yc.combined;
    json terms = json::array();
    for (const auto& t : yc.terms)
      terms.push_back({{"k", t.k}, {"log_det_D", t.log_det_D}, {"log_det_E", t.log_det_E}});
    c["terms"] = terms;
    checks.push_back(c);
  }
  j["y_independence"] = {{"target", r.y_checks.correction}, {"checks", checks}};
  json sym = json::array();
  for (const auto& s : r.symbolic)
    sym.push_back({{"name", s.name}, {"coefficient", s.coefficient}});
  j["symbolic"] = sym;
  j["provenance"] = {
      {"anomaly_term", "c(n) rk(E) vol(boundary), c(n) = (-1)^n (2n-1)!/(2^(2n+1) pi^n n!)"},
      {"cohomology_term", "-(1/4) sum_k (-1)^k log|lambda_k| dim H^k(boundary)"},
      {"log_det_D", "dim (or dim/2 at k=n) * (log sqrt(2|lambda|) - lambda log Y)"},
      {"log_det_E", "lambda dim log Y (dim/2 at k=n, with lambda_n^-)"},
      {"lambda_k", "lambda_k = Lambda_{k+1} + n - k, mirrored to -lambda_{2n-k} above n"},
      {"dims", "dim H^k = kappa dim(sigma_k), doubled at k = n; Weyl dimension formula"}};
  return j;
}

inline json cohomology_report_to_json(const CohomologyReport& r) {
  json degrees = json::array();
  for (size_t k = 0; k < r.dims.size(); ++k) {
    json row;
    row["k"] = k;
    row["dim"] = r.dims[k].str();
    json w = json::array();
    for (const auto& piece : r.weights[k])
      w.push_back({{"a_weight", rat_to_json(piece.a_weight)},
                   {"multiplicity", piece.multiplicity.str()}});
    row["a_weights"] = w;
    degrees.push_back(row);
  }
  return degrees;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_JSON_IO_HPP
