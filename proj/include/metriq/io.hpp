#pragma once

// File formats: space JSON, graph edge lists, multiset JSON, polynomial
// JSON, comparison reports, CSV sample tables. All rational values travel
// as exact strings.

#include <json.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "metriq/corpus.hpp"
#include "metriq/genpoly.hpp"
#include "metriq/invariants.hpp"
#include "metriq/metric_space.hpp"
#include "metriq/reconstruct.hpp"

namespace metriq {

using Json = nlohmann::json;

namespace io_detail {

/// Incremental basis: declared symbols plus on-demand builtins. sqrt(k)
/// references reduce to the squarefree core so declared symbols stay
/// rationally independent.
class BasisBuilder {
 public:
  void declare(const std::string& name, const std::string& value_spec) {
    if (by_name_.count(name)) raise(Errc::ParseError, "symbol '" + name + "' declared twice");
    if (value_spec.rfind("builtin:", 0) == 0) {
      add(name, builtin_value(value_spec), std::nullopt);
    } else {
      if (significant_digits(value_spec) < 50) {
        raise(Errc::ParseError, "symbol '" + name + "' must declare at least 50 significant digits");
      }
      add(name, Real(value_spec), value_spec);
    }
  }

  /// Contribution of one (name, coefficient) pair to the coordinates of a
  /// scalar; handles the implicit "1" key and sqrt auto-builtins.
  void accumulate(const std::string& name, const Rational& coeff, std::map<std::uint32_t, Rational>& coords) {
    if (name == "1") {
      coords[0] += coeff;
      return;
    }
    if (auto it = by_name_.find(name); it != by_name_.end()) {
      coords[static_cast<std::uint32_t>(it->second + 1)] += coeff;
      return;
    }
    if (name.rfind("sqrt", 0) == 0) {
      long k = parse_long(name.substr(4), name);
      auto [m, f] = square_split(k);
      if (f == 1) {
        coords[0] += coeff * m;
        return;
      }
      std::string core = "sqrt" + std::to_string(f);
      if (!by_name_.count(core)) add(core, sqrt(Real(f)), std::nullopt);
      coords[static_cast<std::uint32_t>(by_name_.at(core) + 1)] += coeff * m;
      return;
    }
    raise(Errc::ParseError, "unknown symbol '" + name + "'; declare it in the basis block");
  }

  BasisPtr finish() const {
    if (symbols_.empty()) return nullptr;
    auto basis = std::make_shared<SymbolBasis>();
    for (const auto& [name, text, value] : symbols_) basis->push(name, text, value);
    return basis;
  }

 private:
  static long parse_long(const std::string& text, const std::string& context) {
    try {
      std::size_t used = 0;
      long v = std::stol(text, &used);
      if (used != text.size() || v < 2) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      raise(Errc::ParseError, "malformed builtin reference '" + context + "'");
    }
  }

  /// k = m^2 * f with f squarefree.
  static std::pair<long, long> square_split(long k) {
    long m = 1, f = 1;
    for (long p = 2; p * p <= k; ++p) {
      int count = 0;
      while (k % p == 0) {
        k /= p;
        ++count;
      }
      for (int i = 0; i + 1 < count; i += 2) m *= p;
      if (count % 2 == 1) f *= p;
    }
    f *= k;
    return {m, f};
  }

  Real builtin_value(const std::string& spec) {
    // builtin:sqrt:<k>  |  builtin:sinratio:<m>:<n>
    std::vector<std::string> parts;
    std::string token;
    for (char c : spec + ":") {
      if (c == ':') {
        parts.push_back(token);
        token.clear();
      } else {
        token.push_back(c);
      }
    }
    if (parts.size() == 3 && parts[1] == "sqrt") {
      long k = parse_long(parts[2], spec);
      auto [m, f] = square_split(k);
      if (f == 1) {
        raise(Errc::ParseError, "builtin sqrt:" + std::to_string(k) + " is the rational " + std::to_string(m) +
                                    "; put it in the rational part instead");
      }
      return sqrt(Real(k));
    }
    if (parts.size() == 4 && parts[1] == "sinratio") {
      long m = parse_long(parts[2], spec);
      long n = parse_long(parts[3], spec);
      if (m >= n) raise(Errc::ParseError, "builtin sinratio needs m < n in '" + spec + "'");
      Real pi = boost::math::constants::pi<Real>();
      return sin(m * pi / n) / sin(pi / n);
    }
    raise(Errc::ParseError, "unknown builtin value '" + spec + "'");
  }

  void add(const std::string& name, const Real& value, std::optional<std::string> text) {
    by_name_[name] = symbols_.size();
    int digits = std::max(precision::digits(), 50) + 5;
    symbols_.emplace_back(name, text ? *text : value.str(digits), value);
  }

  std::vector<std::tuple<std::string, std::string, Real>> symbols_;
  std::map<std::string, std::size_t> by_name_;
};

inline Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  raise(Errc::ParseError, what + " must be a number or a rational string");
}

struct PendingScalar {
  std::map<std::uint32_t, Rational> coords;
};

inline PendingScalar scalar_from_json(const Json& j, BasisBuilder& basis, const std::string& what) {
  PendingScalar out;
  if (j.is_number() || j.is_string()) {
    Rational r = rational_from_json(j, what);
    if (r != 0) out.coords[0] = r;
    return out;
  }
  if (j.is_array()) {
    for (const auto& pair : j) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) {
        raise(Errc::ParseError, what + ": each component must be a [name, rational] pair");
      }
      basis.accumulate(pair[0].get<std::string>(), rational_from_json(pair[1], what), out.coords);
    }
    for (auto it = out.coords.begin(); it != out.coords.end();) {
      it = (it->second == 0) ? out.coords.erase(it) : std::next(it);
    }
    return out;
  }
  raise(Errc::ParseError, what + " must be a number, rational string, or list of [name, rational] pairs");
}

inline ExactScalar settle(const PendingScalar& pending, const BasisPtr& basis) {
  std::vector<ExactScalar::Coord> coords(pending.coords.begin(), pending.coords.end());
  return ExactScalar::with_coords(basis, std::move(coords));
}

inline void parse_basis_block(const Json& root, BasisBuilder& builder) {
  if (!root.contains("basis")) return;
  const Json& block = root.at("basis");
  if (!block.is_array()) raise(Errc::ParseError, "'basis' must be an array of {name, value} objects");
  for (const auto& entry : block) {
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("value")) {
      raise(Errc::ParseError, "each basis entry needs 'name' and 'value'");
    }
    builder.declare(entry.at("name").get<std::string>(), entry.at("value").get<std::string>());
  }
}

}  // namespace io_detail

inline Json basis_to_json(const BasisPtr& basis) {
  Json arr = Json::array();
  if (basis) {
    for (std::size_t i = 0; i < basis->size(); ++i) {
      const auto& s = basis->symbol(i);
      arr.push_back(Json{{"name", s.name}, {"value", s.value_text}});
    }
  }
  return arr;
}

inline Json scalar_to_json(const ExactScalar& v) {
  if (v.is_rational()) return v.rational_value().str();
  Json arr = Json::array();
  for (const auto& [idx, c] : v.coords()) {
    std::string name = (idx == 0) ? "1" : v.basis()->symbol(idx - 1).name;
    arr.push_back(Json::array({name, c.str()}));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Space JSON.

inline Json space_to_json(const FiniteMetricSpace& space) {
  Json out;
  out["basis"] = basis_to_json(space.basis());
  out["n"] = space.n();
  Json rows = Json::array();
  for (int i = 0; i < space.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < space.n(); ++j) row.push_back(scalar_to_json(space.d(i, j)));
    rows.push_back(std::move(row));
  }
  out["dist"] = std::move(rows);
  return out;
}

inline FiniteMetricSpace space_from_json(const Json& root, const SpaceOptions& opts = {}) try {
  if (!root.is_object() || !root.contains("dist")) {
    raise(Errc::ParseError, "space JSON needs a 'dist' matrix");
  }
  io_detail::BasisBuilder builder;
  io_detail::parse_basis_block(root, builder);

  const Json& dist = root.at("dist");
  if (!dist.is_array() || dist.empty()) raise(Errc::ParseError, "'dist' must be a non-empty square matrix");
  const std::size_t n = dist.size();
  if (root.contains("n") && (!root.at("n").is_number_integer() || root.at("n").get<std::size_t>() != n)) {
    raise(Errc::ParseError, "'n' does not match the matrix size");
  }

  std::vector<std::vector<io_detail::PendingScalar>> pending(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dist[i].is_array() || dist[i].size() != n) {
      raise(Errc::ParseError, "'dist' row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      pending[i].push_back(io_detail::scalar_from_json(
          dist[i][j], builder, "dist[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
  }

  BasisPtr basis = builder.finish();
  std::vector<std::vector<ExactScalar>> matrix(n, std::vector<ExactScalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) matrix[i][j] = io_detail::settle(pending[i][j], basis);
  }
  return make_space(matrix, basis, opts);
} catch (const Json::exception& e) {
  raise(Errc::ParseError, std::string("malformed space JSON: ") + e.what());
}

// ---------------------------------------------------------------------------
// Graph edge lists: first line "n m", then m lines "u v".

inline Graph graph_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  Graph g;
  long m = -1;
  if (!(in >> g.n >> m) || m < 0) raise(Errc::ParseError, "edge list must start with 'n m'");
  for (long e = 0; e < m; ++e) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) raise(Errc::ParseError, "edge list ended after " + std::to_string(e) + " of " +
                                                     std::to_string(m) + " edges");
    g.edges.emplace_back(u, v);
  }
  std::string rest;
  if (in >> rest) raise(Errc::ParseError, "trailing content '" + rest + "' after " + std::to_string(m) + " edges");
  validate_graph(g);
  return g;
}

inline std::string graph_to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n << " " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Polynomials.

inline Json genpoly_to_json(const GenPoly& p) {
  Json arr = Json::array();
  for (const auto& t : p.terms()) {
    arr.push_back(Json{{"coeff", t.coeff.str()}, {"exp", scalar_to_json(t.exponent)}});
  }
  return arr;
}

inline Json charpoly_to_json(const FiniteMetricSpace& space) {
  LambdaPoly p = charpoly(space);
  TauVector taus = tau(space);
  Json out;
  out["kind"] = "charpoly";
  out["n"] = space.n();
  out["basis"] = basis_to_json(space.basis());
  Json lam = Json::array();
  for (std::size_t k = 0; k <= p.degree(); ++k) lam.push_back(genpoly_to_json(p.coeff(k)));
  out["p_lambda"] = std::move(lam);
  Json ts = Json::array();
  for (std::size_t k = 1; k <= taus.size(); ++k) ts.push_back(genpoly_to_json(taus[k]));
  out["tau"] = std::move(ts);
  return out;
}

// ---------------------------------------------------------------------------
// Multiset JSON for the reconstruction commands.

struct MultisetInput {
  std::optional<LengthMultiset> s1, s3, s_opp;
  std::optional<GenPoly> tau4;
};

/// Accepts {"S1": [...], "S3": [...], "S_opp": [...]} with optional basis, a
/// charpoly JSON object (uses its tau vector), or {"tau2":, "tau3":, "tau4":}.
inline MultisetInput multisets_from_json(const Json& root) try {
  if (!root.is_object()) raise(Errc::ParseError, "expected a JSON object");
  io_detail::BasisBuilder builder;
  io_detail::parse_basis_block(root, builder);

  using PendingTerm = std::pair<io_detail::PendingScalar, Rational>;
  auto pending_scalars = [&](const Json& arr, const std::string& what) {
    if (!arr.is_array()) raise(Errc::ParseError, what + " must be an array");
    std::vector<io_detail::PendingScalar> pending;
    for (const auto& v : arr) pending.push_back(io_detail::scalar_from_json(v, builder, what));
    return pending;
  };
  auto pending_poly = [&](const Json& arr, const std::string& what) {
    if (!arr.is_array()) raise(Errc::ParseError, what + " must be an array of {coeff, exp} terms");
    std::vector<PendingTerm> pending;
    for (const auto& term : arr) {
      if (!term.is_object() || !term.contains("coeff") || !term.contains("exp")) {
        raise(Errc::ParseError, what + ": each term needs 'coeff' and 'exp'");
      }
      pending.emplace_back(io_detail::scalar_from_json(term.at("exp"), builder, what),
                           io_detail::rational_from_json(term.at("coeff"), what));
    }
    return pending;
  };

  std::vector<io_detail::PendingScalar> p1, p3, popp;
  std::vector<PendingTerm> t2, t3, t4;
  bool has_t2 = false, has_t3 = false, has_t4 = false;
  if (root.contains("S1")) p1 = pending_scalars(root.at("S1"), "S1");
  if (root.contains("S3")) p3 = pending_scalars(root.at("S3"), "S3");
  if (root.contains("S_opp")) popp = pending_scalars(root.at("S_opp"), "S_opp");
  if (root.contains("tau")) {
    const Json& taus = root.at("tau");
    if (!taus.is_array() || taus.size() < 3) {
      raise(Errc::ParseError, "'tau' must list tau_1..tau_n with n >= 3");
    }
    t2 = pending_poly(taus[1], "tau[2]");
    t3 = pending_poly(taus[2], "tau[3]");
    has_t2 = has_t3 = true;
    if (taus.size() >= 4) {
      t4 = pending_poly(taus[3], "tau[4]");
      has_t4 = true;
    }
  }
  if (root.contains("tau2")) {
    t2 = pending_poly(root.at("tau2"), "tau2");
    has_t2 = true;
  }
  if (root.contains("tau3")) {
    t3 = pending_poly(root.at("tau3"), "tau3");
    has_t3 = true;
  }
  if (root.contains("tau4")) {
    t4 = pending_poly(root.at("tau4"), "tau4");
    has_t4 = true;
  }

  // settle everything against the one shared basis
  BasisPtr basis = builder.finish();
  auto settle_list = [&](const std::vector<io_detail::PendingScalar>& pending) {
    std::vector<ExactScalar> values;
    values.reserve(pending.size());
    for (const auto& p : pending) values.push_back(io_detail::settle(p, basis));
    return LengthMultiset(std::move(values));
  };
  auto settle_poly = [&](const std::vector<PendingTerm>& pending) {
    std::vector<GPTerm> terms;
    terms.reserve(pending.size());
    for (const auto& [exp, coeff] : pending) terms.push_back({io_detail::settle(exp, basis), coeff});
    return GenPoly::from_terms(std::move(terms));
  };

  MultisetInput out;
  if (!p1.empty()) out.s1 = settle_list(p1);
  if (!p3.empty()) out.s3 = settle_list(p3);
  if (!popp.empty()) out.s_opp = settle_list(popp);
  if (has_t2) out.s1 = extract_S1(settle_poly(t2));
  if (has_t3) out.s3 = extract_S3(settle_poly(t3));
  if (has_t4) out.tau4 = settle_poly(t4);
  return out;
} catch (const Json::exception& e) {
  raise(Errc::ParseError, std::string("malformed multiset JSON: ") + e.what());
}

// ---------------------------------------------------------------------------
// Comparison reports and CSV tables.

inline Json report_to_json(const ComparisonReport& rep) {
  Json out;
  out["x"] = rep.label_x;
  out["y"] = rep.label_y;
  out["isometric"] = rep.isometric;
  out["charpoly_equal"] = rep.charpoly_equal;
  if (rep.charpoly_first_diff) {
    out["charpoly_differs_at"] = *rep.charpoly_first_diff;
  } else {
    out["charpoly_differs_at"] = nullptr;
  }
  out["tau_equal"] = rep.tau_equal;
  Json mags = Json::array();
  for (const auto& s : rep.magnitude_samples) {
    Json m;
    m["t"] = s.t.str();
    m["x"] = s.x ? Json(s.x->str(30)) : Json(nullptr);
    m["y"] = s.y ? Json(s.y->str(30)) : Json(nullptr);
    m["equal"] = s.equal;
    mags.push_back(std::move(m));
  }
  out["magnitude_samples"] = std::move(mags);
  out["magnitude_equal"] = rep.magnitude_equal;
  if (rep.formal_run) {
    out["formal_cutoff"] = rep.formal_cutoff.str();
    out["formal_equal"] = rep.formal_equal;
  }
  if (!rep.stochastic_samples.empty()) {
    Json st = Json::array();
    for (const auto& s : rep.stochastic_samples) {
      st.push_back(Json{{"q", s.q.str()}, {"alpha_equal", s.alpha_equal}, {"beta_equal", s.beta_equal}});
    }
    out["stochastic_samples"] = std::move(st);
    out["alpha_equal"] = rep.alpha_equal;
    out["beta_equal"] = rep.beta_equal;
  }
  if (rep.adjacency_equal) out["adjacency_equal"] = *rep.adjacency_equal;
  return out;
}

inline std::string report_to_text(const ComparisonReport& rep) {
  std::ostringstream out;
  out << "compare " << rep.label_x << " vs " << rep.label_y << "\n";
  out << "  isometric:        " << (rep.isometric ? "yes" : "no") << "\n";
  out << "  charpoly:         " << (rep.charpoly_equal ? "equal" : "different");
  if (rep.charpoly_first_diff) out << " (first differs at λ^" << *rep.charpoly_first_diff << ")";
  out << "\n";
  out << "  magnitude:        " << (rep.magnitude_equal ? "equal" : "different") << " at t =";
  for (const auto& s : rep.magnitude_samples) out << " " << s.t.str();
  out << "\n";
  if (rep.formal_run) {
    out << "  formal magnitude: " << (rep.formal_equal ? "equal" : "different") << " (cutoff "
        << rep.formal_cutoff.str() << ")\n";
  }
  if (!rep.stochastic_samples.empty()) {
    out << "  stochastic alpha: " << (rep.alpha_equal ? "equal" : "different") << "\n";
    out << "  stochastic beta:  " << (rep.beta_equal ? "equal" : "different") << "\n";
  }
  if (rep.adjacency_equal) {
    out << "  adjacency:        " << (*rep.adjacency_equal ? "equal" : "different") << "\n";
  }
  return out.str();
}

inline std::string magnitude_csv(const FiniteMetricSpace& space, const std::vector<Rational>& ts) {
  std::ostringstream out;
  out << "t,magnitude\n";
  for (const auto& t : ts) {
    out << t.str() << "," << magnitude(space, Real(t)).str(std::max(precision::digits() - 5, 20)) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Input sniffing shared by the CLI and tests.

struct LoadedInput {
  FiniteMetricSpace space;
  std::optional<Graph> graph;
  std::string label;
};

inline bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    raise(Errc::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

inline LoadedInput load_space_or_graph(const std::string& text, const std::string& label,
                                       const SpaceOptions& opts = {}) {
  if (looks_like_json(text)) {
    return {space_from_json(parse_json(text), opts), std::nullopt, label};
  }
  Graph g = graph_from_edge_list(text);
  return {graph_to_metric(g), g, label};
}

}  // namespace metriq
