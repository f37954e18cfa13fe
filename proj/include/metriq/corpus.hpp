#pragma once

// Constructors for the example families (paths, cycles, wedge sums, Whitney
// twists, regular polygons and their isomers, the fibration pair, circle
// subsets) plus the invariant-comparison harness.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriq/genericity.hpp"
#include "metriq/invariants.hpp"
#include "metriq/isometry.hpp"
#include "metriq/metric_space.hpp"

namespace metriq {

// ---------------------------------------------------------------------------
// Graph builders.

inline Graph make_path_graph(int n) {
  if (n < 1) raise(Errc::DomainError, "path graph needs n >= 1");
  Graph g{n, {}};
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

inline Graph make_cycle_graph(int n) {
  if (n < 3) raise(Errc::DomainError, "cycle graph needs n >= 3");
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

inline Graph make_complete_graph(int n) {
  if (n < 1) raise(Errc::DomainError, "complete graph needs n >= 1");
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

/// Star K_{1,k}: vertex 0 is the hub.
inline Graph make_star_graph(int k) {
  if (k < 1) raise(Errc::DomainError, "star graph needs k >= 1 leaves");
  Graph g{k + 1, {}};
  for (int i = 1; i <= k; ++i) g.edges.emplace_back(0, i);
  return g;
}

/// Triangular prism C3 x K2: vertices 0-2 top triangle, 3-5 bottom.
inline Graph make_prism_graph() {
  return Graph{6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}}};
}

/// Complete bipartite K_{3,3}: parts {0,1,2} and {3,4,5}.
inline Graph make_k33_graph() {
  Graph g{6, {}};
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

inline FiniteMetricSpace path_graph(int n) { return graph_to_metric(make_path_graph(n)); }
inline FiniteMetricSpace cycle_graph(int n) { return graph_to_metric(make_cycle_graph(n)); }
inline FiniteMetricSpace complete_graph(int n) { return graph_to_metric(make_complete_graph(n)); }
inline FiniteMetricSpace star_graph(int k) { return graph_to_metric(make_star_graph(k)); }

// ---------------------------------------------------------------------------
// Gluing constructions.

/// Wedge sum: identify point x0 of X with point y0 of Y; cross distances go
/// through the basepoint.
inline FiniteMetricSpace wedge_sum(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int x0, int y0) {
  if (x0 < 0 || x0 >= x.n() || y0 < 0 || y0 >= y.n()) {
    raise(Errc::IndexOutOfRange, "wedge basepoint out of range");
  }
  const int nx = x.n(), ny = y.n();
  const int n = nx + ny - 1;

  // points: all of X, then Y minus its basepoint
  std::vector<int> y_ids(ny, -1);
  y_ids[y0] = x0;
  int next = nx;
  for (int j = 0; j < ny; ++j) {
    if (j != y0) y_ids[j] = next++;
  }

  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nx; ++j) dist[i][j] = x.d(i, j);
  }
  for (int i = 0; i < ny; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (y_ids[i] >= nx || y_ids[j] >= nx) dist[y_ids[i]][y_ids[j]] = y.d(i, j);
    }
  }
  for (int i = 0; i < nx; ++i) {
    if (i == x0) continue;
    for (int j = 0; j < ny; ++j) {
      if (j == y0) continue;
      ExactScalar through = x.d(i, x0) + y.d(y0, j);
      dist[i][y_ids[j]] = through;
      dist[y_ids[j]][i] = through;
    }
  }
  return make_space(dist);
}

/// The two gluings of G and H along marked vertex pairs; a double edge
/// created by the identification is removed. Vertex layout of each result:
/// all of G, then H minus its two marked vertices.
inline std::pair<Graph, Graph> whitney_twist(const Graph& g, const Graph& h, int g_plus, int g_minus, int h_plus,
                                             int h_minus) {
  validate_graph(g);
  validate_graph(h);
  if (g_plus == g_minus || h_plus == h_minus) {
    raise(Errc::InvalidGluing, "gluing vertices must be distinct in each part");
  }
  if (g_plus < 0 || g_plus >= g.n || g_minus < 0 || g_minus >= g.n || h_plus < 0 || h_plus >= h.n || h_minus < 0 ||
      h_minus >= h.n) {
    raise(Errc::InvalidGluing, "gluing vertex out of range");
  }

  auto glue = [&](int h_to_gplus, int h_to_gminus) {
    std::vector<int> h_ids(h.n, -1);
    h_ids[h_to_gplus] = g_plus;
    h_ids[h_to_gminus] = g_minus;
    int next = g.n;
    for (int v = 0; v < h.n; ++v) {
      if (h_ids[v] < 0) h_ids[v] = next++;
    }
    Graph out{g.n + h.n - 2, g.edges};
    std::set<std::pair<int, int>> present;
    for (auto [u, v] : g.edges) {
      auto key = std::minmax(u, v);
      present.insert({key.first, key.second});
    }
    for (auto [u, v] : h.edges) {
      auto key = std::minmax(h_ids[u], h_ids[v]);
      if (present.insert({key.first, key.second}).second) {
        out.edges.emplace_back(key.first, key.second);
      }
    }
    return out;
  };
  return {glue(h_plus, h_minus), glue(h_minus, h_plus)};
}

/// A small adjacent-gluing Whitney-twist pair with equal magnitudes but
/// different shortest-path metrics: a triangle with a pendant vertex glued
/// to a path of four, in both orientations.
inline std::pair<Graph, Graph> whitney_adjacent_pair() {
  Graph g{4, {{0, 1}, {1, 2}, {0, 2}, {1, 3}}};  // triangle + pendant on 1
  Graph h{4, {{0, 1}, {1, 2}, {2, 3}}};          // path
  return whitney_twist(g, h, 0, 1, 0, 1);
}

// ---------------------------------------------------------------------------
// Regular polygons and isomers.

namespace detail {

/// Coefficients of the cyclotomic polynomial Phi_m, exact integers.
inline std::vector<Integer> cyclotomic(int m) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
  std::vector<std::vector<Integer>> memo(m + 1);
  auto divide_exact = [](std::vector<Integer> num, const std::vector<Integer>& den) {
    std::vector<Integer> q(num.size() - den.size() + 1, Integer(0));
    for (std::size_t shift = q.size(); shift-- > 0;) {
      Integer lead = num[den.size() - 1 + shift];
      if (lead == 0) continue;
      q[shift] = lead / den.back();
      for (std::size_t i = 0; i < den.size(); ++i) {
        num[i + shift] -= q[shift] * den[i];
      }
    }
    return q;
  };
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    std::vector<Integer> poly(d + 1, Integer(0));
    poly[0] = -1;
    poly[d] = 1;  // x^d - 1
    for (int e = 1; e < d; ++e) {
      if (d % e == 0) poly = divide_exact(std::move(poly), memo[e]);
    }
    memo[d] = std::move(poly);
  }
  return memo[m];
}

/// Minimal polynomial of y = 2 cos(pi/n): the degree-phi(2n)/2 integer
/// polynomial Psi with Phi_{2n}(x) = x^D Psi(x + 1/x).
inline std::vector<Integer> minpoly_2cos_pi_over(int n) {
  std::vector<Integer> phi = cyclotomic(2 * n);
  const int deg = static_cast<int>(phi.size()) - 1;
  const int d = deg / 2;
  std::vector<Integer> rem = phi;
  std::vector<Integer> psi(d + 1, Integer(0));
  for (int k = d; k >= 0; --k) {
    psi[k] = rem[d + k];
    if (psi[k] == 0) continue;
    for (int i = 0; i <= k; ++i) {
      rem[d - k + 2 * i] -= psi[k] * binomial(k, i);
    }
  }
  for (const auto& c : rem) {
    if (c != 0) raise(Errc::InternalError, "cyclotomic halving left a remainder");
  }
  return psi;
}

struct ChordAlgebra {
  BasisPtr basis;                        // powers y^1..y^{D-1}, empty when D = 1
  std::vector<ExactScalar> chords;       // chords[m-1] = delta_m, m = 1..floor(n/2)
};

/// Exact chord-length ratios delta_m = sin(m pi / n) / sin(pi / n) of the
/// regular n-gon, expressed over the power basis of y = 2 cos(pi/n) reduced
/// by its minimal polynomial. Rational relations between chord lengths
/// (such as delta_3 = 2 at n = 6) merge exactly by construction.
inline ChordAlgebra chord_algebra(int n) {
  if (n < 3) raise(Errc::DomainError, "regular polygon needs n >= 3");
  std::vector<Integer> psi = minpoly_2cos_pi_over(n);
  const int d = static_cast<int>(psi.size()) - 1;

  ChordAlgebra out;
  if (d > 1) {
    Real pi = boost::math::constants::pi<Real>();
    Real y = 2 * cos(pi / n);
    std::vector<std::pair<std::string, Real>> symbols;
    Real power = y;
    for (int k = 1; k < d; ++k) {
      std::string name = "c" + std::to_string(n) + (k == 1 ? "" : "p" + std::to_string(k));
      symbols.emplace_back(name, power);
      power *= y;
    }
    out.basis = SymbolBasis::make_computed(symbols);
  }

  // elements of Q[y]/(psi) as coefficient vectors of length d
  using Vec = std::vector<Rational>;
  auto mul_y = [&](const Vec& v) {
    Vec r(d, Rational(0));
    for (int i = 0; i + 1 < d; ++i) r[i + 1] = v[i];
    Rational top = v[d - 1];
    if (top != 0) {
      // y^d = -(psi[d-1] y^{d-1} + ... + psi[0])
      for (int i = 0; i < d; ++i) r[i] -= top * Rational(psi[i]);
    }
    return r;
  };
  auto to_scalar = [&](const Vec& v) {
    std::vector<ExactScalar::Coord> coords;
    for (int i = 0; i < d; ++i) {
      if (v[i] != 0) coords.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    }
    return ExactScalar::with_coords(out.basis, std::move(coords));
  };

  Vec prev(d, Rational(0));  // delta_0 = 0
  Vec cur(d, Rational(0));
  cur[0] = 1;  // delta_1 = 1
  out.chords.push_back(to_scalar(cur));
  for (int m = 2; m <= n / 2; ++m) {
    // delta_{m+1} = y delta_m - delta_{m-1}
    Vec next = mul_y(cur);
    for (int i = 0; i < d; ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
    out.chords.push_back(to_scalar(cur));
  }
  return out;
}

}  // namespace detail

/// Chord lengths delta_1..delta_{floor(n/2)} of the regular n-gon, exact.
inline std::vector<ExactScalar> ngon_chords(int n) { return detail::chord_algebra(n).chords; }

/// Regular n-gon normalized to side 1: d(i,j) = delta_{|j-i|_n}.
inline FiniteMetricSpace regular_ngon(int n) {
  auto algebra = detail::chord_algebra(n);
  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int gap = std::min(std::abs(i - j), n - std::abs(i - j));
      dist[i][j] = algebra.chords[gap - 1];
    }
  }
  return make_space(dist, algebra.basis);
}

/// The nine-point isomer of the regular nonagon: chord assignments at circle
/// gaps 3 and 4 are swapped (gap 3 gets delta_4, gap 4 gets delta_3).
inline FiniteMetricSpace isomer_r9prime() {
  auto algebra = detail::chord_algebra(9);
  const int n = 9;
  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int gap = std::min(std::abs(i - j), n - std::abs(i - j));
      int chord = gap;
      if (gap == 3) chord = 4;
      if (gap == 4) chord = 3;
      dist[i][j] = algebra.chords[chord - 1];
    }
  }
  return make_space(dist, algebra.basis);
}

/// The triangular prism and K_{3,3} with shortest-path metrics: the total
/// spaces of the two fibrations over a triangle with two-point fiber.
inline std::pair<FiniteMetricSpace, FiniteMetricSpace> prism_and_k33() {
  return {graph_to_metric(make_prism_graph()), graph_to_metric(make_k33_graph())};
}

/// Subset of n_total points equally placed on a circle of circumference
/// n_total, arc-length metric. Positions are 1-based.
inline FiniteMetricSpace circle_space(const std::vector<int>& positions, int n_total = 16) {
  if (n_total < 3) raise(Errc::DomainError, "circle needs at least 3 positions");
  if (positions.empty()) raise(Errc::DomainError, "subset must not be empty");
  std::set<int> seen;
  for (int p : positions) {
    if (p < 1 || p > n_total) {
      raise(Errc::IndexOutOfRange, "position " + std::to_string(p) + " outside 1.." + std::to_string(n_total));
    }
    if (!seen.insert(p).second) raise(Errc::DuplicatePosition, "position " + std::to_string(p) + " repeated");
  }
  const int n = static_cast<int>(positions.size());
  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int arc = std::abs(positions[i] - positions[j]);
      dist[i][j] = ExactScalar(Rational(std::min(arc, n_total - arc)));
    }
  }
  return make_space(dist);
}

inline FiniteMetricSpace full_circle_space(int n_total = 16) {
  std::vector<int> all(n_total);
  for (int i = 0; i < n_total; ++i) all[i] = i + 1;
  return circle_space(all, n_total);
}

// ---------------------------------------------------------------------------
// Comparison harness.

struct CompareConfig {
  std::vector<Rational> t_samples{Rational(1, 2), Rational(1), Rational(2), Rational(4)};
  std::vector<Rational> q_samples{Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 5), Rational(5, 7)};
  Rational formal_cutoff{5};
  bool run_formal = true;
  bool run_stochastic = true;
  Real magnitude_tolerance = pow(Real(10), -20);
  Real stochastic_tolerance = pow(Real(10), -30);
};

struct MagnitudeSample {
  Rational t;
  std::optional<Real> x, y;  // empty on a singular similarity matrix
  bool equal = false;
};

struct StochasticSample {
  Rational q;
  bool alpha_equal = false;
  bool beta_equal = false;
};

struct ComparisonReport {
  std::string label_x, label_y;
  bool isometric = false;
  bool charpoly_equal = false;
  std::optional<int> charpoly_first_diff;  // highest lambda power that differs
  bool tau_equal = false;
  std::vector<MagnitudeSample> magnitude_samples;
  bool magnitude_equal = false;
  bool formal_run = false;
  bool formal_equal = false;
  Rational formal_cutoff{0};
  std::vector<StochasticSample> stochastic_samples;
  bool alpha_equal = false;
  bool beta_equal = false;
  std::optional<bool> adjacency_equal;  // only when both inputs are graphs
};

inline ComparisonReport compare(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const CompareConfig& cfg = {},
                                const Graph* gx = nullptr, const Graph* gy = nullptr) {
  ComparisonReport rep;
  rep.isometric = is_isometric(x, y).has_value();

  TauVector tx = tau(x);
  TauVector ty = tau(y);
  LambdaPoly px = charpoly_from_tau(tx);
  LambdaPoly py = charpoly_from_tau(ty);
  rep.charpoly_equal = (px == py);
  if (!rep.charpoly_equal) {
    for (std::size_t k = std::max(px.degree(), py.degree()) + 1; k-- > 0;) {
      if (px.coeff(k) != py.coeff(k)) {
        rep.charpoly_first_diff = static_cast<int>(k);
        break;
      }
    }
  }

  rep.tau_equal = tx.size() == ty.size();
  for (std::size_t k = 1; rep.tau_equal && k <= tx.size(); ++k) rep.tau_equal = (tx[k] == ty[k]);
  if (rep.charpoly_equal && !rep.tau_equal) {
    raise(Errc::TheoremViolation, "equal characteristic polynomials with unequal tau vectors");
  }

  rep.magnitude_equal = true;
  for (const auto& t : cfg.t_samples) {
    MagnitudeSample sample;
    sample.t = t;
    try {
      sample.x = magnitude(x, Real(t));
    } catch (const Error& e) {
      if (e.code() != Errc::SingularSimilarityMatrix) throw;
    }
    try {
      sample.y = magnitude(y, Real(t));
    } catch (const Error& e) {
      if (e.code() != Errc::SingularSimilarityMatrix) throw;
    }
    sample.equal = sample.x && sample.y && abs(*sample.x - *sample.y) <= cfg.magnitude_tolerance;
    rep.magnitude_equal = rep.magnitude_equal && sample.equal;
    rep.magnitude_samples.push_back(std::move(sample));
  }

  if (cfg.run_formal) {
    rep.formal_run = true;
    rep.formal_cutoff = cfg.formal_cutoff;
    rep.formal_equal = (formal_magnitude(x, cfg.formal_cutoff) == formal_magnitude(y, cfg.formal_cutoff));
  }

  if (cfg.run_stochastic) {
    rep.alpha_equal = true;
    rep.beta_equal = true;
    for (const auto& q : cfg.q_samples) {
      StochasticSample s;
      s.q = q;
      s.alpha_equal = stochastic_equal(stochastic_charpoly(x, StochasticVariant::Alpha, q),
                                       stochastic_charpoly(y, StochasticVariant::Alpha, q), cfg.stochastic_tolerance);
      if (x.n() >= 2 && y.n() >= 2) {
        s.beta_equal = stochastic_equal(stochastic_charpoly(x, StochasticVariant::Beta, q),
                                        stochastic_charpoly(y, StochasticVariant::Beta, q), cfg.stochastic_tolerance);
      } else {
        s.beta_equal = (x.n() == y.n());
      }
      rep.alpha_equal = rep.alpha_equal && s.alpha_equal;
      rep.beta_equal = rep.beta_equal && s.beta_equal;
      rep.stochastic_samples.push_back(std::move(s));
    }
  }

  if (gx && gy) {
    rep.adjacency_equal = (adjacency_charpoly(*gx) == adjacency_charpoly(*gy));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Named catalog for the CLI.

struct CorpusEntry {
  std::string name;
  std::string description;
};

inline std::vector<CorpusEntry> corpus_catalog() {
  return {
      {"path:<n>", "path graph on n vertices (shortest-path metric)"},
      {"cycle:<n>", "cycle graph on n vertices"},
      {"complete:<n>", "complete graph on n vertices"},
      {"star:<k>", "star K_{1,k}"},
      {"p4", "path graph on 4 vertices (wedge of path-3 and path-2 at an end)"},
      {"k13", "star K_{1,3} (wedge of path-3 and path-2 at the middle)"},
      {"prism", "triangular prism C3 x K2 (fibration over the triangle)"},
      {"k33", "complete bipartite K_{3,3} (twisted fibration over the triangle)"},
      {"ngon:<n>", "regular n-gon with unit side, exact chord lengths"},
      {"r6", "regular hexagon"},
      {"r8", "regular octagon"},
      {"r9", "regular nonagon"},
      {"r9prime", "nine-point isomer of the regular nonagon (chord classes 3 and 4 swapped)"},
      {"circle16", "all 16 points equally spaced on a circle of circumference 16"},
      {"circle:<p1,p2,...>", "subset of the 16-point circle (1-based positions)"},
      {"whitney-a", "adjacent-gluing Whitney twist demo, first orientation"},
      {"whitney-b", "adjacent-gluing Whitney twist demo, second orientation"},
  };
}

/// Build a catalog space by name. Graph-backed entries also return the graph.
inline FiniteMetricSpace corpus_emit(const std::string& name, Graph* graph_out = nullptr) {
  auto with_graph = [&](const Graph& g) {
    if (graph_out) *graph_out = g;
    return graph_to_metric(g);
  };
  auto parse_int = [&](const std::string& text) {
    try {
      std::size_t used = 0;
      int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      raise(Errc::ParseError, "bad corpus parameter '" + text + "' in '" + name + "'");
    }
  };

  if (name == "p4") return with_graph(make_path_graph(4));
  if (name == "k13") return with_graph(make_star_graph(3));
  if (name == "prism") return with_graph(make_prism_graph());
  if (name == "k33") return with_graph(make_k33_graph());
  if (name == "r6") return regular_ngon(6);
  if (name == "r8") return regular_ngon(8);
  if (name == "r9") return regular_ngon(9);
  if (name == "r9prime") return isomer_r9prime();
  if (name == "circle16") return full_circle_space();
  if (name == "whitney-a") return with_graph(whitney_adjacent_pair().first);
  if (name == "whitney-b") return with_graph(whitney_adjacent_pair().second);

  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string kind = name.substr(0, colon);
    std::string arg = name.substr(colon + 1);
    if (kind == "path") return with_graph(make_path_graph(parse_int(arg)));
    if (kind == "cycle") return with_graph(make_cycle_graph(parse_int(arg)));
    if (kind == "complete") return with_graph(make_complete_graph(parse_int(arg)));
    if (kind == "star") return with_graph(make_star_graph(parse_int(arg)));
    if (kind == "ngon") return regular_ngon(parse_int(arg));
    if (kind == "circle") {
      std::vector<int> positions;
      std::string token;
      for (char c : arg + ",") {
        if (c == ',') {
          if (!token.empty()) positions.push_back(parse_int(token));
          token.clear();
        } else {
          token.push_back(c);
        }
      }
      return circle_space(positions);
    }
  }
  raise(Errc::ParseError, "unknown corpus name '" + name + "'; see 'corpus list'");
}

}  // namespace metriq
