#pragma once

// Finite metric spaces with exact distances, unit-weight graphs with their
// shortest-path metrics, and multisets of exact lengths.

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metriq/error.hpp"
#include "metriq/exact_scalar.hpp"
#include "metriq/numeric.hpp"

namespace metriq {

/// Numeric slack allowed in the triangle-inequality check for irrational
/// distances; comparisons that reduce to rationals are exact.
inline const Real& triangle_tolerance() {
  static const Real tol = pow(Real(10), -30);
  return tol;
}

class LengthMultiset {
 public:
  using Entry = std::pair<ExactScalar, long>;

  LengthMultiset() = default;

  explicit LengthMultiset(std::vector<ExactScalar> values) {
    std::vector<std::pair<double, std::size_t>> order(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) order[i] = {values[i].approx(), i};
    std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return ExactScalar::lex_compare(values[x.second].coords(), values[y.second].coords()) < 0;
    });
    for (const auto& [key, idx] : order) {
      if (!entries_.empty() && entries_.back().first == values[idx]) {
        ++entries_.back().second;
      } else {
        entries_.emplace_back(std::move(values[idx]), 1);
      }
    }
  }

  static LengthMultiset from_counted(const std::vector<Entry>& counted) {
    std::vector<ExactScalar> values;
    for (const auto& [v, m] : counted) {
      if (m < 1) raise(Errc::DomainError, "multiplicities must be positive");
      for (long i = 0; i < m; ++i) values.push_back(v);
    }
    return LengthMultiset(std::move(values));
  }

  long size() const {
    long s = 0;
    for (const auto& e : entries_) s += e.second;
    return s;
  }

  std::size_t distinct_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::vector<ExactScalar> expanded() const {
    std::vector<ExactScalar> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const auto& [v, m] : entries_) {
      for (long i = 0; i < m; ++i) out.push_back(v);
    }
    return out;
  }

  bool operator==(const LengthMultiset& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].second != other.entries_[i].second) return false;
      if (entries_[i].first != other.entries_[i].first) return false;
    }
    return true;
  }
  bool operator!=(const LengthMultiset& other) const { return !(*this == other); }

  long count_of(const ExactScalar& v) const {
    for (const auto& [val, m] : entries_) {
      if (val == v) return m;
    }
    return 0;
  }

  bool all_distinct() const {
    for (const auto& e : entries_) {
      if (e.second != 1) return false;
    }
    return true;
  }

  /// Numerically largest value (guarded comparison).
  const ExactScalar& max_value() const {
    if (entries_.empty()) raise(Errc::DomainError, "max of empty multiset");
    const ExactScalar* best = &entries_.front().first;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (compare_guarded(entries_[i].first, *best) > 0) best = &entries_[i].first;
    }
    return *best;
  }

  ExactScalar total() const {
    ExactScalar s;
    for (const auto& [v, m] : entries_) s = s + v.scaled(Rational(m));
    return s;
  }

  LengthMultiset scaled(const Rational& t) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [v, m] : entries_) out.emplace_back(v.scaled(t), m);
    return from_counted(out);
  }

  std::string to_string() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [v, m] : entries_) {
      for (long i = 0; i < m; ++i) {
        if (!first) out += ", ";
        out += v.to_string();
        first = false;
      }
    }
    return out + "]";
  }

 private:
  std::vector<Entry> entries_;  // canonical order, merged by exact equality
};

struct SpaceOptions {
  bool allow_nonmetric = false;
};

class FiniteMetricSpace {
 public:
  int n() const { return n_; }
  const ExactScalar& d(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  const BasisPtr& basis() const { return basis_; }

  /// False only when allow_nonmetric admitted a triangle violation.
  bool is_metric() const { return metric_ok_; }

  LengthMultiset distance_multiset() const {
    std::vector<ExactScalar> values;
    values.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) values.push_back(d(i, j));
    }
    return LengthMultiset(std::move(values));
  }

  LengthMultiset perimeter_multiset() const {
    std::vector<ExactScalar> values;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        for (int k = j + 1; k < n_; ++k) values.push_back(d(i, j) + d(j, k) + d(i, k));
      }
    }
    return LengthMultiset(std::move(values));
  }

  friend FiniteMetricSpace make_space(const std::vector<std::vector<ExactScalar>>&, BasisPtr, const SpaceOptions&);
  friend FiniteMetricSpace scale(const FiniteMetricSpace&, const Rational&);
  friend FiniteMetricSpace relabel(const FiniteMetricSpace&, const std::vector<int>&);

 private:
  int n_ = 0;
  std::vector<ExactScalar> dist_;  // row-major n x n
  BasisPtr basis_;
  bool metric_ok_ = true;
};

/// Validate a distance matrix and build the space.
inline FiniteMetricSpace make_space(const std::vector<std::vector<ExactScalar>>& dist, BasisPtr basis = nullptr,
                                    const SpaceOptions& opts = {}) {
  const int n = static_cast<int>(dist.size());
  if (n < 1) raise(Errc::InvalidDistanceMatrix, "a space needs at least one point");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(dist[i].size()) != n) {
      raise(Errc::InvalidDistanceMatrix, "row " + std::to_string(i) + " has wrong length");
    }
  }

  FiniteMetricSpace space;
  space.n_ = n;
  space.basis_ = std::move(basis);
  space.dist_.resize(static_cast<std::size_t>(n) * n);

  for (int i = 0; i < n; ++i) {
    if (!dist[i][i].is_zero()) {
      raise(Errc::InvalidDistanceMatrix, "diagonal entry (" + std::to_string(i) + "," + std::to_string(i) +
                                             ") must be 0, got " + dist[i][i].to_string());
    }
    for (int j = 0; j < n; ++j) {
      space.basis_ = SymbolBasis::merge(space.basis_, dist[i][j].basis());
      if (j > i) {
        if (dist[i][j] != dist[j][i]) {
          raise(Errc::AsymmetricMatrix, "entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" +
                                            std::to_string(j) + "," + std::to_string(i) + ") differ");
        }
        if (dist[i][j].is_zero() || dist[i][j].guarded_sign() <= 0) {
          raise(Errc::NegativeOrZeroOffDiagonal, "distance (" + std::to_string(i) + "," + std::to_string(j) +
                                                     ") = " + dist[i][j].to_string() + " must be positive");
        }
      }
      space.dist_[static_cast<std::size_t>(i) * n + j] = dist[i][j];
    }
  }

  for (int j = 0; j < n && n > 2; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      for (int k = i + 1; k < n; ++k) {
        if (k == j) continue;
        ExactScalar slack = dist[i][j] + dist[j][k] - dist[i][k];
        if (slack.sign_within(triangle_tolerance()) < 0) {
          if (opts.allow_nonmetric) {
            space.metric_ok_ = false;
          } else {
            raise(Errc::TriangleViolation, "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                                               std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                                               std::to_string(j) + "," + std::to_string(k) + ") at points (" +
                                               std::to_string(i) + "," + std::to_string(j) + "," +
                                               std::to_string(k) + ")");
          }
        }
      }
    }
  }
  return space;
}

/// Homothetical expansion tX = (X, t d) for rational t > 0.
inline FiniteMetricSpace scale(const FiniteMetricSpace& space, const Rational& t) {
  if (t <= 0) raise(Errc::NonPositiveFactor, "scale factor must be positive, got " + t.str());
  FiniteMetricSpace out = space;
  for (auto& v : out.dist_) v = v.scaled(t);
  return out;
}

/// Space with points renamed by a permutation (point i becomes perm[i]).
inline FiniteMetricSpace relabel(const FiniteMetricSpace& space, const std::vector<int>& perm) {
  const int n = space.n();
  if (static_cast<int>(perm.size()) != n) raise(Errc::IndexOutOfRange, "permutation size mismatch");
  FiniteMetricSpace out = space;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.dist_[static_cast<std::size_t>(perm[i]) * n + perm[j]] = space.d(i, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simple undirected unit-weight graphs.

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

inline void validate_graph(const Graph& g) {
  if (g.n < 1) raise(Errc::DomainError, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
      raise(Errc::IndexOutOfRange,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n = " + std::to_string(g.n));
    }
    if (u == v) raise(Errc::SelfLoop, "self loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) {
      raise(Errc::DuplicateEdge, "duplicate edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    }
  }
}

/// Shortest-path (hop count) metric of a connected simple graph.
inline FiniteMetricSpace graph_to_metric(const Graph& g) {
  validate_graph(g);
  const int n = g.n;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  std::vector<int> hops(n);
  for (int s = 0; s < n; ++s) {
    std::fill(hops.begin(), hops.end(), -1);
    hops[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (hops[v] < 0) {
          hops[v] = hops[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (hops[v] < 0) {
        raise(Errc::DisconnectedGraph,
              "no path between vertices " + std::to_string(s) + " and " + std::to_string(v));
      }
      dist[s][v] = ExactScalar(Rational(hops[v]));
    }
  }
  return make_space(dist);
}

inline FiniteMetricSpace graph_to_metric(int n, const std::vector<std::pair<int, int>>& edges) {
  return graph_to_metric(Graph{n, edges});
}

}  // namespace metriq
