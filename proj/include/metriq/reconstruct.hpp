#pragma once

// Inverse problems: recover edge-length and triangle-perimeter multisets
// from tau coefficients, rebuild weakly 3-generic spaces, and identify
// four-point spaces from (S1, S3, S_opp).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriq/genericity.hpp"
#include "metriq/genpoly.hpp"
#include "metriq/invariants.hpp"
#include "metriq/isometry.hpp"
#include "metriq/metric_space.hpp"

namespace metriq {

/// S1 = [d_ij]: each term c q^e of -tau2 contributes e/2 with multiplicity c.
inline LengthMultiset extract_S1(const GenPoly& tau2) {
  std::vector<LengthMultiset::Entry> entries;
  for (const auto& t : tau2.terms()) {
    Rational c = -t.coeff;
    if (c <= 0 || !is_integer(c)) {
      raise(Errc::MalformedTau, "-tau2 must have positive integer coefficients, found " + t.coeff.str() + " at q^[" +
                                    t.exponent.to_string() + "]");
    }
    entries.emplace_back(t.exponent.scaled(Rational(1, 2)), c.convert_to<long>());
  }
  return LengthMultiset::from_counted(entries);
}

/// S3 = [d_ij + d_jk + d_ki]: each term c q^e of tau3/2 contributes e with
/// multiplicity c.
inline LengthMultiset extract_S3(const GenPoly& tau3) {
  std::vector<LengthMultiset::Entry> entries;
  for (const auto& t : tau3.terms()) {
    if (t.coeff <= 0 || !is_integer(t.coeff) || numerator(t.coeff) % 2 != 0) {
      raise(Errc::MalformedTau, "tau3 must have even positive integer coefficients, found " + t.coeff.str() +
                                    " at q^[" + t.exponent.to_string() + "]");
    }
    entries.emplace_back(t.exponent, (t.coeff / 2).convert_to<long>());
  }
  return LengthMultiset::from_counted(entries);
}

namespace detail {

inline int points_from_pair_count(long pairs) {
  for (int n = 1; n <= 2048; ++n) {
    long c2 = static_cast<long>(n) * (n - 1) / 2;
    if (c2 == pairs) return n;
    if (c2 > pairs) break;
  }
  return -1;
}

/// Index of all sums of value triples; collision means not weakly 3-generic.
struct TripleSumTable {
  std::map<ExactScalar, std::array<int, 3>, CanonicalLess> by_sum;
  std::vector<std::vector<int>> triples_with_value;  // S3 slots touching a value

  static TripleSumTable build(const std::vector<ExactScalar>& values) {
    TripleSumTable t;
    const int m = static_cast<int>(values.size());
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        ExactScalar ij = values[i] + values[j];
        for (int k = j + 1; k < m; ++k) {
          auto [it, inserted] = t.by_sum.emplace(ij + values[k], std::array<int, 3>{i, j, k});
          if (!inserted) {
            raise(Errc::NotWeak3Generic, "edge triples {" + std::to_string(it->second[0]) + "," +
                                             std::to_string(it->second[1]) + "," + std::to_string(it->second[2]) +
                                             "} and {" + std::to_string(i) + "," + std::to_string(j) + "," +
                                             std::to_string(k) + "} share the sum " + it->first.to_string());
          }
        }
      }
    }
    return t;
  }
};

struct DecomposedS3 {
  std::vector<ExactScalar> sums;                   // S3 values, canonical order
  std::vector<std::array<int, 3>> triples;         // value indices per sum
  std::vector<std::vector<int>> slots_with_value;  // S3 slots containing each value
};

inline DecomposedS3 decompose_perimeters(const TripleSumTable& table, const LengthMultiset& s3, int value_count) {
  DecomposedS3 d;
  d.slots_with_value.resize(value_count);
  for (const auto& t : s3.expanded()) {
    auto it = table.by_sum.find(t);
    if (it == table.by_sum.end()) {
      raise(Errc::InconsistentData, "perimeter " + t.to_string() + " is not a sum of three edge lengths");
    }
    int slot = static_cast<int>(d.sums.size());
    d.sums.push_back(t);
    d.triples.push_back(it->second);
    for (int v : it->second) d.slots_with_value[v].push_back(slot);
  }
  return d;
}

inline bool triple_contains(const std::array<int, 3>& t, int v) {
  return t[0] == v || t[1] == v || t[2] == v;
}

inline int triple_third(const std::array<int, 3>& t, int a, int b) {
  for (int v : t) {
    if (v != a && v != b) return v;
  }
  return -1;
}

/// S3 slots whose triple contains both values a and b (at most one exists
/// for data coming from an actual space).
inline std::vector<int> common_slots(const DecomposedS3& d, int a, int b) {
  std::vector<int> out;
  for (int slot : d.slots_with_value[a]) {
    if (triple_contains(d.triples[slot], b)) out.push_back(slot);
  }
  return out;
}

}  // namespace detail

/// Rebuild a weakly 3-generic space from its edge-length set S1 and
/// 3-cycle-length set S3, following the inductive triangle-attachment
/// construction; the result is validated against (S1, S3) and the metric
/// axioms before being returned.
inline FiniteMetricSpace reconstruct_weak3(const LengthMultiset& s1, const LengthMultiset& s3) {
  if (!s1.all_distinct()) {
    raise(Errc::NotWeak3Generic, "edge lengths are not pairwise distinct: " + s1.to_string());
  }
  const int n = detail::points_from_pair_count(s1.size());
  if (n < 3) {
    raise(Errc::InconsistentData, "S1 size " + std::to_string(s1.size()) + " is not C(n,2) for any n >= 3");
  }
  const long expected_triples = static_cast<long>(n) * (n - 1) * (n - 2) / 6;
  if (s3.size() != expected_triples) {
    raise(Errc::InconsistentData, "S3 size " + std::to_string(s3.size()) + " does not match C(" +
                                      std::to_string(n) + ",3) = " + std::to_string(expected_triples));
  }
  if (!s3.all_distinct()) {
    raise(Errc::NotWeak3Generic, "3-cycle lengths are not pairwise distinct: " + s3.to_string());
  }
  for (const auto& [v, m] : s1.entries()) {
    if (v.guarded_sign() <= 0) raise(Errc::InconsistentData, "edge length " + v.to_string() + " is not positive");
  }

  const std::vector<ExactScalar> values = s1.expanded();
  auto table = detail::TripleSumTable::build(values);
  auto decomp = detail::decompose_perimeters(table, s3, static_cast<int>(values.size()));

  auto build = [&](const std::vector<int>& forced_orientations) -> FiniteMetricSpace {
    // value index of d(u, v) for placed points; -1 = unknown
    std::vector<std::vector<int>> edge(n, std::vector<int>(n, -1));
    auto set_edge = [&](int u, int v, int value_index) {
      edge[u][v] = value_index;
      edge[v][u] = value_index;
    };

    // (i) base triangle from the first perimeter: BC = a is the base edge
    const int t1 = 0;
    const auto [ia, ib, ic] = decomp.triples[t1];
    set_edge(0, 1, ia);  // B = 0, C = 1
    set_edge(1, 2, ib);  // A = 2, CA = b
    set_edge(0, 2, ic);  // AB = c

    std::vector<int> attach_slots;  // S3 slots containing the base edge a, minus t1
    for (int slot : decomp.slots_with_value[ia]) {
      if (slot != t1) attach_slots.push_back(slot);
    }
    if (static_cast<int>(attach_slots.size()) != n - 3) {
      raise(Errc::InconsistentData, "base edge appears in " + std::to_string(attach_slots.size() + 1) +
                                        " perimeters, expected " + std::to_string(n - 2));
    }

    for (std::size_t step = 0; step < attach_slots.size(); ++step) {
      const int vertex = 3 + static_cast<int>(step);
      const int slot = attach_slots[step];
      const auto& triple = decomp.triples[slot];
      int ip = -1, iq = -1;
      for (int v : triple) {
        if (v == ia) continue;
        (ip < 0 ? ip : iq) = v;
      }

      // (ii) orientation test: attach p to B when some other perimeter is
      // p + c + x with x a fresh edge length
      bool p_at_b;
      if (step < forced_orientations.size()) {
        p_at_b = forced_orientations[step] != 0;
      } else {
        p_at_b = false;
        for (int witness : detail::common_slots(decomp, ip, ic)) {
          if (witness == t1 || witness == slot) continue;
          int x = detail::triple_third(decomp.triples[witness], ip, ic);
          if (x == ia || x == ib || x == ic || x == ip || x == iq) continue;
          p_at_b = true;
          break;
        }
      }
      if (p_at_b) {
        set_edge(0, vertex, ip);
        set_edge(1, vertex, iq);
      } else {
        set_edge(0, vertex, iq);
        set_edge(1, vertex, ip);
      }

      // (iii) distances to the other placed vertices via the unique
      // perimeter containing two edges that meet at B (fallback: at C)
      for (int other = 2; other < vertex; ++other) {
        int found = -1;
        for (int base : {0, 1}) {
          auto slots = detail::common_slots(decomp, edge[base][vertex], edge[base][other]);
          if (slots.size() == 1) {
            found = detail::triple_third(decomp.triples[slots.front()], edge[base][vertex], edge[base][other]);
            break;
          }
        }
        if (found < 0) {
          raise(Errc::InconsistentData,
                "no unique perimeter determines the distance between attached vertices " + std::to_string(other) +
                    " and " + std::to_string(vertex));
        }
        set_edge(other, vertex, found);
      }
    }

    std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) {
          if (edge[i][j] < 0) raise(Errc::InconsistentData, "incomplete assembly");
          dist[i][j] = values[edge[i][j]];
        }
      }
    }
    FiniteMetricSpace space = [&] {
      try {
        return make_space(dist);
      } catch (const Error& e) {
        if (e.code() == Errc::TriangleViolation) {
          raise(Errc::NotAMetric, std::string("assembled matrix is not a metric: ") + e.what());
        }
        throw;
      }
    }();

    // the assembled space must reproduce its own invariants
    TauVector taus = tau(space, 3);
    if (extract_S1(taus[2]) != s1 || extract_S3(taus[3]) != s3) {
      raise(Errc::InconsistentData, "assembled space does not reproduce the input multisets");
    }
    return space;
  };

  try {
    return build({});
  } catch (const Error& primary) {
    if (primary.klass() != ErrorClass::Hypothesis) throw;
    // Degenerate orientation evidence: try every attachment orientation and
    // keep the assemblies that reproduce (S1, S3); all survivors must agree.
    std::vector<FiniteMetricSpace> survivors;
    const int choices = n - 3;
    for (int mask = 0; mask < (1 << choices); ++mask) {
      std::vector<int> forced(choices);
      for (int b = 0; b < choices; ++b) forced[b] = (mask >> b) & 1;
      try {
        survivors.push_back(build(forced));
      } catch (const Error&) {
        continue;
      }
    }
    if (survivors.empty()) throw;
    for (std::size_t i = 1; i < survivors.size(); ++i) {
      if (!is_isometric(survivors[0], survivors[i])) {
        raise(Errc::TheoremViolation, "distinct non-isometric assemblies reproduce the same (S1, S3)");
      }
    }
    return survivors.front();
  }
}

// ---------------------------------------------------------------------------
// Four-point identification.

/// A pairing of the six edge lengths into three opposite pairs.
struct Dcos {
  std::array<std::pair<ExactScalar, ExactScalar>, 3> pairs;
};

/// All pairings of S1 into three pairs whose sums realize S_opp.
inline std::vector<Dcos> enumerate_dcos(const LengthMultiset& s1, const LengthMultiset& s_opp) {
  if (s1.size() != 6 || s_opp.size() != 3) {
    raise(Errc::InconsistentData, "dcos enumeration needs |S1| = 6 and |S_opp| = 3");
  }
  std::vector<ExactScalar> edges = s1.expanded();

  // the 15 perfect matchings of six labelled items
  std::vector<Dcos> out;
  std::vector<std::string> seen;
  auto record = [&](const std::array<std::pair<int, int>, 3>& pairing) {
    std::vector<ExactScalar> sums;
    for (const auto& [u, v] : pairing) sums.push_back(edges[u] + edges[v]);
    if (LengthMultiset(sums) != s_opp) return;

    Dcos d;
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return ExactScalar::canonical_less(sums[x], sums[y]) ||
             (sums[x] == sums[y] &&
              ExactScalar::canonical_less(edges[pairing[x].first], edges[pairing[y].first]));
    });
    std::string key;
    for (int idx = 0; idx < 3; ++idx) {
      auto [u, v] = pairing[order[idx]];
      ExactScalar lo = edges[u], hi = edges[v];
      if (ExactScalar::canonical_less(hi, lo)) std::swap(lo, hi);
      d.pairs[idx] = {lo, hi};
      key += lo.to_string() + "|" + hi.to_string() + ";";
    }
    for (const auto& k : seen) {
      if (k == key) return;
    }
    seen.push_back(key);
    out.push_back(std::move(d));
  };

  for (int a = 1; a < 6; ++a) {
    std::array<bool, 6> used{};
    used[0] = used[a] = true;
    int b = 1;
    while (used[b]) ++b;
    for (int c = b + 1; c < 6; ++c) {
      if (used[c]) continue;
      std::array<bool, 6> used2 = used;
      used2[b] = used2[c] = true;
      int e = 1;
      while (used2[e]) ++e;
      for (int f = e + 1; f < 6; ++f) {
        if (used2[f]) continue;
        record({std::pair<int, int>{0, a}, {b, c}, {e, f}});
      }
    }
  }
  return out;
}

/// Step 1 of four-point identification: classify tau4 by its coefficient
/// pattern and return S_opp = [alpha, beta, gamma]; s is the sum of the six
/// edge lengths.
inline LengthMultiset s_opp_from_tau4(const GenPoly& tau4, const ExactScalar& s) {
  std::vector<ExactScalar> neg2, neg1, neg3, neg4, pos1;
  for (const auto& t : tau4.terms()) {
    if (t.coeff == -2) {
      neg2.push_back(t.exponent);
    } else if (t.coeff == -1) {
      neg1.push_back(t.exponent);
    } else if (t.coeff == -3) {
      neg3.push_back(t.exponent);
    } else if (t.coeff == -4) {
      neg4.push_back(t.exponent);
    } else if (t.coeff == 1) {
      pos1.push_back(t.exponent);
    } else {
      raise(Errc::UnrecognizedPattern, "tau4 coefficient " + t.coeff.str() + " fits no four-point pattern");
    }
  }
  const std::size_t total = tau4.term_count();
  Rational half(1, 2);

  if (total == 6 && neg2.size() == 3 && pos1.size() == 3) {
    // (1-i) distinct, no arithmetic progression
    return LengthMultiset({pos1[0].scaled(half), pos1[1].scaled(half), pos1[2].scaled(half)});
  }
  if (total == 5 && neg2.size() == 2 && neg1.size() == 1 && pos1.size() == 2) {
    // (1-ii) distinct, arithmetic progression: the third sum is
    // s - (B1' + B2')/2
    ExactScalar b1 = pos1[0], b2 = pos1[1];
    return LengthMultiset({b1.scaled(half), b2.scaled(half), s - (b1 + b2).scaled(half)});
  }
  if (total == 2 && neg4.size() == 1 && pos1.size() == 1) {
    // (1-iii) exactly two of alpha, beta, gamma coincide
    ExactScalar b_half = pos1[0].scaled(half);
    ExactScalar rest = (s - b_half).scaled(half);
    return LengthMultiset({b_half, rest, rest});
  }
  if (total == 1 && neg3.size() == 1) {
    // (1-iv) alpha = beta = gamma
    ExactScalar a_half = neg3[0].scaled(half);
    return LengthMultiset({a_half, a_half, a_half});
  }
  raise(Errc::UnrecognizedPattern, "tau4 = " + tau4.to_string() + " fits no four-point pattern");
}

/// Step 2: enumerate the candidate tetrahedra for every dcos consistent with
/// S_opp, keep those whose perimeter multiset is S3 and whose matrix is a
/// metric, check all survivors are isometric, and return a representative.
inline FiniteMetricSpace four_point_identify(const LengthMultiset& s1, const LengthMultiset& s3,
                                             const LengthMultiset& s_opp) {
  if (s1.size() != 6 || s3.size() != 4 || s_opp.size() != 3) {
    raise(Errc::InconsistentData, "four-point data needs |S1| = 6, |S3| = 4, |S_opp| = 3");
  }
  if (s_opp.total() != s1.total()) {
    raise(Errc::InconsistentData, "sum of opposite-pair sums must equal the sum of all edge lengths");
  }
  for (const auto& [v, m] : s1.entries()) {
    if (v.guarded_sign() <= 0) raise(Errc::InconsistentData, "edge length " + v.to_string() + " is not positive");
  }

  std::vector<FiniteMetricSpace> survivors;
  for (const Dcos& dcos : enumerate_dcos(s1, s_opp)) {
    const auto& [p0, p1, p2] = std::tie(dcos.pairs[0], dcos.pairs[1], dcos.pairs[2]);
    // two labelings per dcos; opposite edge slots are (01,23), (02,13), (03,12)
    for (int flip = 0; flip < 2; ++flip) {
      std::vector<std::vector<ExactScalar>> dist(4, std::vector<ExactScalar>(4));
      auto put = [&](int i, int j, const ExactScalar& v) {
        dist[i][j] = v;
        dist[j][i] = v;
      };
      put(0, 1, p0.first);
      put(2, 3, p0.second);
      put(0, 2, p1.first);
      put(1, 3, p1.second);
      put(0, 3, flip ? p2.second : p2.first);
      put(1, 2, flip ? p2.first : p2.second);

      std::vector<ExactScalar> perims{
          dist[0][1] + dist[0][2] + dist[1][2],
          dist[0][1] + dist[0][3] + dist[1][3],
          dist[0][2] + dist[0][3] + dist[2][3],
          dist[1][2] + dist[1][3] + dist[2][3],
      };
      if (LengthMultiset(perims) != s3) continue;
      try {
        survivors.push_back(make_space(dist));
      } catch (const Error& e) {
        if (e.code() == Errc::TriangleViolation) continue;
        throw;
      }
    }
  }

  if (survivors.empty()) {
    raise(Errc::NoRealization, "no edge assignment realizes the given (S1, S3, S_opp)");
  }
  std::size_t best = 0;
  auto flat_less = [](const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        int c = ExactScalar::canonical_compare(x.d(i, j), y.d(i, j));
        if (c != 0) return c < 0;
      }
    }
    return false;
  };
  for (std::size_t i = 1; i < survivors.size(); ++i) {
    if (!is_isometric(survivors[0], survivors[i])) {
      raise(Errc::TheoremViolation,
            "non-isometric four-point realizations share (S1, S3, S_opp); this contradicts the uniqueness theorem");
    }
    if (flat_less(survivors[i], survivors[best])) best = i;
  }
  return survivors[best];
}

}  // namespace metriq
