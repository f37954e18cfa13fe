// metriq: invariants and reconstruction of finite metric spaces.
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 hypothesis
// violation (input outside a theorem's assumptions), 5 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metriq/metriq.hpp"

namespace {

using namespace metriq;

struct GlobalOptions {
  int precision = 0;  // 0 = leave default (env or 50)
  std::string format = "text";
  bool allow_nonmetric = false;
  int oracle_limit = kDefaultOracleLimit;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::ParseError, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedInput load(const std::string& path, const GlobalOptions& opts) {
  return load_space_or_graph(read_input(path), path, SpaceOptions{opts.allow_nonmetric});
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::string token;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(parse_rational(token));
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  if (out.empty()) raise(Errc::ParseError, "empty sample list '" + csv + "'");
  return out;
}

void print_tau_lines(std::ostream& out, const TauVector& taus) {
  for (std::size_t k = 1; k <= taus.size(); ++k) {
    out << "τ_" << k << " = " << taus[k].to_string() << "\n";
  }
}

int run_charpoly(const std::string& input, const GlobalOptions& opts, bool tau_only, bool check_oracle) {
  LoadedInput in = load(input, opts);
  if (opts.format == "json" && !check_oracle) {
    std::cout << charpoly_to_json(in.space).dump(2) << "\n";
    return 0;
  }
  TauVector taus = tau(in.space);
  if (!tau_only) {
    std::cout << "n = " << in.space.n() << "\n";
    std::cout << "p(q;λ) = " << charpoly_from_tau(taus).to_string() << "\n";
  }
  print_tau_lines(std::cout, taus);
  if (check_oracle) {
    for (std::size_t k = 1; k <= taus.size(); ++k) {
      if (taus[k] != tau_oracle(in.space, static_cast<int>(k), opts.oracle_limit)) {
        raise(Errc::TheoremViolation, "cycle oracle disagrees with the trace recurrence at k = " + std::to_string(k));
      }
    }
    std::cout << "oracle check: ok (k = 1.." << taus.size() << ")\n";
  }
  return 0;
}

int run_magnitude(const std::string& input, const GlobalOptions& opts, const std::string& t_list,
                  const std::string& formal_cutoff) {
  LoadedInput in = load(input, opts);
  if (!formal_cutoff.empty()) {
    Rational cutoff = parse_rational(formal_cutoff);
    GenPoly m = formal_magnitude(in.space, cutoff);
    if (opts.format == "json") {
      Json out;
      out["kind"] = "formal_magnitude";
      out["cutoff"] = cutoff.str();
      out["basis"] = basis_to_json(in.space.basis());
      out["terms"] = genpoly_to_json(m);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << m.to_string() << "\n";
    }
    return 0;
  }
  std::vector<Rational> ts{Rational(1, 2), Rational(1), Rational(2), Rational(4)};
  if (!t_list.empty()) ts = parse_rational_list(t_list);
  if (opts.format == "json") {
    Json rows = Json::array();
    for (const auto& t : ts) {
      rows.push_back(Json{{"t", t.str()}, {"magnitude", magnitude(in.space, Real(t)).str(precision::digits())}});
    }
    std::cout << Json{{"kind", "magnitude"}, {"samples", rows}}.dump(2) << "\n";
  } else {
    std::cout << magnitude_csv(in.space, ts);
  }
  return 0;
}

int run_reconstruct(const std::string& input) {
  MultisetInput data = multisets_from_json(parse_json(read_input(input)));
  if (!data.s1 || !data.s3) {
    raise(Errc::ParseError, "reconstruct needs S1 and S3 (directly or via tau2/tau3)");
  }
  FiniteMetricSpace space = reconstruct_weak3(*data.s1, *data.s3);
  std::cout << space_to_json(space).dump(2) << "\n";
  return 0;
}

int run_fourpoint(const std::string& input) {
  MultisetInput data = multisets_from_json(parse_json(read_input(input)));
  if (!data.s1 || !data.s3) {
    raise(Errc::ParseError, "fourpoint needs S1 and S3 (directly or via tau2/tau3)");
  }
  LengthMultiset s_opp = [&] {
    if (data.s_opp) return *data.s_opp;
    if (data.tau4) return s_opp_from_tau4(*data.tau4, data.s1->total());
    raise(Errc::ParseError, "fourpoint needs S_opp or tau4");
  }();
  FiniteMetricSpace space = four_point_identify(*data.s1, *data.s3, s_opp);
  std::cout << space_to_json(space).dump(2) << "\n";
  return 0;
}

int run_compare(const std::vector<std::string>& inputs, const std::string& all_dir, const GlobalOptions& opts,
                const std::string& t_list, const std::string& q_list, const std::string& formal_cutoff) {
  CompareConfig cfg;
  if (!t_list.empty()) cfg.t_samples = parse_rational_list(t_list);
  if (!q_list.empty()) cfg.q_samples = parse_rational_list(q_list);
  if (!formal_cutoff.empty()) cfg.formal_cutoff = parse_rational(formal_cutoff);

  std::vector<LoadedInput> loaded;
  if (!all_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(all_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) loaded.push_back(load(f.string(), opts));
    if (loaded.size() < 2) raise(Errc::ParseError, "--all needs a directory with at least two inputs");
  } else {
    if (inputs.size() != 2) raise(Errc::ParseError, "compare needs exactly two inputs (or --all <dir>)");
    loaded.push_back(load(inputs[0], opts));
    loaded.push_back(load(inputs[1], opts));
  }

  Json all_reports = Json::array();
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    for (std::size_t j = i + 1; j < loaded.size(); ++j) {
      const Graph* gx = loaded[i].graph ? &*loaded[i].graph : nullptr;
      const Graph* gy = loaded[j].graph ? &*loaded[j].graph : nullptr;
      ComparisonReport rep = compare(loaded[i].space, loaded[j].space, cfg, gx, gy);
      rep.label_x = loaded[i].label;
      rep.label_y = loaded[j].label;
      if (opts.format == "json") {
        all_reports.push_back(report_to_json(rep));
      } else {
        std::cout << report_to_text(rep);
      }
    }
  }
  if (opts.format == "json") {
    std::cout << (all_reports.size() == 1 ? all_reports[0] : all_reports).dump(2) << "\n";
  }
  return 0;
}

int run_check(const std::string& input, const GlobalOptions& opts, bool generic, bool weak3) {
  LoadedInput in = load(input, opts);
  if (generic == weak3) raise(Errc::ParseError, "check needs exactly one of --generic or --weak3");
  bool verdict = generic ? is_generic(in.space) : is_weak3generic(in.space);
  if (opts.format == "json") {
    std::cout << Json{{"check", generic ? "generic" : "weak3"}, {"result", verdict}}.dump() << "\n";
  } else {
    std::cout << (verdict ? "true" : "false") << "\n";
  }
  return 0;
}

int run_stochastic(const std::string& input, const GlobalOptions& opts, const std::string& variant,
                   const std::string& q_list) {
  LoadedInput in = load(input, opts);
  std::vector<Rational> qs{Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 5), Rational(5, 7)};
  if (!q_list.empty()) qs = parse_rational_list(q_list);
  std::vector<StochasticVariant> variants;
  if (variant == "alpha" || variant == "both") variants.push_back(StochasticVariant::Alpha);
  if (variant == "beta" || variant == "both") variants.push_back(StochasticVariant::Beta);
  if (variants.empty()) raise(Errc::ParseError, "--variant must be alpha, beta, or both");

  Json rows = Json::array();
  for (const auto& q : qs) {
    for (auto v : variants) {
      StochasticCharpoly p = stochastic_charpoly(in.space, v, q);
      const char* name = (v == StochasticVariant::Alpha) ? "alpha" : "beta";
      if (opts.format == "json") {
        Json coeffs = Json::array();
        if (p.exact) {
          for (const auto& c : p.exact_coeffs) coeffs.push_back(c.str());
        } else {
          for (const auto& c : p.coeffs) coeffs.push_back(c.str(precision::digits()));
        }
        rows.push_back(Json{{"variant", name}, {"q", q.str()}, {"exact", p.exact}, {"coeffs", coeffs}});
      } else {
        std::cout << name << " @ q=" << q.str() << ":";
        if (p.exact) {
          for (const auto& c : p.exact_coeffs) std::cout << " " << c.str();
        } else {
          for (const auto& c : p.coeffs) std::cout << " " << c.str(20);
        }
        std::cout << "\n";
      }
    }
  }
  if (opts.format == "json") std::cout << rows.dump(2) << "\n";
  return 0;
}

int run_adjacency(const std::string& input) {
  std::string text = read_input(input);
  if (looks_like_json(text)) raise(Errc::ParseError, "adjacency-spectrum needs a graph edge list");
  Graph g = graph_from_edge_list(text);
  std::vector<Rational> coeffs = adjacency_charpoly(g);
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k] == 0) continue;
    std::string mag = Rational(abs(coeffs[k])).str();
    std::string piece;
    if (k == 0) {
      piece = mag;
    } else {
      std::string var = (k == 1) ? "λ" : "λ^" + std::to_string(k);
      piece = (mag == "1") ? var : mag + "*" + var;
    }
    if (out.empty()) {
      out = (coeffs[k] < 0 ? "-" : "") + piece;
    } else {
      out += (coeffs[k] < 0 ? " - " : " + ") + piece;
    }
  }
  std::cout << (out.empty() ? "0" : out) << "\n";
  return 0;
}

int run_corpus(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& entry : corpus_catalog()) {
      std::cout << entry.name << "\t" << entry.description << "\n";
    }
    return 0;
  }
  if (action == "emit") {
    std::cout << space_to_json(corpus_emit(name)).dump(2) << "\n";
    return 0;
  }
  raise(Errc::ParseError, "corpus action must be 'list' or 'emit'");
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions opts;
  CLI::App app{"Exact similarity-matrix invariants and reconstruction of finite metric spaces"};
  app.require_subcommand(1);
  app.add_option("--precision", opts.precision, "working precision in decimal digits (>= 30)");
  app.add_option("--format", opts.format, "output format: text (csv for sample tables) or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_flag("--allow-nonmetric", opts.allow_nonmetric,
               "accept symmetric positive matrices that violate the triangle inequality");
  app.add_option("--oracle-limit", opts.oracle_limit, "point-count cap for the cycle oracle");

  std::string input, input2, t_list, q_list, formal_cutoff, variant = "both", all_dir, corpus_action, corpus_name;
  std::vector<std::string> compare_inputs;
  bool check_generic = false, check_weak3 = false, tau_only = false;

  auto* cmd_charpoly = app.add_subcommand("charpoly", "characteristic polynomial p_X(q;λ) and τ_1..τ_n");
  cmd_charpoly->fallthrough();
  cmd_charpoly->add_option("input", input, "space JSON / edge list ('-' = stdin)")->required();

  auto* cmd_tau = app.add_subcommand("tau", "τ_1..τ_n only");
  cmd_tau->fallthrough();
  cmd_tau->add_option("input", input, "space JSON / edge list ('-' = stdin)")->required();
  bool check_oracle = false;
  cmd_tau->add_flag("--check-oracle", check_oracle,
                    "cross-verify every τ_k against the cycle-enumeration oracle");

  auto* cmd_magnitude = app.add_subcommand("magnitude", "magnitude samples (CSV) or truncated formal magnitude");
  cmd_magnitude->fallthrough();
  cmd_magnitude->add_option("input", input, "space JSON / edge list ('-' = stdin)")->required();
  cmd_magnitude->add_option("--t", t_list, "comma-separated t samples (default 1/2,1,2,4)");
  cmd_magnitude->add_option("--formal", formal_cutoff, "emit the formal magnitude truncated at this exponent");

  auto* cmd_reconstruct = app.add_subcommand("reconstruct", "rebuild a weakly 3-generic space from S1/S3");
  cmd_reconstruct->fallthrough();
  cmd_reconstruct->add_option("input", input, "multiset JSON ('-' = stdin)")->required();

  auto* cmd_fourpoint = app.add_subcommand("fourpoint", "identify a four-point space from S1/S3 and S_opp or τ4");
  cmd_fourpoint->fallthrough();
  cmd_fourpoint->add_option("input", input, "multiset JSON ('-' = stdin)")->required();

  auto* cmd_compare = app.add_subcommand("compare", "invariant comparison report for two inputs");
  cmd_compare->fallthrough();
  cmd_compare->add_option("inputs", compare_inputs, "two space/graph inputs");
  cmd_compare->add_option("--all", all_dir, "compare every pair of inputs in a directory");
  cmd_compare->add_option("--t", t_list, "magnitude t samples");
  cmd_compare->add_option("--q", q_list, "stochastic q samples");
  cmd_compare->add_option("--formal-cutoff", formal_cutoff, "formal-magnitude truncation bound (default 5)");

  auto* cmd_check = app.add_subcommand("check", "genericity predicates");
  cmd_check->fallthrough();
  cmd_check->add_option("input", input, "space JSON / edge list ('-' = stdin)")->required();
  cmd_check->add_flag("--generic", check_generic, "rational independence of all distances");
  cmd_check->add_flag("--weak3", check_weak3, "distinct edges and distinct 3-sums");

  auto* cmd_stochastic = app.add_subcommand("stochastic", "stochastic similarity charpolys at sampled q");
  cmd_stochastic->fallthrough();
  cmd_stochastic->add_option("input", input, "space JSON / edge list ('-' = stdin)")->required();
  cmd_stochastic->add_option("--variant", variant, "alpha, beta, or both (default both)");
  cmd_stochastic->add_option("--q", q_list, "comma-separated q samples in (0,1)");

  auto* cmd_adjacency = app.add_subcommand("adjacency-spectrum", "integer charpoly of a graph's adjacency matrix");
  cmd_adjacency->fallthrough();
  cmd_adjacency->add_option("input", input, "edge list ('-' = stdin)")->required();

  auto* cmd_corpus = app.add_subcommand("corpus", "built-in example spaces");
  cmd_corpus->fallthrough();
  cmd_corpus->add_option("action", corpus_action, "'list' or 'emit'")->required();
  cmd_corpus->add_option("name", corpus_name, "catalog name for 'emit'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (opts.precision > 0) metriq::precision::set_digits(opts.precision);
    if (*cmd_charpoly) return run_charpoly(input, opts, false, false);
    if (*cmd_tau) {
      tau_only = true;
      return run_charpoly(input, opts, tau_only, check_oracle);
    }
    if (*cmd_magnitude) return run_magnitude(input, opts, t_list, formal_cutoff);
    if (*cmd_reconstruct) return run_reconstruct(input);
    if (*cmd_fourpoint) return run_fourpoint(input);
    if (*cmd_compare) return run_compare(compare_inputs, all_dir, opts, t_list, q_list, formal_cutoff);
    if (*cmd_check) return run_check(input, opts, check_generic, check_weak3);
    if (*cmd_stochastic) return run_stochastic(input, opts, variant, q_list);
    if (*cmd_adjacency) return run_adjacency(input);
    if (*cmd_corpus) return run_corpus(corpus_action, corpus_name);
  } catch (const metriq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.klass());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
