// Command-line front end for the numeration library.
//
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "numeration/io.hpp"
#include "numeration/numeration.hpp"

using namespace numeration;

namespace {

std::string decimal(const Rational& q, int digits = 15) {
  std::ostringstream out;
  out << std::setprecision(digits) << static_cast<double>(q.convert_to<long double>());
  return out.str();
}

std::string word_or_epsilon(const DigitWord& w) { return w.empty() ? "ε" : to_string(w); }

// Exact endpoints only while they stay readable.
Json interval_json(const Interval& iv) {
  Json j{{"lo_approx", decimal(iv.lo)}, {"hi_approx", decimal(iv.hi)}, {"width_approx", decimal(iv.width(), 3)}};
  const std::string lo = iv.lo.str(), hi = iv.hi.str();
  if (lo.size() <= 64 && hi.size() <= 64) j["lo"] = lo, j["hi"] = hi;
  return j;
}

Json expansion_json(const Expansion& e) {
  Json j{{"prefix", to_string(e.prefix)}, {"resolved", e.resolved()}, {"class", e.parry.to_string()}};
  if (e.word) j["word"] = to_string(*e.word);
  return j;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

BigInt parse_bigint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("'" + s + "' is not a nonnegative integer");
  return BigInt(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-base expansions, Bertrand numeration systems and their automata"};
  app.require_subcommand(1);

  bool json = false;
  std::string base_spec, word_spec, system_spec, variant_name = "canonical";
  std::size_t depth = kDefaultDepth, budget = kDefaultRefinementBudget;

  auto add_base = [&](CLI::App* c, const char* flag) {
    c->add_option(flag, base_spec, "base: int:3, rat:5/2, poly:1,-1,-1@(1,2), parry:110(0)")->required();
    c->add_option("--depth", depth, "digits of d_beta(1) to compute before giving up on periodicity");
    c->add_option("--budget", budget, "interval bisections allowed per digit decision");
  };
  auto add_variant = [&](CLI::App* c) {
    c->add_option("--variant", variant_name, "canonical | noncanonical")
        ->check(CLI::IsMember({"canonical", "noncanonical"}));
  };
  auto add_system = [&](CLI::App* c) {
    c->add_option("--system", system_spec, "JSON file or bertrand:<word>")->required();
  };

  auto* dbeta = app.add_subcommand("dbeta", "greedy expansion d_beta(1)");
  add_base(dbeta, "--base");
  auto* dstar = app.add_subcommand("dstar", "quasi-greedy expansion d*_beta(1)");
  add_base(dstar, "--base");
  auto* beta_of = app.add_subcommand("beta-of", "base whose greedy expansion of 1 is the given word");
  beta_of->add_option("--word", word_spec, "eventually periodic word, e.g. 110(0)")->required();

  std::size_t count = 10;
  std::string json_out;
  auto* build = app.add_subcommand("build", "Bertrand numeration system of a base");
  add_base(build, "--beta");
  add_variant(build);
  build->add_option("--count", count, "number of terms to print");
  build->add_option("--save", json_out, "write the system as JSON to this file");

  std::string n_str;
  auto* rep = app.add_subcommand("rep", "greedy representation of an integer");
  add_system(rep);
  rep->add_option("--n", n_str, "nonnegative integer")->required();

  auto* val = app.add_subcommand("val", "value of a digit word");
  add_system(val);
  val->add_option("--word", word_spec)->required();

  auto* mem = app.add_subcommand("member", "membership in the numeration language");
  add_system(mem);
  mem->add_option("--word", word_spec)->required();

  std::size_t max_len = 8;
  auto* chk = app.add_subcommand("check-bertrand", "test w in N <=> w0 in N for short words");
  add_system(chk);
  chk->add_option("--max-len", max_len);

  std::size_t probe = 10;
  auto* cls = app.add_subcommand("classify", "which case of the Bertrand characterization applies");
  add_system(cls);
  cls->add_option("--probe", probe);

  std::size_t up_to = 30;
  std::string check_system;
  auto* cp = app.add_subcommand("charpoly", "characteristic polynomial of a Bertrand system");
  cp->add_option("--word", word_spec, "d*_beta(1) or d_beta(1)")->required();
  add_variant(cp);
  cp->add_option("--check", check_system, "system whose terms must satisfy the recurrence");
  cp->add_option("--up-to", up_to);

  std::string dot_path;
  bool do_minimize = false;
  unsigned threads = 1;
  std::size_t count_len = 0;
  auto* aut = app.add_subcommand("automaton", "automaton of the factors of S_beta or S'_beta");
  add_base(aut, "--beta");
  add_variant(aut);
  aut->add_flag("--minimize", do_minimize);
  aut->add_option("--dot", dot_path, "write Graphviz DOT here ('-' for stdout)");
  aut->add_option("--check-system", check_system, "compare with this system's language");
  aut->add_option("--max-len", max_len);
  aut->add_option("--threads", threads);
  aut->add_option("--count", count_len, "also print the number of accepted words of this length");

  std::size_t i_max = 60, ell = 6;
  std::string csv_path;
  auto* an = app.add_subcommand("analyze", "dominant root, renewal limit, entropy and lex-max convergence");
  add_system(an);
  add_base(an, "--beta");
  add_variant(an);
  an->add_option("--i-max", i_max);
  an->add_option("--ell", ell);
  an->add_option("--csv", csv_path, "per-index table for plotting");

  std::size_t range = 20;
  auto* ci = app.add_subcommand("counting-identity", "check U'(i+n) = U(i+n) + U'(i)");
  add_base(ci, "--beta");
  ci->add_option("--range", range);

  for (auto* c : app.get_subcommands({})) c->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto base = [&]() {
      RealBase b = parse_base(base_spec);
      b.set_refinement_budget(budget);
      return b;
    };
    const Variant variant = parse_variant(variant_name);

    if (*dbeta || *dstar) {
      RealBase b = base();
      Expansion e = *dbeta ? b.d_beta_one(depth) : b.d_beta_star(depth);
      if (json)
        print(expansion_json(e));
      else
        std::cout << e.to_string() << "\n";
    } else if (*beta_of) {
      RealBase b = beta_from_expansion(parse_ep_word(word_spec));
      Polynomial p = b.polynomial().primitive_integral();
      Interval iv = b.enclosure(pow10_inv(12));
      if (json)
        print({{"spec", b.spec()}, {"polynomial", p.to_string()}, {"enclosure", interval_json(iv)}});
      else
        std::cout << "root of " << p.to_string() << " ~ " << decimal(iv.mid(), 12) << "\n";
    } else if (*build) {
      BertrandBuild r = build_bertrand(base(), variant, depth);
      if (r.variants_coincide)
        std::cerr << "note: base is not simple Parry; canonical and noncanonical systems coincide\n";
      auto u = r.system.values(count);
      if (!json_out.empty()) {
        std::ofstream(json_out) << to_json(r.system).dump(2) << "\n";
      }
      if (json) {
        Json vals = Json::array();
        for (const auto& v : u) vals.push_back(big_to_json(v));
        print({{"seed", to_string(r.seed)}, {"alphabet_max", r.system.alphabet_max()}, {"values", vals},
               {"variants_coincide", r.variants_coincide}, {"system", to_json(r.system)}});
      } else {
        for (std::size_t i = 0; i < u.size(); ++i) std::cout << (i ? " " : "") << u[i];
        std::cout << "\n";
      }
    } else if (*rep) {
      NumSys s = parse_system(system_spec);
      DigitWord w = s.rep(parse_bigint(n_str));
      if (json)
        print({{"n", n_str}, {"rep", to_string(w)}});
      else
        std::cout << word_or_epsilon(w) << "\n";
    } else if (*val) {
      NumSys s = parse_system(system_spec);
      BigInt v = s.val(parse_digit_word(word_spec));
      if (json)
        print({{"word", word_spec}, {"value", big_to_json(v)}});
      else
        std::cout << v << "\n";
    } else if (*mem) {
      NumSys s = parse_system(system_spec);
      bool in = s.member(parse_digit_word(word_spec));
      if (json)
        print({{"word", word_spec}, {"member", in}});
      else
        std::cout << (in ? "true" : "false") << "\n";
    } else if (*chk) {
      NumSys s = parse_system(system_spec);
      BertrandReport r = check_bertrand(s, max_len);
      if (json) {
        Json v = Json::array();
        for (const auto& x : r.violations)
          v.push_back({{"word", to_string(x.word)}, {"extended", to_string(x.extended)},
                       {"direction", to_string(x.direction)}});
        print({{"holds_up_to", r.holds_up_to}, {"holds", r.holds()}, {"violations", v}});
      } else if (r.holds()) {
        std::cout << "holds up to length " << r.holds_up_to << "\n";
      } else {
        std::cout << "holds up to length " << r.holds_up_to << "\n";
        for (const auto& x : r.violations)
          std::cout << "violation: " << word_or_epsilon(x.word) << " / " << to_string(x.extended) << " ("
                    << to_string(x.direction) << ")\n";
      }
    } else if (*cls) {
      NumSys s = parse_system(system_spec);
      Classification c = classify_bertrand(s, probe);
      Json j{{"case", c.case_name()}, {"certified", c.certified}, {"probe_len", c.probe_len},
             {"shifts_coincide", c.shifts_coincide}};
      if (c.a) j["a"] = to_string(*c.a);
      if (c.d) j["d"] = to_string(*c.d);
      if (c.base) j["base"] = c.base->spec(), j["polynomial"] = c.base->polynomial().primitive_integral().to_string();
      if (c.witness)
        j["witness"] = {{"word", to_string(c.witness->word)}, {"extended", to_string(c.witness->extended)},
                        {"direction", to_string(c.witness->direction)}};
      if (json) {
        print(j);
      } else {
        std::cout << c.case_name();
        if (c.base) std::cout << " base=" << c.base->spec() << " (" << j["polynomial"].get<std::string>() << ")";
        if (c.a) std::cout << " a=" << to_string(*c.a);
        if (c.witness)
          std::cout << " witness=" << word_or_epsilon(c.witness->word) << "/" << to_string(c.witness->extended) << " ("
                    << to_string(c.witness->direction) << ")";
        if (c.kind != Classification::Case::not_bertrand)
          std::cout << (c.certified ? " certified" : " consistent up to length " + std::to_string(c.probe_len));
        if (c.shifts_coincide) std::cout << " (S_beta = S'_beta)";
        std::cout << "\n";
      }
    } else if (*cp) {
      Polynomial p = char_poly(parse_ep_word(word_spec), variant);
      std::optional<std::size_t> bad;
      if (!check_system.empty()) bad = recurrence_mismatch(p, parse_system(check_system), up_to);
      if (json) {
        Json j{{"polynomial", p.to_string()}};
        if (!check_system.empty()) j["reproduces_up_to"] = bad ? Json(*bad) : Json(up_to);
        j["first_mismatch"] = bad ? Json(*bad) : Json(nullptr);
        print(j);
      } else {
        std::cout << p.to_string() << "\n";
        if (bad) std::cout << "recurrence fails at i=" << *bad << "\n";
      }
      if (bad) return 1;
    } else if (*aut) {
      ShiftAutomaton a = build_shift_dfa(base(), variant, depth);
      Dfa d = do_minimize ? minimize(a.dfa) : a.dfa.canonical();
      if (a.variants_coincide)
        std::cerr << "note: base is not simple Parry; canonical and noncanonical automata coincide\n";
      if (!dot_path.empty()) {
        if (dot_path == "-")
          std::cout << to_dot(d);
        else
          std::ofstream(dot_path) << to_dot(d);
      }
      Json j = to_json(d);
      int status = 0;
      if (count_len) j["count"] = count_accepted(d, count_len).str();
      if (!check_system.empty()) {
        EquivalenceReport r = dfa_equiv_language(d, parse_system(check_system), max_len, threads);
        j["agrees_up_to"] = max_len;
        j["agree"] = r.agree;
        if (!r.agree) {
          j["first_disagreement"] = to_string(*r.first_disagreement);
          status = 1;
        }
      }
      if (json) {
        print(j);
      } else if (dot_path != "-") {
        std::cout << "states=" << d.num_states() << " edges=" << d.num_edges();
        if (count_len) std::cout << " count(" << count_len << ")=" << j["count"].get<std::string>();
        if (!check_system.empty())
          std::cout << (j["agree"].get<bool>() ? " agrees with system up to length " + std::to_string(max_len)
                                               : " disagrees at " + j["first_disagreement"].get<std::string>());
        std::cout << "\n";
      }
      return status;
    } else if (*an) {
      NumSys s = parse_system(system_spec);
      RealBase b = base();
      RootEstimate roots = dominant_root_estimate(s, i_max);
      Interval target = renewal_limit_target(b, variant, kDefaultBetaWidth, depth);
      auto emp = renewal_limit_empirical(s, b, i_max);
      EntropyEstimate ent = entropy_estimate(s, i_max);
      HollanderReport h = hollander_probe(s, b, std::min(ell, i_max), i_max, depth);
      Json ratios = Json::array();
      for (const auto& r : roots.ratios) ratios.push_back(decimal(r));
      Json ks = Json::array();
      for (const auto& row : h.rows) ks.push_back(row.k ? Json(*row.k) : Json(nullptr));
      Json lcp = Json::array();
      for (const auto& row : h.rows) lcp.push_back(row.common_prefix);
      Json j{{"ratios", ratios},
             {"ratio_estimate", decimal(roots.estimate)},
             {"beta_enclosure", interval_json(beta_interval(b))},
             {"target_interval", interval_json(target)},
             {"empirical_interval", interval_json(emp.back())},
             {"overlap", target.overlaps(emp.back())},
             {"entropy", {{"ratio_estimator", ent.ratio_log}, {"per_length_estimator", ent.per_length}}},
             {"hollander",
              {{"ell", h.ell},
               {"simple_parry", h.simple_parry},
               {"k_per_i", ks},
               {"common_prefix_per_i", lcp},
               {"stabilizes", h.stabilizes},
               {"stable_from", h.stable_from ? Json(*h.stable_from) : Json(nullptr)},
               {"limit_prefix", h.limit_prefix ? Json(to_string(*h.limit_prefix)) : Json(nullptr)},
               {"limit_is_d_star", h.limit_is_d_star},
               {"limit_is_d", h.limit_is_d}}}};
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << "i,U,ratio,empirical_lo,empirical_hi,hollander_k,common_prefix\n";
        auto u = s.values(i_max + 1);
        for (std::size_t i = 1; i <= i_max; ++i) {
          const auto& row = h.rows[i - 1];
          csv << i << "," << u[i] << "," << decimal(roots.ratios[i - 1]) << "," << decimal(emp[i].lo) << ","
              << decimal(emp[i].hi) << "," << (row.k ? std::to_string(*row.k) : "") << "," << row.common_prefix
              << "\n";
        }
      }
      if (json) {
        print(j);
        return 0;
      }
      std::cout << "dominant root ~ " << decimal(roots.estimate, 12) << "\n";
      std::cout << "U(i)/beta^i at i=" << i_max << " in [" << decimal(emp.back().lo, 10) << ", "
                << decimal(emp.back().hi, 10) << "], limit in [" << decimal(target.lo, 10) << ", "
                << decimal(target.hi, 10) << "], overlap " << (j["overlap"].get<bool>() ? "yes" : "no") << "\n";
      std::cout << "entropy ~ " << std::setprecision(12) << ent.ratio_log << "\n";
      std::cout << "k per i (prefix length " << h.ell << "):";
      for (const auto& row : h.rows) std::cout << " " << (row.k ? std::to_string(*row.k) : "-");
      std::cout << "\n";
      if (!h.stabilizes) {
        std::cout << "no stabilization\n";
      } else {
        std::cout << "stable from i=" << *h.stable_from << ", limit prefix " << to_string(*h.limit_prefix);
        if (h.limit_is_d) std::cout << " = Pref(d_beta(1))";
        if (h.limit_is_d_star) std::cout << " = Pref(d*_beta(1))";
        std::cout << "\n";
      }
    } else if (*ci) {
      CountingIdentityReport r = counting_identity_check(base(), range, depth);
      if (json)
        print({{"n", r.n},
               {"checked", r.checked},
               {"first_failure", r.first_failure ? Json(*r.first_failure) : Json(nullptr)}});
      else if (r.first_failure)
        std::cout << "fails at i=" << *r.first_failure << "\n";
      else
        std::cout << "holds for 0 <= i <= " << range << " (n=" << r.n << ")\n";
      if (r.first_failure) return 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
