#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpalkit/analysis.hpp"
#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/generators.hpp"
#include "mpalkit/mpal.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/quadratic.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {
namespace cli {

// Exit codes: 0 success / true verdict, 1 false verdict, 2 usage error,
// 3 domain error.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

namespace detail {

using nlohmann::json;

inline std::string rat_str(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline json word_json(const Word& w) {
  json arr = json::array();
  for (const Integer& t : w) arr.push_back(t.get_str());
  return arr;
}

inline std::string poly_str(const QuadraticIrrational::Poly& poly) {
  std::string out;
  if (poly.a != 1) out += poly.a.get_str();
  out += "x^2";
  if (poly.b != 0) {
    out += poly.b > 0 ? "+" : "-";
    const Integer ab = abs(poly.b);
    if (ab != 1) out += ab.get_str();
    out += "x";
  }
  if (poly.c != 0) {
    out += poly.c > 0 ? "+" : "-";
    const Integer ac = abs(poly.c);
    out += ac.get_str();
  }
  out += "=0";
  return out;
}

// Deterministic decimal approximation of q^{-w}, display only.
inline std::string inverse_power_decimal(const Integer& q, const Rational& w, std::size_t digits) {
  const unsigned long b = w.get_den().get_ui();
  const unsigned long a = w.get_num().get_ui();
  const std::size_t guard = digits + 2;
  const Integer scale = pow_integer(Integer(10), guard);
  Integer root;
  const Integer arg = pow_integer(q, a) * pow_integer(scale, b);
  mpz_root(root.get_mpz_t(), arg.get_mpz_t(), b);
  if (root == 0) return decimal_string(Rational(0), digits);
  return decimal_string(make_rational(scale, root), digits);
}

inline int parse_int_checked(const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("bad integer: " + text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer: " + text);
  }
}

}  // namespace detail

/// Runs one CLI invocation; `args` excludes the program name. All output is
/// deterministic for fixed inputs.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::json;
  using detail::rat_str;
  using detail::word_json;

  CLI::App app{"exact m-palindromic continued fraction toolkit"};
  app.name("mpalkit");
  app.require_subcommand(1);
  int rc = kExitTrue;

  // ---- cf ----------------------------------------------------------------
  auto* cf_cmd = app.add_subcommand("cf", "continued fraction evaluation and simplification");
  cf_cmd->require_subcommand(1);

  std::string cf_word;
  std::size_t cf_digits = 12;
  bool cf_json = false;
  auto* cf_eval = cf_cmd->add_subcommand("eval", "evaluate a word to an exact fraction");
  cf_eval->add_option("word", cf_word, "comma separated partial quotients")->required();
  cf_eval->add_option("--digits", cf_digits, "decimal digits (default 12)");
  cf_eval->add_flag("--json", cf_json, "JSON output");
  cf_eval->callback([&] {
    const Word w = Word::parse(cf_word);
    const Rational v = evaluate(w);
    if (cf_json) {
      json j;
      j["word"] = word_json(w);
      j["p"] = v.get_num().get_str();
      j["q"] = v.get_den().get_str();
      j["decimal"] = decimal_string(v, cf_digits);
      j["digits"] = cf_digits;
      out << j.dump(2) << '\n';
    } else {
      out << v.get_num().get_str() << "/" << v.get_den().get_str() << '\n';
      out << "~ " << decimal_string(v, cf_digits) << '\n';
    }
  });

  std::string cfs_word;
  bool cfs_json = false;
  auto* cf_simplify = cf_cmd->add_subcommand("simplify", "canonical standard word of equal value");
  cf_simplify->add_option("word", cfs_word, "comma separated partial quotients")->required();
  cf_simplify->add_flag("--json", cfs_json, "JSON output");
  cf_simplify->callback([&] {
    const Word w = Word::parse(cfs_word);
    const Word s = simplify(w);
    if (cfs_json) {
      json j;
      j["input"] = word_json(w);
      j["word"] = word_json(s);
      out << j.dump(2) << '\n';
    } else {
      out << s.str() << '\n';
    }
  });

  // ---- mpal --------------------------------------------------------------
  auto* mpal_cmd = app.add_subcommand("mpal", "m-palindromicity checks and density scans");
  mpal_cmd->require_subcommand(1);

  std::string mc_word;
  unsigned mc_m = 0;
  unsigned mc_scan = 0;
  bool mc_json = false;
  auto* mpal_check = mpal_cmd->add_subcommand("check", "test m q_i = p_{i-1}");
  mpal_check->add_option("word", mc_word, "comma separated partial quotients")->required();
  mpal_check->add_option("--m", mc_m, "the multiplier m")->required();
  mpal_check->add_option("--scan-m", mc_scan, "also report every m' <= scan-m that fits");
  mpal_check->add_flag("--json", mc_json, "JSON output");
  mpal_check->callback([&] {
    const Word w = Word::parse(mc_word);
    const auto cert = m_pal_certificate(w, mc_m);
    std::vector<unsigned> hits;
    for (unsigned mm = 1; mm <= mc_scan; ++mm)
      if (is_m_palindrome(w, mm)) hits.push_back(mm);
    if (mc_json) {
      json j;
      j["word"] = word_json(w);
      j["m"] = mc_m;
      j["is_m_palindrome"] = cert.has_value();
      const Mat2 m2 = word_matrix(w);
      j["p_i"] = m2.a.get_str();
      j["q_i"] = m2.c.get_str();
      j["p_prev"] = m2.b.get_str();
      if (mc_scan > 0) j["scan_m_hits"] = hits;
      out << j.dump(2) << '\n';
    } else {
      const Mat2 m2 = word_matrix(w);
      const Integer lhs = m2.c * mc_m;
      if (cert) {
        out << "m-palindrome: yes (m*q_i = " << mc_m << "*" << m2.c.get_str() << " = "
            << lhs.get_str() << " = p_{i-1})" << '\n';
      } else {
        out << "m-palindrome: no (m*q_i = " << mc_m << "*" << m2.c.get_str() << " = "
            << lhs.get_str() << " != p_{i-1} = " << m2.b.get_str() << ")" << '\n';
      }
      if (mc_scan > 0) {
        out << "scan-m hits:";
        if (hits.empty()) out << " none";
        for (unsigned h : hits) out << " " << h;
        out << '\n';
      }
    }
    rc = cert ? kExitTrue : kExitFalse;
  });

  std::string md_stream;
  unsigned md_m = 0;
  std::size_t md_depth = 0;
  std::size_t md_window = 5;
  bool md_json = false;
  auto* mpal_density = mpal_cmd->add_subcommand("density", "m-palindromic prefix scan of a stream");
  mpal_density->add_option("--stream", md_stream, "stream spec (st_number, g, t, nonequiv, fib:..., periodic:...)")
      ->required();
  mpal_density->add_option("--m", md_m, "the multiplier m")->required();
  mpal_density->add_option("--depth", md_depth, "number of stream terms to scan")->required();
  mpal_density->add_option("--window", md_window, "ratios in the estimate window (default 5)");
  mpal_density->add_flag("--json", md_json, "JSON output");
  mpal_density->callback([&] {
    const WordStream s = make_stream(md_stream);
    const DensityReport report = mpal_prefixes(s, md_m, md_depth);
    const bool have_estimate = report.ratios.size() >= md_window && md_window > 0;
    Rational estimate;
    if (have_estimate) estimate = density_estimate(report, md_window);
    if (md_json) {
      json j;
      j["stream"] = md_stream;
      j["m"] = md_m;
      j["depth"] = md_depth;
      j["window"] = md_window;
      j["prefix_lengths"] = report.prefix_lengths;
      json ratios = json::array();
      for (const Rational& r : report.ratios) ratios.push_back(rat_str(r));
      j["ratios"] = ratios;
      if (have_estimate) {
        j["estimate"] = rat_str(estimate);
        j["estimate_decimal"] = decimal_string(estimate, 12);
      }
      out << j.dump(2) << '\n';
    } else {
      out << "stream: " << md_stream << '\n';
      out << "m: " << md_m << "  depth: " << md_depth << '\n';
      out << "prefix lengths:";
      for (std::size_t len : report.prefix_lengths) out << " " << len;
      out << '\n';
      out << "ratios:";
      for (const Rational& r : report.ratios) out << " " << rat_str(r);
      out << '\n';
      if (have_estimate) {
        out << "estimate (window " << md_window << "): " << rat_str(estimate) << " ~ "
            << decimal_string(estimate, 12) << '\n';
      } else {
        out << "estimate (window " << md_window << "): insufficient data" << '\n';
      }
    }
  });

  // ---- gen ---------------------------------------------------------------
  std::string gen_family;
  std::size_t gen_len = 0;
  bool gen_json = false;
  auto* gen_cmd = app.add_subcommand("gen", "emit a prefix of a named family");
  gen_cmd->add_option("family", gen_family,
                      "family spec: st_number, g, t, nonequiv, fib:m=..,r=..,s=.., periodic:U|W, bk:k=..")
      ->required();
  gen_cmd->add_option("--len", gen_len, "number of terms (defaults to the whole word for bk)");
  gen_cmd->add_flag("--json", gen_json, "JSON output");
  gen_cmd->callback([&] {
    Word w;
    const FamilySpec fam = FamilySpec::parse(gen_family);
    if (fam.name == "bk" || fam.name == "bk_word") {
      auto kv = mpalkit::detail::parse_kv(fam.args);
      if (!kv.count("k")) throw ParseError("bk family needs k");
      const Word b = bk_word(detail::parse_int_checked(kv["k"]));
      w = gen_len == 0 ? b : b.prefix(gen_len);
    } else {
      if (gen_len == 0) throw ParseError("--len is required for infinite families");
      const WordStream s = make_stream(gen_family);
      w = s.prefix(gen_len);
    }
    if (gen_json) {
      json j;
      j["family"] = gen_family;
      j["len"] = w.size();
      j["terms"] = word_json(w);
      out << j.dump(2) << '\n';
    } else {
      out << w.str() << '\n';
    }
  });

  // ---- quad --------------------------------------------------------------
  auto* quad_cmd = app.add_subcommand("quad", "quadratic irrational analysis");
  quad_cmd->require_subcommand(1);

  std::string qs_word;
  std::size_t qs_digits = 12;
  bool qs_json = false;
  auto* quad_solve = quad_cmd->add_subcommand("solve", "solve an eventually periodic word U|W");
  quad_solve->add_option("word", qs_word, "\"U|W\" (U possibly empty) or \"W\"")->required();
  quad_solve->add_option("--digits", qs_digits, "decimal digits (default 12)");
  quad_solve->add_flag("--json", qs_json, "JSON output");
  quad_solve->callback([&] {
    const EventuallyPeriodicWord e = EventuallyPeriodicWord::parse(qs_word);
    const QuadraticIrrational x = periodic_value(e);
    const auto f = x.pdq();
    const auto poly = x.minimal_polynomial();
    const bool reduced = is_reduced(x);
    const QuadraticIrrational conj = x.conjugate();
    if (qs_json) {
      json j;
      j["word"] = e.str();
      j["preperiod"] = word_json(e.preperiod());
      j["period"] = word_json(e.period());
      j["P"] = f.P.get_str();
      j["D"] = f.D.get_str();
      j["Q"] = f.Q.get_str();
      j["poly"] = {{"a", poly.a.get_str()}, {"b", poly.b.get_str()}, {"c", poly.c.get_str()}};
      j["poly_str"] = detail::poly_str(poly);
      j["reduced"] = reduced;
      j["value_decimal"] = x.decimal(qs_digits);
      j["conjugate_decimal"] = conj.decimal(qs_digits);
      out << j.dump(2) << '\n';
    } else {
      out << "word: " << e.str() << '\n';
      out << "value: " << x.str() << " ~ " << x.decimal(qs_digits) << '\n';
      out << "P: " << f.P.get_str() << "  D: " << f.D.get_str() << "  Q: " << f.Q.get_str() << '\n';
      out << "minimal polynomial: " << detail::poly_str(poly) << '\n';
      out << "reduced: " << (reduced ? "true" : "false") << '\n';
      out << "conjugate: " << conj.str() << " ~ " << conj.decimal(qs_digits) << '\n';
    }
  });

  std::string qb_word;
  unsigned qb_repeat = 2;
  bool qb_json = false;
  auto* quad_burger = quad_cmd->add_subcommand("burger", "decompose a period into 1-palindromes");
  quad_burger->add_option("word", qb_word, "the period W")->required();
  quad_burger->add_option("--max-repeat", qb_repeat, "rotations of W^j for j <= max-repeat (default 2)");
  quad_burger->add_flag("--json", qb_json, "JSON output");
  quad_burger->callback([&] {
    const Word w = Word::parse(qb_word);
    const BurgerSplit split = burger_split(w, qb_repeat);
    const char* verdict = split.verdict == BurgerVerdict::One    ? "one"
                          : split.verdict == BurgerVerdict::Two ? "two"
                                                                : "none";
    if (qb_json) {
      json j;
      j["period"] = word_json(w);
      j["max_repeat"] = qb_repeat;
      j["verdict"] = verdict;
      if (split.verdict != BurgerVerdict::None) {
        j["repeat"] = split.repeat;
        j["rotation"] = split.rotation;
        j["first"] = word_json(split.first);
        if (split.verdict == BurgerVerdict::Two) j["second"] = word_json(split.second);
      }
      out << j.dump(2) << '\n';
    } else {
      out << "verdict: " << verdict << " (max-repeat " << qb_repeat << ")";
      if (split.verdict == BurgerVerdict::One)
        out << ": (" << split.first.str() << ") from rotation " << split.rotation << " of W^"
            << split.repeat;
      if (split.verdict == BurgerVerdict::Two)
        out << ": (" << split.first.str() << ")+(" << split.second.str() << ") from rotation "
            << split.rotation << " of W^" << split.repeat;
      out << '\n';
    }
    rc = split.verdict == BurgerVerdict::None ? kExitFalse : kExitTrue;
  });

  // ---- audit -------------------------------------------------------------
  auto* audit_cmd = app.add_subcommand("audit", "finite-depth inequality and repetition audits");
  audit_cmd->require_subcommand(1);

  std::string as_stream;
  unsigned as_m = 0;
  std::string as_w = "8/5";
  std::size_t as_depth = 0;
  std::size_t as_digits = 12;
  bool as_json = false;
  auto* audit_schmidt = audit_cmd->add_subcommand("schmidt", "certify the approximation chain");
  audit_schmidt->add_option("--stream", as_stream, "stream spec")->required();
  audit_schmidt->add_option("--m", as_m, "the multiplier m")->required();
  audit_schmidt->add_option("--w", as_w, "exponent in (3/2, 2), rational a/b (default 8/5)");
  audit_schmidt->add_option("--depth", as_depth, "max audited prefix index")->required();
  audit_schmidt->add_option("--digits", as_digits, "decimal digits (default 12)");
  audit_schmidt->add_flag("--json", as_json, "JSON output");
  audit_schmidt->callback([&] {
    const WordStream s = make_stream(as_stream);
    const Rational w = parse_rational(as_w);
    const SchmidtAudit audit = schmidt_audit(s, as_m, w, as_depth);
    bool all_schmidt = true;
    for (const auto& r : audit.records) all_schmidt = all_schmidt && r.schmidt_certified;
    if (as_json) {
      json j;
      j["stream"] = as_stream;
      j["m"] = as_m;
      j["w"] = rat_str(w);
      j["depth"] = as_depth;
      j["alpha_lo"] = rat_str(audit.alpha.lo);
      j["alpha_hi"] = rat_str(audit.alpha.hi);
      json recs = json::array();
      for (const auto& r : audit.records) {
        json rj;
        rj["index"] = r.index;
        rj["p_i"] = r.p_i.get_str();
        rj["q_i"] = r.q_i.get_str();
        rj["p_prev"] = r.p_prev.get_str();
        rj["q_prev"] = r.q_prev.get_str();
        rj["lhs_lo"] = rat_str(r.lhs.lo);
        rj["lhs_hi"] = rat_str(r.lhs.hi);
        rj["bound1_lo"] = rat_str(r.bound1_lo);
        rj["bound1_hi"] = rat_str(r.bound1_hi);
        rj["bound2_decimal"] = detail::inverse_power_decimal(r.q_prev, w, as_digits);
        rj["schmidt_certified"] = r.schmidt_certified;
        rj["goal_certified"] = r.goal_certified;
        rj["approx_certified"] = r.approx_certified;
        recs.push_back(std::move(rj));
      }
      j["records"] = std::move(recs);
      if (audit.stable_from) j["stable_from"] = *audit.stable_from;
      j["all_schmidt_certified"] = all_schmidt;
      out << j.dump(2) << '\n';
    } else {
      out << "stream: " << as_stream << "  m: " << as_m << "  w: " << rat_str(w)
          << "  depth: " << as_depth << '\n';
      out << "alpha in [" << decimal_string(audit.alpha.lo, as_digits) << ", "
          << decimal_string(audit.alpha.hi, as_digits) << "]" << '\n';
      out << "records: " << audit.records.size() << '\n';
      for (const auto& r : audit.records) {
        out << "i=" << r.index << " schmidt=" << (r.schmidt_certified ? "ok" : "FAIL")
            << " goal=" << (r.goal_certified ? "ok" : "no")
            << " approx=" << (r.approx_certified ? "ok" : "no") << '\n';
      }
      if (audit.stable_from)
        out << "goal stable from index: " << *audit.stable_from << '\n';
      else
        out << "goal stable from index: none" << '\n';
      out << "all schmidt certified: " << (all_schmidt ? "yes" : "NO") << '\n';
    }
    rc = all_schmidt && (audit.records.empty() || audit.stable_from) ? kExitTrue : kExitFalse;
  });

  std::string ast_stream;
  std::size_t ast_depth = 0;
  std::size_t ast_period = 0;
  std::string ast_ratio;
  std::size_t ast_top = 10;
  bool ast_json = false;
  auto* audit_stammer = audit_cmd->add_subcommand("stammer", "prefix repetition scan");
  audit_stammer->add_option("--stream", ast_stream, "stream spec")->required();
  audit_stammer->add_option("--depth", ast_depth, "number of stream terms")->required();
  audit_stammer->add_option("--max-period", ast_period, "largest |V| to try")->required();
  audit_stammer->add_option("--offset-ratio", ast_ratio, "scan offsets with |U|/|V| <= ratio");
  audit_stammer->add_option("--top", ast_top, "evidence lines in text output (default 10)");
  audit_stammer->add_flag("--json", ast_json, "JSON output");
  audit_stammer->callback([&] {
    const WordStream s = make_stream(ast_stream);
    std::vector<RepetitionEvidence> evidence;
    if (ast_ratio.empty()) {
      evidence = initial_exponent_scan(s, ast_depth, ast_period);
    } else {
      evidence = offset_exponent_scan(s, ast_depth, ast_period, parse_rational(ast_ratio));
    }
    if (ast_json) {
      json j;
      j["stream"] = ast_stream;
      j["depth"] = ast_depth;
      j["max_period"] = ast_period;
      if (!ast_ratio.empty()) j["offset_ratio"] = rat_str(parse_rational(ast_ratio));
      json ev = json::array();
      for (const auto& e : evidence) {
        json ej;
        ej["period"] = e.period;
        ej["offset"] = e.offset;
        ej["w"] = rat_str(e.exponent);
        ej["offset_ratio"] = rat_str(e.offset_ratio);
        ej["matched"] = e.matched;
        ev.push_back(std::move(ej));
      }
      j["evidence"] = std::move(ev);
      out << j.dump(2) << '\n';
    } else {
      out << "stream: " << ast_stream << "  depth: " << ast_depth << "  max-period: " << ast_period
          << '\n';
      const std::size_t shown = std::min(ast_top, evidence.size());
      for (std::size_t i = 0; i < shown; ++i) {
        const auto& e = evidence[i];
        out << "period=" << e.period << " offset=" << e.offset << " w=" << rat_str(e.exponent)
            << " matched=" << e.matched << '\n';
      }
      out << "evidence entries: " << evidence.size() << " (at audited depth " << ast_depth << ")"
          << '\n';
    }
  });

  // ---- dispatch ----------------------------------------------------------
  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 takes reversed args
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return rc;
}

}  // namespace cli
}  // namespace mpalkit
