// robba: command-line front end for the exact p-adic pipelines.
//
// Subcommands:
//   gseries   level-decomposed G-series congruences (exact rationals)
//   limit     crystalline-neighbour limits, L-invariant round trip
//   classify  mod-p reduction shapes, cross-parameterization checks
//
// All numeric output uses the bit-exact text grammars from robba/format.hpp;
// there are no decimal floats anywhere.  Exit codes: 0 success (and every
// requested verification passed), 1 a verification failed, 3 a computation
// rejected its inputs, CLI11's own nonzero codes for usage errors.

#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "robba/classifier.hpp"
#include "robba/colmez.hpp"
#include "robba/errors.hpp"
#include "robba/format.hpp"
#include "robba/limits.hpp"
#include "robba/rationals.hpp"

using nlohmann::ordered_json;
using namespace robba;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

bool is_odd_prime(long p) {
  const mpz_class z(p);
  return p >= 3 && p % 2 == 1 && mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

const CLI::Validator OddPrime(
    [](std::string& s) -> std::string {
      long v = 0;
      try {
        v = std::stol(s);
      } catch (...) {
        return "not an integer: " + s;
      }
      if (!is_odd_prime(v)) return "must be an odd prime: " + s;
      return {};
    },
    "ODD_PRIME");

// L-parameter grammar: inf | <rat> | <rat>+<rat>*pi | <rat>*pi, with a bare
// "pi" accepted for a coefficient of 1 (e.g. "5/2+pi").
LValue parse_lvalue(long p, const std::string& text) {
  if (text == "inf") return LValue::infinity(p);
  std::string body = text;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    body = body.substr(0, body.size() - 2);
    if (!body.empty() && body.back() == '*') body.pop_back();
    mpq_class a = 0;
    mpq_class b = 1;
    const size_t plus = body.find('+');
    if (plus != std::string::npos) {
      a = parse_rational(body.substr(0, plus));
      body = body.substr(plus + 1);
    } else if (!body.empty()) {
      return LValue::finite(QQuad(p, 0, parse_rational(body)));
    }
    if (!body.empty()) b = parse_rational(body);
    return LValue::finite(QQuad(p, a, b));
  }
  return LValue::finite(QQuad(p, parse_rational(body)));
}

std::string qquad_text(const QQuad& q) {
  if (q.b == 0) return format_rational(q.a);
  return format_rational(q.a) + "+" + format_rational(q.b) + "*pi";
}

std::string lvalue_text(const LValue& L) {
  return L.inf ? "inf" : qquad_text(L.v);
}

std::string nu_text(const Nu& nu) {
  switch (nu.kind) {
    case Nu::Kind::PlusInf:
      return "+inf";
    case Nu::Kind::MinusInf:
      return "-inf";
    default:
      return format_rational(nu.v);
  }
}

std::string residue_text(const ResidueElement& e) {
  if (e.c1 == 0) return std::to_string(e.c0);
  return std::to_string(e.c0) + "+" + std::to_string(e.c1) + "*g";
}

long budget_cap_from_env() {
  const char* raw = std::getenv("ROBBA_BUDGET_CAP");
  if (raw == nullptr) return std::numeric_limits<long>::max();
  try {
    const long v = std::stol(raw);
    if (v < 1) throw Error("ROBBA_BUDGET_CAP must be positive");
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    throw Error("ROBBA_BUDGET_CAP is not an integer");
  }
}

void emit(const ordered_json& j, const std::string& format,
          const std::vector<std::string>& text_lines) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const std::string& line : text_lines) std::cout << line << "\n";
  }
}

// Certified valuation of a difference: the exact valuation when the digits
// survive, otherwise the precision floor as a lower bound.
struct CertifiedV {
  mpq_class v;
  bool exact = false;
};

CertifiedV certified_quad(const QuadExtScalar& d) {
  CertifiedV out;
  if (!d.is_zero_at_precision()) {
    out.v = mpq_class(d.twice_valuation(), 2);
    out.v.canonicalize();
    out.exact = true;
    return out;
  }
  mpq_class bound;
  bool have = false;
  if (!d.x.is_exact_zero()) {
    bound = d.x.abs_precision();
    have = true;
  }
  if (!d.y.is_exact_zero()) {
    mpq_class yb = mpq_class(2 * d.y.abs_precision() + 1, 2);
    yb.canonicalize();
    if (!have || yb < bound) bound = yb;
    have = true;
  }
  if (!have) bound = 0;  // exact zero: report 0 as a trivial bound marker
  out.v = bound;
  out.exact = false;
  return out;
}

CertifiedV certified_scalar(const PadicScalar& d) {
  CertifiedV out;
  if (!d.is_zero_at_precision()) {
    out.v = d.valuation();
    out.exact = true;
  } else {
    out.v = d.is_exact_zero() ? 0 : d.abs_precision();
    out.exact = false;
  }
  return out;
}

ordered_json certified_json(const CertifiedV& c) {
  return ordered_json{{"v", format_rational(c.v)}, {"exact", c.exact}};
}

std::string certified_text(const CertifiedV& c) {
  return (c.exact ? "" : ">= ") + format_rational(c.v);
}

// ---------------------------------------------------------------------------
// gseries
// ---------------------------------------------------------------------------

struct GseriesOpts {
  long p = 3;
  long r = 1;
  long n_max = 1;
  long depth = 0;  // 0: default to n_max + 2
  std::string format = "text";
  bool check = false;
};

int cmd_gseries(const GseriesOpts& opt) {
  const long I = opt.depth > 0 ? opt.depth : opt.n_max + 2;
  if (I < opt.n_max) throw Error("gseries: depth must be at least n-max");
  const long cap = budget_cap_from_env();

  ordered_json j{{"command", "gseries"}, {"p", opt.p},       {"r", opt.r},
                 {"n_max", opt.n_max},   {"depth", I},       {"terms", {}},
                 {"congruences", {}},    {"all_hold", true}};
  std::vector<std::string> lines;
  lines.push_back("gseries p=" + std::to_string(opt.p) +
                  " r=" + std::to_string(opt.r) +
                  " n_max=" + std::to_string(opt.n_max) +
                  " depth=" + std::to_string(I));

  for (long n = 1; n <= opt.n_max; ++n) {
    GTermSpec spec;
    spec.p = opt.p;
    spec.r = opt.r;
    spec.n = n;
    spec.I = I;
    const long deg = g_term_degree(spec);
    if (deg > cap) {
      throw BudgetExceeded("gseries: term degree " + std::to_string(deg) +
                           " exceeds ROBBA_BUDGET_CAP");
    }
    j["terms"].push_back(ordered_json{{"n", n}, {"degree", deg}});
    lines.push_back("term n=" + std::to_string(n) + " degree " +
                    std::to_string(deg));
  }

  bool all_hold = true;
  for (long n = 1; n <= opt.n_max; ++n) {
    const CongruenceReport rep =
        check_congruence_streamed(opt.p, opt.r, n, opt.n_max, I);
    const mpq_class target(1, pow_p(opt.p, static_cast<unsigned long>(n)));
    ordered_json rj{{"n", n},
                    {"holds", rep.holds},
                    {"modulus_degree", rep.modulus_degree},
                    {"target", format_rational(target)}};
    std::string line = "congruence n=" + std::to_string(n) + " mod phi_" +
                       std::to_string(n) + "^" + std::to_string(opt.r + 1) +
                       " [deg " + std::to_string(rep.modulus_degree) +
                       "]: " + (rep.holds ? "holds" : "FAILS") + ", target " +
                       format_rational(target);
    if (!rep.holds) {
      ordered_json rem = ordered_json::array();
      for (const mpq_class& c : rep.remainder) rem.push_back(format_rational(c));
      rj["remainder"] = std::move(rem);
      line += " (nonzero remainder)";
    }
    j["congruences"].push_back(std::move(rj));
    lines.push_back(std::move(line));
    all_hold = all_hold && rep.holds;
  }
  j["all_hold"] = all_hold;
  lines.push_back(all_hold ? "all congruences hold"
                           : "some congruence FAILED");
  emit(j, opt.format, lines);
  return (opt.check && !all_hold) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

struct LimitOpts {
  long p = 5;
  long k = 4;
  std::string L = "0";
  long n_max = 4;
  long prec = 24;
  std::string format = "text";
  bool check = false;
};

int cmd_limit(const LimitOpts& opt) {
  SequenceParams params;
  params.p = opt.p;
  params.k = opt.k;
  params.L = parse_lvalue(opt.p, opt.L);
  const long r = opt.k - 2;

  ordered_json j{{"command", "limit"},          {"p", opt.p},
                 {"k", opt.k},                  {"L", lvalue_text(params.L)},
                 {"n_max", opt.n_max},          {"digits", opt.prec},
                 {"rows", ordered_json::array()}};
  std::vector<std::string> lines;
  lines.push_back("limit p=" + std::to_string(opt.p) +
                  " k=" + std::to_string(opt.k) + " L=" +
                  lvalue_text(params.L) + " n_max=" + std::to_string(opt.n_max));

  // Anchors of the rescaled coordinates.
  const mpz_class pr = pow_p(opt.p, static_cast<unsigned long>(r));
  const QQuad third_anchor_q =
      params.L.inf
          ? QQuad(opt.p, mpq_class(mpz_class(2 * pr)))
          : params.L.v * QQuad(opt.p, mpq_class(mpz_class(pr * (opt.p - 1))));
  const PadicScalar one_plus_p_pow = unit_pow(
      PadicScalar::from_integer(opt.p, 1 + opt.p, opt.prec + 12),
      mpz_class(opt.k - 1));
  const PadicScalar fourth_anchor =
      params.L.inf
          ? PadicScalar::zero(opt.p)
          : one_plus_p_pow *
                PadicScalar::from_integer(opt.p, opt.p - 1, opt.prec + 12) *
                iwasawa_log(
                    PadicScalar::from_integer(opt.p, 1 + opt.p, opt.prec + 12));

  std::vector<CertifiedV> third_vs;
  std::vector<CertifiedV> fourth_vs;
  for (long n = 1; n <= opt.n_max; ++n) {
    const SeqTerm term = sequence_term(params, n);
    const BlowupPoint pt = blowup_coords(params, n, opt.prec);
    const QuadExtScalar third = normalized_third(params, n, opt.prec);
    const PadicScalar fourth = normalized_fourth(params, n, opt.prec);
    const CertifiedV tv = certified_quad(
        third - QuadExtScalar::from_qquad(third_anchor_q, opt.prec));
    const CertifiedV fv = certified_scalar(fourth - fourth_anchor);
    third_vs.push_back(tv);
    fourth_vs.push_back(fv);

    j["rows"].push_back(ordered_json{
        {"n", n},
        {"k_n", term.k_n.get_str()},
        {"a_n", qquad_text(term.a_n)},
        {"xi1", format_quad(pt.xi1)},
        {"xi2", format_quad(pt.xi2)},
        {"third", format_quad(third)},
        {"fourth", format_scalar(fourth)},
        {"third_defect", certified_json(tv)},
        {"fourth_defect", certified_json(fv)}});
    lines.push_back("n=" + std::to_string(n) + " k_n=" + term.k_n.get_str() +
                    " a_n=" + qquad_text(term.a_n));
    lines.push_back("  xi = (" + format_quad(pt.xi1) + " : " +
                    format_quad(pt.xi2) + ")");
    lines.push_back("  third=" + format_quad(third) +
                    " defect v " + certified_text(tv));
    lines.push_back("  fourth=" + format_scalar(fourth) +
                    " defect v " + certified_text(fv));
  }

  const BlowupPoint lp = limit_point(params, opt.prec);
  const LimitType type = limit_type(lp);
  const LScalar rec = recover_semistable_parameter(params, opt.prec);
  const std::string type_text = type == LimitType::Crystalline
                                    ? "crystalline"
                                    : "semistable-noncrystalline";
  const std::string rec_text = rec.inf ? "inf" : format_quad(rec.value);
  j["limit"] = ordered_json{{"xi1", format_quad(lp.xi1)},
                            {"xi2", format_quad(lp.xi2)},
                            {"type", type_text}};
  j["recovered_L"] = rec_text;
  lines.push_back("limit xi = (" + format_quad(lp.xi1) + " : " +
                  format_quad(lp.xi2) + ") type " + type_text);
  lines.push_back("recovered L = " + rec_text);

  // Round trip: the recovered parameter equals the input.
  bool round_trip = false;
  if (params.L.inf) {
    round_trip = rec.inf;
  } else if (!rec.inf) {
    round_trip = same_value(
        rec.value, QuadExtScalar::from_qquad(params.L.v, opt.prec / 2 + 4));
  }
  // Convergence: certified defect exponents weakly increase wherever two
  // consecutive values are both exact.
  bool gaps_ok = true;
  for (size_t i = 1; i < third_vs.size(); ++i) {
    if (third_vs[i].exact && third_vs[i - 1].exact &&
        third_vs[i].v < third_vs[i - 1].v) {
      gaps_ok = false;
    }
    if (fourth_vs[i].exact && fourth_vs[i - 1].exact &&
        fourth_vs[i].v < fourth_vs[i - 1].v) {
      gaps_ok = false;
    }
  }
  j["round_trip"] = round_trip;
  j["gaps_weakly_increasing"] = gaps_ok;
  lines.push_back(std::string("round trip ") + (round_trip ? "ok" : "FAILED"));
  lines.push_back(std::string("defect exponents weakly increasing: ") +
                  (gaps_ok ? "yes" : "NO"));

  emit(j, opt.format, lines);
  return (opt.check && !(round_trip && gaps_ok)) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

ordered_json shape_json(const ReductionShape& s) {
  ordered_json j;
  switch (s.kind) {
    case ShapeKind::IrreducibleInertia:
      j["kind"] = "irreducible";
      j["c"] = s.c;
      break;
    case ShapeKind::ReducibleInertia:
      j["kind"] = "reducible-inertia";
      j["i"] = s.i;
      j["j"] = s.j;
      break;
    case ShapeKind::ReducibleFull:
      j["kind"] = "reducible-full";
      j["i"] = s.i;
      j["j"] = s.j;
      break;
  }
  if (s.has_lambda) j["lambda"] = residue_text(s.lambda);
  if (s.has_trace) {
    j["trace"] = ordered_json{{"value", residue_text(s.trace.trace)},
                              {"split", s.trace.split}};
  }
  j["conditional"] = s.conditional;
  j["basis"] = s.basis;
  return j;
}

std::string shape_text(const ReductionShape& s) {
  std::string out;
  switch (s.kind) {
    case ShapeKind::IrreducibleInertia:
      out = "ind(omega_2^" + std::to_string(s.c) + ")";
      break;
    case ShapeKind::ReducibleInertia:
      out = "omega^" + std::to_string(s.i) + " (+) omega^" +
            std::to_string(s.j);
      break;
    case ShapeKind::ReducibleFull:
      out = "omega^" + std::to_string(s.i) + " (+) omega^" +
            std::to_string(s.j);
      if (s.has_lambda) out += ", lambda = " + residue_text(s.lambda);
      if (s.has_trace) {
        out += ", trace = " + residue_text(s.trace.trace) +
               (s.trace.split ? " (split)" : " (nonsplit)");
      }
      break;
  }
  out += s.conditional ? "  [conditional]" : "  [unconditional]";
  return out;
}

struct ClassifyOpts {
  long p = 5;
  long k = 4;
  std::string L = "0";
  bool full = false;
  bool table = false;
  long n_max = 0;
  std::string format = "text";
  bool check = false;
};

// Representative nu for every region of the (p, k) ladder, bottom to top.
std::vector<std::pair<std::string, Nu>> ladder_regions(long k) {
  std::vector<std::pair<std::string, Nu>> regions;
  regions.emplace_back("crystalline-pole", Nu::minus_inf());
  mpq_class half(k - 2, 2);
  half.canonicalize();
  mpq_class below = -half;
  below.canonicalize();
  regions.emplace_back("below-ladder", Nu::finite(below));  // nu < 1 - half
  const long m_top = (k % 2 == 1) ? (k - 1) / 2 : (k - 2) / 2;
  for (long m = 1; m < m_top; ++m) {
    mpq_class rung = m - half;
    rung.canonicalize();
    mpq_class mid = rung + mpq_class(1, 2);
    mid.canonicalize();
    regions.emplace_back("rung m=" + std::to_string(m), Nu::finite(rung));
    regions.emplace_back("band m=" + std::to_string(m), Nu::finite(mid));
  }
  if (k % 2 == 1) {
    regions.emplace_back("middle", Nu::finite(mpq_class(1, 2)));
  } else {
    regions.emplace_back("rung m=" + std::to_string(m_top), Nu::finite(0));
    regions.emplace_back("above-ladder", Nu::finite(mpq_class(1, 2)));
  }
  regions.emplace_back("degenerate-locus", Nu::plus_inf());
  return regions;
}

int cmd_classify(const ClassifyOpts& opt) {
  const LValue L = parse_lvalue(opt.p, opt.L);
  const Nu nu = nu_invariant(opt.p, opt.k, L);
  const ReductionShape inertia = classify_inertia(opt.p, opt.k, nu);

  ordered_json j{{"command", "classify"},
                 {"p", opt.p},
                 {"k", opt.k},
                 {"L", lvalue_text(L)},
                 {"nu", nu_text(nu)},
                 {"shape", shape_json(inertia)}};
  std::vector<std::string> lines;
  lines.push_back("classify p=" + std::to_string(opt.p) +
                  " k=" + std::to_string(opt.k) + " L=" + lvalue_text(L));
  lines.push_back("nu = " + nu_text(nu));
  lines.push_back("shape: " + shape_text(inertia));

  if (opt.full) {
    const ReductionShape full = classify_full_small_weight(opt.p, opt.k, L);
    j["full"] = shape_json(full);
    lines.push_back("full: " + shape_text(full));
  }

  if (opt.table) {
    ordered_json rows = ordered_json::array();
    for (const auto& [label, rep] : ladder_regions(opt.k)) {
      const ReductionShape s = classify_inertia(opt.p, opt.k, rep);
      ordered_json row{{"p", opt.p},
                       {"k", opt.k},
                       {"region", label},
                       {"nu", nu_text(rep)},
                       {"shape", shape_json(s)}};
      rows.push_back(std::move(row));
      lines.push_back("row " + label + " (nu " + nu_text(rep) +
                      "): " + shape_text(s));
    }
    j["table"] = std::move(rows);
  }

  if (opt.n_max > 0) {
    ordered_json rows = ordered_json::array();
    for (long n = 1; n <= opt.n_max; ++n) {
      try {
        const ZigzagParams z = zigzag_params(opt.p, opt.k, L, n);
        ordered_json row{{"n", n}, {"t", z.t.get_str()}};
        if (z.tau_inf) {
          row["tau"] = "inf";
        } else {
          row["tau"] = format_rational(z.tau);
        }
        rows.push_back(std::move(row));
        lines.push_back("zigzag n=" + std::to_string(n) + " tau=" +
                        (z.tau_inf ? "inf" : format_rational(z.tau)) +
                        " t=" + z.t.get_str());
      } catch (const RegimeNotReached&) {
        rows.push_back(ordered_json{{"n", n}, {"regime_not_reached", true}});
        lines.push_back("zigzag n=" + std::to_string(n) +
                        " below the stable range");
      }
    }
    j["zigzag"] = std::move(rows);
  }

  bool all_hold = true;
  if (opt.check) {
    ordered_json checks;
    if (opt.k % 2 == 0) {
      if (L.inf) {
        checks["bm_skipped"] = "L = inf has no crystalline comparison";
      } else {
        const BmReport rep = bm_crosscheck(opt.p, opt.k, L);
        checks["bm_matches"] = rep.matches;
        checks["bm_eigenvalue"] = qquad_text(rep.a);
        checks["bm_valuation"] = nu_text(rep.va);
        all_hold = all_hold && rep.matches;
        lines.push_back(std::string("crosscheck (crystalline rows): ") +
                        (rep.matches ? "matches" : "MISMATCH"));
      }
    } else {
      const ReductionShape via_rows = gp_row(opt.p, opt.k, nu);
      const bool ok = same_inertia_shape(opt.p, via_rows, inertia);
      checks["gp_matches"] = ok;
      all_hold = all_hold && ok;
      lines.push_back(std::string("crosscheck (odd-weight rows): ") +
                      (ok ? "matches" : "MISMATCH"));
    }
    j["checks"] = std::move(checks);
    j["all_hold"] = all_hold;
    lines.push_back(all_hold ? "all checks hold" : "a check FAILED");
  }

  emit(j, opt.format, lines);
  return (opt.check && !all_hold) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-adic pipelines: G-series, limits, reductions"};
  app.require_subcommand(1);

  GseriesOpts g;
  CLI::App* gs = app.add_subcommand("gseries", "G-series congruence suite");
  gs->add_option("--p", g.p, "odd prime")->required()->check(OddPrime);
  gs->add_option("--r", g.r, "twist exponent r >= 1")
      ->required()
      ->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  gs->add_option("--n-max", g.n_max, "largest congruence level")
      ->required()
      ->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  gs->add_option("--depth", g.depth, "product depth I (default n-max + 2)")
      ->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  gs->add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  gs->add_flag("--check", g.check, "exit nonzero unless all congruences hold");

  LimitOpts l;
  CLI::App* lm = app.add_subcommand("limit", "crystalline-neighbour limits");
  lm->add_option("--p", l.p, "odd prime")->required()->check(OddPrime);
  lm->add_option("--k", l.k, "weight k >= 3")->required();
  lm->add_option("--L", l.L, "L-parameter: inf | <rat> | <rat>+<rat>*pi")
      ->required();
  lm->add_option("--n-max", l.n_max, "number of neighbours")
      ->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  lm->add_option("--prec", l.prec, "extra working digits")
      ->check(CLI::Range(1L, std::numeric_limits<long>::max()));
  lm->add_option("--format", l.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  lm->add_flag("--check", l.check,
               "exit nonzero unless the round trip and convergence hold");

  ClassifyOpts c;
  CLI::App* cl = app.add_subcommand("classify", "mod-p reduction shapes");
  cl->add_option("--p", c.p, "odd prime")->required()->check(OddPrime);
  cl->add_option("--k", c.k, "weight 3 <= k <= p+1")->required();
  cl->add_option("--L", c.L, "L-parameter: inf | <rat> | <rat>+<rat>*pi")
      ->required();
  cl->add_flag("--full", c.full, "small-weight table with unramified data");
  cl->add_flag("--table", c.table, "emit every ladder region");
  cl->add_option("--n-max", c.n_max, "zigzag neighbours to report")
      ->check(CLI::Range(0L, std::numeric_limits<long>::max()));
  cl->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cl->add_flag("--check", c.check,
               "exit nonzero unless the cross-parameterizations agree");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) return cmd_gseries(g);
    if (lm->parsed()) return cmd_limit(l);
    return cmd_classify(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
