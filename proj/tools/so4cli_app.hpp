#pragma once

// Command-line front end; kept in a header so the tests can drive it in-process.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "so4/io.hpp"
#include "so4/parallel.hpp"
#include "so4/so4.hpp"

namespace so4::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

enum class Format { Json, Csv, Text };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("expected an integer for ") + what + ", got '" + s + "'");
  }
}

inline double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("expected a number for ") + what + ", got '" + s + "'");
  }
}

inline HalfInt parse_half(const std::string& s) {
  try {
    return HalfInt::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

/// Rationals as "p/q", single radicals as "[-]sqrt(p/q)", anything else in the
/// general radical grammar.
inline std::string render_value(const RadicalSum& v) {
  if (v.is_rational()) return render_rational(v.rational_value());
  if (v.is_single_term()) return render_signed_sqrt(v);
  return v.to_string();
}

inline std::string render_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  Format format = Format::Text;
  bool inject_fault = false;
};

// ---------------------------------------------------------------------------
// table1

inline const ParabolicLabel kTable1Label{3, 1, 4};

inline int cmd_table1(Context& ctx) {
  const ParabolicLabel p = kTable1Label;
  std::vector<SumRuleReport> reports{sum_rule_l2(p), sum_rule_az(p, 2), sum_rule_az(p, 3), sum_rule_az(p, 4)};
  if (ctx.inject_fault) {
    // Test hook: perturb S1 to prove the exit status tracks the comparison.
    reports[0].lhs += RadicalSum(1);
    reports[0].verdict = reports[0].lhs == RadicalSum(reports[0].rhs) ? Verdict::ExactMatch : Verdict::Mismatch;
  }
  const std::vector<std::string> names{"S1", "S2", "S3", "S4"};
  const std::vector<std::string> forms{"[n^2-1+m^2-(n1-n2)^2]/2", "(n1-n2)^2", "(n1-n2)^3", "(n1-n2)^4"};
  bool all = true;
  for (const auto& r : reports) all = all && r.exact_match();

  if (ctx.format == Format::Json) {
    Json j;
    j["params"] = {{"n", p.n()}, {"m", p.m}, {"n1", p.n1}, {"n2", p.n2}};
    Json rows = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      Json r = to_json(reports[i]);
      r["name"] = names[i];
      r["analytic"] = forms[i];
      rows.push_back(std::move(r));
    }
    j["sums"] = std::move(rows);
    j["all_match"] = all;
    ctx.out << j.dump(2) << '\n';
  } else if (ctx.format == Format::Csv) {
    ctx.out << "name,analytic," << kReportCsvHeader << '\n';
    for (std::size_t i = 0; i < reports.size(); ++i) {
      ctx.out << names[i] << ',' << csv_field(forms[i]) << ',' << to_csv_row(reports[i]) << '\n';
    }
  } else {
    ctx.out << "n=" << p.n() << " m=" << p.m << " n1=" << p.n1 << " n2=" << p.n2 << " (q=" << p.q() << ")\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      ctx.out << names[i] << " = " << r.lhs.to_string() << "   " << forms[i] << " = " << render_rational(r.rhs)
              << "   " << verdict_name(r.verdict);
      if (!r.exact_match()) ctx.out << " (difference " << r.difference().to_string() << ")";
      ctx.out << '\n';
    }
    ctx.out << (all ? "all four sums match" : "MISMATCH in Table 1 sums") << '\n';
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& pr = reports[i].printed;
    if (pr && pr->verdict != Verdict::ExactMatch) {
      ctx.err << "warning: " << names[i] << " literal 3jm form is " << verdict_name(pr->verdict);
      if (pr->lhs) ctx.err << " (value " << pr->lhs->to_string() << ")";
      if (!pr->note.empty()) ctx.err << " (" << pr->note << ")";
      ctx.err << '\n';
    }
  }
  return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------
// verify

struct SweepPlan {
  int min_n = 1;
  int max_n = 0;
  std::optional<int> m, n1, n2;
  std::vector<int> powers{1, 2, 3, 4};
  std::string rule = "sum";  ///< "sum" (closed-form rules, p = 1..4) or "moment" (v.A_z^p.v, p = 0..8)
  int jobs = 1;
};

inline std::vector<ParabolicLabel> sweep_labels(const SweepPlan& s) {
  if (s.max_n < 1 || s.min_n < 1 || s.min_n > s.max_n) {
    throw UsageError("empty n range [" + std::to_string(s.min_n) + ", " + std::to_string(s.max_n) + "]");
  }
  std::vector<ParabolicLabel> out;
  for (const auto& p : all_labels(s.max_n, s.min_n)) {
    if ((s.m && p.m != *s.m) || (s.n1 && p.n1 != *s.n1) || (s.n2 && p.n2 != *s.n2)) continue;
    out.push_back(p);
  }
  if (out.empty()) throw UsageError("the filters select no parabolic state");
  return out;
}

inline std::vector<int> parse_powers(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "--powers"));
  if (out.empty()) throw UsageError("--powers is empty");
  return out;
}

inline int cmd_verify(Context& ctx, const SweepPlan& plan) {
  const auto labels = sweep_labels(plan);
  for (int p : plan.powers) {
    const bool ok = plan.rule == "sum" ? (p >= 1 && p <= 4) : (p >= 0 && p <= kDefaultMomentBound);
    if (!ok) throw UsageError("power " + std::to_string(p) + " outside the bound for rule '" + plan.rule + "'");
  }
  if (plan.jobs < 1) throw UsageError("--jobs must be positive");

  std::vector<std::pair<ParabolicLabel, int>> tasks;
  for (const auto& l : labels) {
    for (int p : plan.powers) tasks.emplace_back(l, p);
  }
  auto reports = parallel_map(tasks.size(), plan.jobs, [&](std::size_t i) {
    const auto& [label, p] = tasks[i];
    return plan.rule == "sum" ? sum_rule(label, p) : az_moment_generic(label, p);
  });
  if (ctx.inject_fault && !reports.empty()) {
    reports.front().lhs += RadicalSum(1);
    reports.front().verdict = Verdict::Mismatch;
  }

  std::size_t matches = 0, mismatches = 0, warnings = 0;
  for (const auto& r : reports) {
    (r.exact_match() ? matches : mismatches) += 1;
    if (r.printed && r.printed->verdict != Verdict::ExactMatch) ++warnings;
  }

  if (ctx.format == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    Json j;
    j["reports"] = std::move(arr);
    j["summary"] = {{"total", reports.size()}, {"exact_match", matches}, {"mismatch", mismatches},
                    {"printed_form_warnings", warnings}};
    ctx.out << j.dump(2) << '\n';
  } else if (ctx.format == Format::Csv) {
    ctx.out << kReportCsvHeader << '\n';
    for (const auto& r : reports) ctx.out << to_csv_row(r) << '\n';
  } else {
    for (const auto& r : reports) ctx.out << to_text(r) << '\n';
  }
  if (ctx.format == Format::Text) {
    for (const auto& r : reports) {
      if (r.printed && r.printed->verdict != Verdict::ExactMatch) {
        ctx.err << "warning: literal form of " << r.rule << " at n=" << r.label.n() << " m=" << r.label.m
                << " n1=" << r.label.n1 << " n2=" << r.label.n2 << " is " << verdict_name(r.printed->verdict) << '\n';
      }
    }
  }
  std::ostream& summary = ctx.format == Format::Text ? ctx.out : ctx.err;
  summary << "summary: " << reports.size() << " reports, " << matches << " exact-match, " << mismatches
          << " mismatch, " << warnings << " literal-form warnings\n";
  return mismatches == 0 ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------
// compute

inline void need_args(const std::vector<std::string>& a, std::size_t count, const std::string& usage) {
  if (a.size() != count) throw UsageError("expected: " + usage);
}

inline void emit_value(Context& ctx, const std::string& kind, const std::vector<std::string>& args,
                       const RadicalSum& v) {
  if (ctx.format == Format::Json) {
    Json j{{"kind", kind}, {"args", args}, {"value", render_value(v)}, {"radical", v.to_string()},
           {"approx", v.to_double()}};
    ctx.out << j.dump(2) << '\n';
  } else if (ctx.format == Format::Csv) {
    ctx.out << "kind,value,radical\n" << kind << ',' << csv_field(render_value(v)) << ',' << csv_field(v.to_string()) << '\n';
  } else {
    ctx.out << render_value(v) << '\n';
  }
}

inline void emit_matrix(Context& ctx, const std::string& kind, int n, int m, const ExactMatrix& mat,
                        const char* scale, const Json& extra) {
  if (ctx.format == Format::Json) {
    Json j{{"kind", kind}, {"n", n}, {"m", m}, {"scale", scale}, {"matrix", to_json(mat)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    ctx.out << j.dump(2) << '\n';
    return;
  }
  const char sep = ctx.format == Format::Csv ? ',' : '\t';
  if (ctx.format == Format::Text) ctx.out << kind << " n=" << n << " m=" << m << " in units of " << scale << '\n';
  for (int r = 0; r < mat.rows(); ++r) {
    for (int c = 0; c < mat.cols(); ++c) {
      if (c) ctx.out << sep;
      ctx.out << (ctx.format == Format::Csv ? csv_field(mat(r, c).to_string()) : mat(r, c).to_string());
    }
    ctx.out << '\n';
  }
}

inline int cmd_compute(Context& ctx, const std::string& kind, const std::vector<std::string>& a,
                       const std::string& form) {
  if (kind == "3j") {
    need_args(a, 6, "3j j1 j2 j3 m1 m2 m3");
    ThreeJmArgs t{parse_half(a[0]), parse_half(a[1]), parse_half(a[2]),
                  parse_half(a[3]), parse_half(a[4]), parse_half(a[5])};
    emit_value(ctx, kind, a, wigner_3jm(t));
  } else if (kind == "6j") {
    need_args(a, 6, "6j j1 j2 j3 j4 j5 j6");
    SixJArgs s;
    for (std::size_t i = 0; i < 6; ++i) s.j[i] = parse_half(a[i]);
    emit_value(ctx, kind, a, wigner_6j(s));
  } else if (kind == "cg") {
    need_args(a, 6, "cg j1 m1 j2 m2 j3 m3");
    emit_value(ctx, kind, a,
               clebsch_gordan(parse_half(a[0]), parse_half(a[1]), parse_half(a[2]), parse_half(a[3]),
                              parse_half(a[4]), parse_half(a[5])));
  } else if (kind == "bcoeff") {
    need_args(a, 4, "bcoeff n1 n2 m l [--form 3jm|regge|3f2|3f2-literal]");
    ParabolicLabel p{parse_int(a[0], "n1"), parse_int(a[1], "n2"), parse_int(a[2], "m")};
    const int l = parse_int(a[3], "l");
    RadicalSum v;
    if (form == "3jm") {
      v = b_coeff(p, l);
    } else if (form == "regge") {
      v = b_coeff_regge_route(p, l);
    } else if (form == "3f2") {
      v = b_coeff_3f2(p, l);
    } else if (form == "3f2-literal") {
      v = b_coeff_3f2_printed(p, l);
    } else {
      throw UsageError("unknown --form '" + form + "'");
    }
    emit_value(ctx, kind, a, v);
  } else if (kind == "beta") {
    need_args(a, 3, "beta n l m");
    emit_value(ctx, kind, a, beta(parse_int(a[0], "n"), parse_int(a[1], "l"), parse_int(a[2], "m")).to_radical());
  } else if (kind == "pbar") {
    if (a.size() != 1 && a.size() != 2) throw UsageError("expected: pbar n [l]");
    const int n = parse_int(a[0], "n");
    if (n < 1) throw UsageError("n must be positive");
    PBarTable t = p_bar_table(n);
    if (a.size() == 2) {
      const int l = parse_int(a[1], "l");
      if (l < 0 || l >= n) throw UsageError("l outside [0, n-1]");
      t.entries = {t.entries[static_cast<std::size_t>(l)]};
      if (ctx.format == Format::Json) {
        Json j{{"kind", kind}, {"n", n}, {"l", l}, {"row", to_json(t)["entries"][0]}};
        ctx.out << j.dump(2) << '\n';
      } else {
        const char sep = ctx.format == Format::Csv ? ',' : ' ';
        for (std::size_t i = 0; i < t.entries[0].size(); ++i) {
          if (i) ctx.out << sep;
          ctx.out << render_rational(t.entries[0][i]);
        }
        ctx.out << '\n';
      }
    } else if (ctx.format == Format::Json) {
      ctx.out << to_json(t).dump(2) << '\n';
    } else {
      ctx.out << to_csv(t);
    }
  } else if (kind == "p") {
    if (a.size() == 2) {
      const int n = parse_int(a[0], "n");
      if (n < 1) throw UsageError("n must be positive");
      PTable t = p_table(n, parse_double(a[1], "chi"));
      ctx.out << (ctx.format == Format::Json ? to_json(t).dump(2) + "\n" : to_csv(t));
    } else if (a.size() == 4) {
      const double v = p_transition(parse_int(a[0], "n"), parse_int(a[1], "l"), parse_int(a[2], "l'"),
                                    parse_double(a[3], "chi"));
      if (ctx.format == Format::Json) {
        ctx.out << Json{{"kind", kind}, {"args", a}, {"value", v}}.dump(2) << '\n';
      } else {
        ctx.out << render_double(v) << '\n';
      }
    } else {
      throw UsageError("expected: p n chi  or  p n l l' chi");
    }
  } else if (kind == "h1" || kind == "h2") {
    need_args(a, 2, kind + " n m");
    const int n = parse_int(a[0], "n"), m = parse_int(a[1], "m");
    if (n < 1 || std::abs(m) > n - 1) throw UsageError("no (n, m) block");
    if (kind == "h1") {
      emit_matrix(ctx, kind, n, m, h1_matrix(n, m), kH1ScaleText,
                  Json{{"equals_invariant_form", h1_matrix(n, m) == h1_invariant_matrix(n, m)}});
    } else {
      const SymmetryReport rep = h2_symmetry_report(n, m);
      emit_matrix(ctx, kind, n, m, h2_matrix(n, m), kH2ScaleText,
                  Json{{"symmetric", rep.symmetric}, {"asymmetric_groups", rep.asymmetric_rows}});
      if (ctx.format == Format::Text) {
        ctx.out << "symmetric: " << (rep.symmetric ? "yes" : "no") << '\n';
        for (const auto& g : rep.asymmetric_rows) ctx.out << "asymmetric on its own: " << g << '\n';
      }
    }
  } else {
    throw UsageError("unknown kind '" + kind + "' (3j, 6j, cg, bcoeff, beta, pbar, p, h1, h2)");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact SO(4) hydrogen toolkit: Wigner symbols, basis transforms, sum rules"};
  app.require_subcommand(1);

  std::string format = "text";
  bool inject_fault = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--inject-fault", inject_fault, "Corrupt the first result (exit-status test hook)")->group("");

  auto* table1 = app.add_subcommand("table1", "Reproduce the n=9, m=4, n1=3, n2=1 sums");
  table1->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  SweepPlan plan;
  std::string powers = "1,2,3,4";
  int m = 0, n1 = 0, n2 = 0;
  auto* verify = app.add_subcommand("verify", "Verify sum rules over a parameter sweep");
  verify->add_option("--max-n", plan.max_n, "Largest principal quantum number")->required();
  verify->add_option("--min-n", plan.min_n, "Smallest principal quantum number");
  auto* m_opt = verify->add_option("--m", m, "Only this m");
  auto* n1_opt = verify->add_option("--n1", n1, "Only this n1");
  auto* n2_opt = verify->add_option("--n2", n2, "Only this n2");
  verify->add_option("--powers", powers, "Comma-separated powers");
  verify->add_option("--rule", plan.rule, "sum: closed-form rules; moment: generic A_z^p contraction")
      ->check(CLI::IsMember({"sum", "moment"}));
  verify->add_option("--jobs", plan.jobs, "Worker threads");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  std::string kind, bform = "3jm";
  std::vector<std::string> args;
  auto* compute = app.add_subcommand("compute", "Evaluate one quantity");
  compute->add_option("kind", kind, "3j, 6j, cg, bcoeff, beta, pbar, p, h1, h2")->required();
  compute->add_option("args", args, "Arguments for the kind");
  compute->add_option("--form", bform, "bcoeff route: 3jm, regge, 3f2, 3f2-literal");
  compute->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
  // Negative numbers are arguments, not flags.
  compute->allow_extras(false);
  compute->positionals_at_end(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  Context ctx{out, err};
  ctx.format = format == "json" ? Format::Json : (format == "csv" ? Format::Csv : Format::Text);
  ctx.inject_fault = inject_fault;
  try {
    if (*table1) return cmd_table1(ctx);
    if (*verify) {
      if (*m_opt) plan.m = m;
      if (*n1_opt) plan.n1 = n1;
      if (*n2_opt) plan.n2 = n2;
      plan.powers = parse_powers(powers);
      return cmd_verify(ctx, plan);
    }
    return cmd_compute(ctx, kind, args, bform);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const TableCapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace so4::cli
