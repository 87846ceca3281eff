#pragma once

#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include "json.hpp"
#include "so4/diamagnetic.hpp"
#include "so4/matrix.hpp"
#include "so4/stark.hpp"
#include "so4/sumrules.hpp"

namespace so4 {

using Json = nlohmann::ordered_json;

inline Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::ExactMatch, Verdict::Mismatch, Verdict::IllDefined}) {
    if (verdict_name(v) == s) return v;
  }
  throw ParseError("unknown verdict '" + s + "'");
}

inline Json to_json(const SumRuleReport& r) {
  Json j;
  j["rule"] = r.rule;
  j["params"] = {{"n", r.label.n()}, {"m", r.label.m}, {"n1", r.label.n1}, {"n2", r.label.n2}, {"p", r.power}};
  j["lhs"] = r.lhs.to_string();
  j["rhs"] = render_rational(r.rhs);
  j["verdict"] = verdict_name(r.verdict);
  if (r.printed) {
    const auto& pr = *r.printed;
    Json pj;
    pj["lhs"] = pr.lhs ? Json(pr.lhs->to_string()) : Json(nullptr);
    pj["rhs"] = render_rational(pr.rhs);
    pj["verdict"] = verdict_name(pr.verdict);
    pj["minus_canonical"] = pr.minus_canonical ? Json(pr.minus_canonical->to_string()) : Json(nullptr);
    if (!pr.note.empty()) pj["note"] = pr.note;
    j["printed"] = std::move(pj);
  }
  return j;
}

inline SumRuleReport report_from_json(const Json& j) {
  SumRuleReport r;
  r.rule = j.at("rule").get<std::string>();
  const auto& p = j.at("params");
  r.label = {p.at("n1").get<int>(), p.at("n2").get<int>(), p.at("m").get<int>()};
  if (r.label.n() != p.at("n").get<int>()) throw ParseError("report params: n inconsistent with m, n1, n2");
  r.power = p.at("p").get<int>();
  r.lhs = RadicalSum::parse(j.at("lhs").get<std::string>());
  r.rhs = parse_rational(j.at("rhs").get<std::string>());
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  if (j.contains("printed")) {
    const auto& pj = j.at("printed");
    PrintedFormReport pr;
    if (!pj.at("lhs").is_null()) pr.lhs = RadicalSum::parse(pj.at("lhs").get<std::string>());
    pr.rhs = parse_rational(pj.at("rhs").get<std::string>());
    pr.verdict = parse_verdict(pj.at("verdict").get<std::string>());
    if (!pj.at("minus_canonical").is_null()) {
      pr.minus_canonical = RadicalSum::parse(pj.at("minus_canonical").get<std::string>());
    }
    if (pj.contains("note")) pr.note = pj.at("note").get<std::string>();
    r.printed = std::move(pr);
  }
  return r;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* kReportCsvHeader = "rule,n,m,n1,n2,p,lhs,rhs,verdict,printed_lhs,printed_rhs,printed_verdict";

inline std::string to_csv_row(const SumRuleReport& r) {
  std::ostringstream os;
  os << csv_field(r.rule) << ',' << r.label.n() << ',' << r.label.m << ',' << r.label.n1 << ',' << r.label.n2 << ','
     << r.power << ',' << csv_field(r.lhs.to_string()) << ',' << render_rational(r.rhs) << ','
     << verdict_name(r.verdict) << ',';
  if (r.printed) {
    const auto& pr = *r.printed;
    os << csv_field(pr.lhs ? pr.lhs->to_string() : "") << ',' << render_rational(pr.rhs) << ','
       << verdict_name(pr.verdict);
  } else {
    os << ",,";
  }
  return os.str();
}

inline std::string to_text(const SumRuleReport& r) {
  std::ostringstream os;
  os << r.rule << " n=" << r.label.n() << " m=" << r.label.m << " n1=" << r.label.n1 << " n2=" << r.label.n2
     << " p=" << r.power << ": lhs=" << r.lhs.to_string() << " rhs=" << render_rational(r.rhs) << " "
     << verdict_name(r.verdict);
  if (!r.exact_match()) os << " (difference " << r.difference().to_string() << ")";
  return os.str();
}

inline Json to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline ExactMatrix matrix_from_json(const Json& j) {
  ExactMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  const auto& e = j.at("entries");
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m(r, c) = RadicalSum::parse(e.at(r).at(c).get<std::string>());
  }
  return m;
}

inline std::string render_entry(const Rational& v) { return render_rational(v); }
inline std::string render_entry(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T>
Json to_json(const TransitionTable<T>& t) {
  Json rows = Json::array();
  for (const auto& row : t.entries) {
    Json jr = Json::array();
    for (const auto& v : row) {
      if constexpr (std::is_same_v<T, double>) {
        jr.push_back(v);
      } else {
        jr.push_back(render_entry(v));
      }
    }
    rows.push_back(std::move(jr));
  }
  Json j{{"n", t.n}};
  if (t.chi) j["chi"] = *t.chi;
  j["entries"] = std::move(rows);
  return j;
}

/// Rows l, columns l'; header "l\l',0,1,...".
template <class T>
std::string to_csv(const TransitionTable<T>& t) {
  std::ostringstream os;
  os << "l\\l'";
  for (int lp = 0; lp < t.n; ++lp) os << ',' << lp;
  os << '\n';
  for (int l = 0; l < t.n; ++l) {
    os << l;
    for (const auto& v : t.entries[static_cast<std::size_t>(l)]) os << ',' << render_entry(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace so4
