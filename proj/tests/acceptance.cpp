// One line per acceptance criterion; the exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "so4/so4.hpp"

using namespace so4;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %s  %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<SumRuleReport> sweep_reports;

ExactMatrix identity(int dim) {
  ExactMatrix id(dim, dim);
  for (int i = 0; i < dim; ++i) id(i, i) = RadicalSum(1);
  return id;
}

}  // namespace

int main() {
  criterion("AC1", "Table 1 (n=9, m=4, n1=3, n2=1)", [] {
    const auto t0 = Clock::now();
    const ParabolicLabel p{3, 1, 4};
    const Rational want[4] = {46, 4, 8, 16};
    Outcome o;
    std::ostringstream os;
    for (int k = 1; k <= 4; ++k) {
      const auto r = sum_rule(p, k);
      const bool ok = r.exact_match() && r.lhs == RadicalSum(want[k - 1]);
      o.pass = o.pass && ok;
      os << (k > 1 ? ", " : "") << "S" << k << "=" << r.lhs.to_string();
    }
    const double t = elapsed(t0);
    if (t >= 1.0) o.pass = false;
    o.detail = os.str() + (t >= 1.0 ? " (over 1 s)" : "");
    return o;
  });

  criterion("AC2", "sum-rule sweep n<=12, p=1..4, single thread", [] {
    const auto t0 = Clock::now();
    const auto labels = all_labels(12);
    std::size_t bad = 0;
    for (const auto& p : labels)
      for (int k = 1; k <= 4; ++k) {
        sweep_reports.push_back(sum_rule(p, k));
        if (!sweep_reports.back().exact_match()) ++bad;
      }
    const double t = elapsed(t0);
    std::ostringstream os;
    os << sweep_reports.size() << " reports over " << labels.size() << " labels, " << bad << " mismatches";
    if (t >= 120.0) os << " (over 2 min)";
    return Outcome{bad == 0 && t < 120.0, os.str()};
  });

  criterion("AC3", "generic A_z moment equals (n1-n2)^p for p<=6, n<=10", [] {
    std::size_t total = 0, bad = 0;
    for (const auto& p : all_labels(10))
      for (int k = 0; k <= 6; ++k) {
        ++total;
        if (!az_moment_generic(p, k).exact_match()) ++bad;
      }
    return Outcome{bad == 0, std::to_string(total) + " moments, " + std::to_string(bad) + " mismatches"};
  });

  criterion("AC4", "B orthogonality/completeness n<=15; Regge vs 3F2 squares n<=12, m>=0", [] {
    std::size_t blocks = 0, bad_blocks = 0;
    for (int n = 1; n <= 15; ++n)
      for (int m = -(n - 1); m <= n - 1; ++m) {
        const ExactMatrix b = b_matrix(n, m);
        const ExactMatrix id = identity(b.rows());
        ++blocks;
        if (b.transpose() * b != id || b * b.transpose() != id) ++bad_blocks;
      }
    std::size_t pairs = 0, bad_pairs = 0, literal_off = 0;
    for (int n = 1; n <= 12; ++n)
      for (int m = 0; m <= n - 1; ++m)
        for (const auto& p : parabolic_block(n, m))
          for (int l = m; l <= n - 1; ++l) {
            const RadicalSum r = b_coeff_regge_route(p, l), t = b_coeff_3f2(p, l);
            ++pairs;
            if (r * r != t * t) ++bad_pairs;
            const RadicalSum lit = b_coeff_3f2_printed(p, l);
            if (lit * lit != r * r) ++literal_off;
          }
    std::ostringstream os;
    os << blocks << " blocks (" << bad_blocks << " bad), " << pairs << " coefficient pairs (" << bad_pairs
       << " bad); literal 3F2 radicand differs on " << literal_off;
    return Outcome{bad_blocks == 0 && bad_pairs == 0, os.str()};
  });

  criterion("AC5", "spherical A_z intertwines to multiplication by q, n<=12", [] {
    std::size_t states = 0, bad = 0;
    for (int n = 1; n <= 12; ++n)
      for (int m = -(n - 1); m <= n - 1; ++m)
        for (const auto& p : parabolic_block(n, m)) {
          const auto st = ManifoldState::unit_parabolic(p);
          ++states;
          if (to_parabolic(az_apply_spherical(to_spherical(st))) != RadicalSum(p.q()) * st) ++bad;
        }
    return Outcome{bad == 0, std::to_string(states) + " parabolic states, " + std::to_string(bad) + " failures"};
  });

  criterion("AC6", "time-averaged Stark closed forms", [] {
    std::size_t bad_uniform = 0, bad_6j = 0, p1_agree = 0, p1_total = 0, p1_candidate_bad = 0;
    for (int n = 1; n <= 20; ++n)
      for (int lp = 0; lp < n; ++lp)
        if (p_bar(n, 0, lp) != Rational(1, n) || p_bar_closed(n, lp, 0) != Rational(1, n)) ++bad_uniform;
    for (int n = 1; n <= 15; ++n)
      for (int l = 0; l < n; ++l)
        for (int lp = 0; lp < n; ++lp)
          if (!p_bar_6j_report(n, l, lp).all_j_agrees()) ++bad_6j;
    for (int n = 2; n <= 20; ++n)
      for (int lp = 0; lp < n; ++lp) {
        const auto r = p_bar_closed_report(n, lp, 1);
        ++p1_total;
        if (r.printed == r.oracle) ++p1_agree;
        if (!r.candidate || *r.candidate != r.oracle) ++p1_candidate_bad;
      }
    std::ostringstream os;
    os << "1/n rule " << bad_uniform << " bad; 6j vs double sum " << bad_6j << " bad; P(1,l') closed form "
       << (p1_agree == p1_total ? "agrees" : "DISAGREES") << " with the oracle on " << p1_agree << "/" << p1_total
       << " (tail -2l(l+1)+1 agrees on " << (p1_total - p1_candidate_bad) << "/" << p1_total << ")";
    return Outcome{bad_uniform == 0 && bad_6j == 0, os.str()};
  });

  criterion("AC7", "P(l,l';chi) unitarity and spectral vs coefficient form", [] {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> dist(0.0, 20.0);
    std::vector<double> chis(20);
    for (double& c : chis) c = dist(rng);
    double worst_row = 0.0, worst_pair = 0.0;
    for (int n = 1; n <= 10; ++n)
      for (double chi : chis)
        for (int l = 0; l < n; ++l) {
          double row = 0.0;
          for (int lp = 0; lp < n; ++lp) {
            const double p = p_transition(n, l, lp, chi);
            row += p;
            worst_pair = std::max(worst_pair, std::abs(p - p_transition_herrick(n, l, lp, chi)));
          }
          worst_row = std::max(worst_row, std::abs(row - 1.0));
        }
    std::ostringstream os;
    os << "max |row-1| = " << worst_row << ", max spectral-coefficient gap = " << worst_pair;
    return Outcome{worst_row <= 1e-12 && worst_pair <= 1e-12, os.str()};
  });

  criterion("AC8", "H1 dual form n<=10; H2 symmetry", [] {
    std::size_t bad = 0, blocks = 0, asym_total = 0;
    std::set<std::string> groups;
    for (int n = 1; n <= 10; ++n)
      for (int m = -(n - 1); m <= n - 1; ++m) {
        ++blocks;
        if (h1_matrix(n, m) != h1_invariant_matrix(n, m)) ++bad;
      }
    for (int n = 1; n <= 8; ++n)
      for (int m = -(n - 1); m <= n - 1; ++m) {
        const auto r = h2_symmetry_report(n, m);
        if (!r.symmetric) ++asym_total;
        groups.insert(r.asymmetric_rows.begin(), r.asymmetric_rows.end());
      }
    std::ostringstream os;
    os << "H1 " << blocks << " blocks, " << bad << " differ; H2 total asymmetric in " << asym_total
       << " blocks (n<=8); printed groups asymmetric on their own:";
    for (const auto& g : groups) os << " [" << g << "]";
    return Outcome{bad == 0, os.str()};
  });

  criterion("AC9", "asymptotic B^2(l) vs exact q-average, m=0, n=50,100,200, l=1..3", [] {
    Outcome o;
    std::ostringstream os;
    os.precision(4);
    for (int l = 1; l <= 3; ++l) {
      double prev = INFINITY;
      os << (l > 1 ? "; " : "") << "l=" << l << " err";
      for (int n : {50, 100, 200}) {
        Rational sum = 0;
        for (const auto& p : parabolic_block(n, 0)) {
          const RadicalSum b = b_coeff(p, l);
          sum += (b * b).rational_value();
        }
        const double avg = to_double(sum / n);
        const double err = std::abs(b_squared_asymptotic(n, l) - avg) / avg;
        os << " " << err;
        if (!(err < prev)) o.pass = false;
        prev = err;
      }
    }
    o.detail = os.str() + " (the q-average is exactly 1/n)";
    return o;
  });

  {
    // Not a criterion: the same formula against the extreme state |q| = n-1.
    std::ostringstream os;
    os.precision(4);
    for (int l = 1; l <= 3; ++l) {
      os << (l > 1 ? "; " : "") << "l=" << l << " err";
      for (int n : {50, 100, 200}) {
        const RadicalSum b = b_coeff({n - 1, 0, 0}, l);
        const double exact = to_double((b * b).rational_value());
        os << " " << std::abs(b_squared_asymptotic(n, l) - exact) / exact;
      }
    }
    std::printf("AC9 note  extreme state q=n-1 instead of the q-average: %s\n", os.str().c_str());
  }

  criterion("AC10", "every sweep LHS collapses to a rational", [] {
    std::size_t irrational = 0;
    for (const auto& r : sweep_reports)
      if (!r.lhs.is_rational()) ++irrational;
    return Outcome{!sweep_reports.empty() && irrational == 0,
                   std::to_string(sweep_reports.size()) + " LHS values, " + std::to_string(irrational) +
                       " with surviving radicals"};
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
