// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (exact equality unless noted) and prints one pass/fail line per criterion.
// Exit code 0 iff everything passed. Set RDISC_ACCEPT_N6=1 to extend the
// theorem certification to n=6 (no time bound).

#include <rdisc/rdisc.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace rdisc;

namespace {

struct CheckFailure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure{message};
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

/// Lazily computed shared state so expensive pipelines run exactly once.
struct Shared {
  bool n6_enabled = false;
  double n5_pipeline_ms = -1;
  double n6_pipeline_ms = -1;

  const std::vector<FactorizationReport>& reports(int n) {
    auto& slot = reports_[n];
    if (!slot) {
      auto start = std::chrono::steady_clock::now();
      std::vector<FactorizationReport> out;
      for (int k = 1; k <= n; ++k) out.push_back(factor_pipeline(n, k));
      double elapsed = ms_since(start);
      if (n == 5) n5_pipeline_ms = elapsed;
      if (n == 6) n6_pipeline_ms = elapsed;
      slot = std::move(out);
    }
    return *slot;
  }

  const Polynomial& discriminant(int n) {
    auto& slot = discriminants_[n];
    if (!slot) slot = big_discriminant(n);
    return *slot;
  }

 private:
  std::map<int, std::optional<std::vector<FactorizationReport>>> reports_;
  std::map<int, std::optional<Polynomial>> discriminants_;
};

Shared shared;

// --- criterion bodies ------------------------------------------------------

void criterion1_cubic_fixtures(std::vector<std::string>& notes) {
  auto start = std::chrono::steady_clock::now();
  require(big_discriminant(3) == fixtures::parse3(fixtures::kR3),
          "R(3) differs from the published cubic discriminant");
  for (int k = 1; k <= 3; ++k)
    require(tilde_D(3, k) == fixtures::tilde_d3(k),
            "repeated discriminant n=3 k=" + std::to_string(k) + " mismatch");
  double elapsed = ms_since(start);
  require(elapsed < 1000.0, "runtime " + std::to_string(elapsed) + " ms >= 1 s");
  notes.push_back("all three repeated discriminants verbatim");
}

void criterion2_quartic_fixtures(std::vector<std::string>& notes) {
  auto start = std::chrono::steady_clock::now();
  require(shared.discriminant(4) == fixtures::parse4(fixtures::kR4),
          "R(4) differs from the published quartic discriminant");
  struct Expected {
    const char* m;
    const char* t;
    long c;
  };
  const Expected expected[] = {{fixtures::kM41, fixtures::kT41, 6912},
                               {fixtures::kM42, fixtures::kT42, -4096},
                               {fixtures::kM43, fixtures::kT43, 6912},
                               {fixtures::kM44, fixtures::kT44, 4096}};
  const auto& reports = shared.reports(4);
  for (int k = 1; k <= 4; ++k) {
    const auto& report = reports[static_cast<std::size_t>(k - 1)];
    require(report.all_passed(), "pipeline check failed at n=4 k=" + std::to_string(k));
    require(report.M == fixtures::parse4(expected[k - 1].m),
            "M mismatch at k=" + std::to_string(k));
    require(report.T == fixtures::parse4(expected[k - 1].t),
            "T mismatch at k=" + std::to_string(k));
    require(report.c == make_rational(expected[k - 1].c, 1),
            "constant mismatch at k=" + std::to_string(k));
  }
  double elapsed = ms_since(start);
  require(elapsed < 5000.0, "runtime " + std::to_string(elapsed) + " ms >= 5 s");
  notes.push_back("eight factors and constants {6912, -4096, 6912, 4096} exact");
}

void criterion3_d_exponent_law(std::vector<std::string>& notes) {
  for (int n = 3; n <= 5; ++n) {
    const auto& reports = shared.reports(n);
    for (const auto& report : reports) {
      require(report.observed_multiplicity ==
                  static_cast<unsigned>(d_exponent(n, report.k)),
              "a_n multiplicity mismatch at n=" + std::to_string(n) +
                  " k=" + std::to_string(report.k));
      for (int j = 1; j <= n; ++j)
        require(var_multiplicity(report.D0, "a" + std::to_string(j)) == 0,
                "D0 divisible by a" + std::to_string(j) + " at n=" +
                    std::to_string(n) + " k=" + std::to_string(report.k));
    }
  }
  notes.push_back("min(1,n-k)+max(0,n-k-2) exact for n=3,4,5, all k");
}

void criterion4_quintic_certification(std::vector<std::string>& notes) {
  const auto& reports = shared.reports(5);
  std::string constants;
  for (const auto& report : reports) {
    require(report.all_passed(),
            "pipeline check failed at n=5 k=" + std::to_string(report.k));
    std::string diagnostic;
    require(confirm_report_numeric(shared.discriminant(5), report, 20,
                                   9000 + static_cast<std::uint64_t>(report.k),
                                   &diagnostic),
            "20-point oracle failed at k=" + std::to_string(report.k) + ": " +
                diagnostic);
    constants += (constants.empty() ? "" : ", ") + to_string(report.c);
  }
  require(shared.n5_pipeline_ms >= 0, "n=5 pipelines never ran");
  require(shared.n5_pipeline_ms < 600000.0,
          "n=5 certification took " + std::to_string(shared.n5_pipeline_ms) + " ms");
  notes.push_back("recovered c(5,k) = {" + constants + "}");
  notes.push_back("pipeline time " +
                  std::to_string(static_cast<long>(shared.n5_pipeline_ms)) +
                  " ms (may be attributed to an earlier criterion's clock)");
  if (shared.n6_enabled) {
    const auto& big = shared.reports(6);
    std::string c6;
    for (const auto& report : big) {
      require(report.all_passed(),
              "pipeline check failed at n=6 k=" + std::to_string(report.k));
      std::string diagnostic;
      require(confirm_report_numeric(shared.discriminant(6), report, 5,
                                     9600 + static_cast<std::uint64_t>(report.k),
                                     &diagnostic),
              "oracle failed at n=6 k=" + std::to_string(report.k));
      c6 += (c6.empty() ? "" : ", ") + to_string(report.c);
    }
    notes.push_back("n=6 enabled: recovered c(6,k) = {" + c6 + "}");
  } else {
    notes.push_back("n=6 skipped (set RDISC_ACCEPT_N6=1 to enable)");
  }
}

void criterion5_qhd_formulas(std::vector<std::string>& notes) {
  for (int n : {4, 5}) {
    LemmaReport report = verify_qhd(n, &shared.reports(n));
    for (const auto& item : report.cases)
      require(item.pass, "QHD case " + item.id + " failed at n=" +
                             std::to_string(n) + " (" + item.details + ")");
  }
  if (shared.n6_enabled) {
    LemmaReport report = verify_qhd(6, &shared.reports(6));
    require(report.all_passed(), "QHD failed at n=6");
    notes.push_back("n=6 included");
  }
  notes.push_back("all six degree formulas, e.g. QHD(dD_k)=n(n-1)^2+n^2(n-k-1)");
}

void criterion6_restriction_identities(std::vector<std::string>& notes) {
  for (int n : {3, 4}) {
    LemmaReport report = verify_restriction_lemma(n);
    int expected_sign = n % 2 == 0 ? 1 : -1;
    for (const auto& item : report.cases) {
      require(item.pass, "restriction case " + item.id + " failed at n=" +
                             std::to_string(n) + " -> " + std::to_string(n + 1));
      if (item.id == "R") {
        require(item.constants.size() == 1 &&
                    item.constants[0].second == make_rational(expected_sign, 1),
                "part (2) sign at n=" + std::to_string(n) +
                    " is not (-1)^n");
      } else {
        require(!item.constants.empty() && item.constants[0].second != 0,
                "recovered constant is zero for " + item.id);
      }
    }
  }
  notes.push_back("n=3->4 and 4->5; part (2) sign equals (-1)^n");
}

void criterion7_specialized_forms(std::vector<std::string>& notes) {
  for (int n : {4, 5}) {
    for (int k = 1; k <= n; ++k) {
      LemmaReport report = verify_specialized_forms(n, k);
      const auto& item = report.cases.front();
      require(item.pass, "specialized form failed at n=" + std::to_string(n) +
                             " k=" + std::to_string(k) + " (" + item.details + ")");
      require(item.constants.size() == 2 && item.constants[0].second != 0 &&
                  item.constants[1].second != 0,
              "extreme coefficients not both nonzero at n=" + std::to_string(n) +
                  " k=" + std::to_string(k));
      if (k == n || std::gcd(n, k) == 1)
        require(item.details.find("terms=2") != std::string::npos,
                "expected a two-term shape at n=" + std::to_string(n) +
                    " k=" + std::to_string(k) + " (" + item.details + ")");
    }
  }
  // gcd(4,2)=2: the restriction is the full square ladder, pinned exactly.
  Polynomial w = shared.discriminant(4);
  w = substitute(w, "a1", Int(0));
  w = substitute(w, "a3", Int(0));
  require(w == fixtures::parse4("16*a2^4*a4 - 128*a2^2*a4^2 + 256*a4^3"),
          "n=4 k=2 restriction is not 16*b^4*d - 128*b^2*d^2 + 256*d^3");
  notes.push_back(
      "two-term shape exact for gcd(n,k)=1; n=4,k=2 is the documented "
      "gcd=2 ladder 16*b^4*d - 128*b^2*d^2 + 256*d^3");
}

Polynomial det_cofactor(const PolyMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 1) return m.at(0, 0);
  Polynomial sum(m.table());
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    PolyMatrix minor(n - 1, m.table());
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, mc = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, mc++) = m.at(i, c);
      }
    Polynomial term = m.at(0, j) * det_cofactor(minor);
    sum = j % 2 == 0 ? sum + term : sum - term;
  }
  return sum;
}

void criterion8_property_suites(std::vector<std::string>& notes) {
  // (a) resultant specialization homomorphism, 100 admissible points.
  {
    std::mt19937_64 rng(8001);
    for (int n : {3, 4}) {
      Polynomial p = general_family(n);
      Polynomial dp = derivative(p, "x");
      Polynomial r = resultant(p, dp, "x");
      for (int i = 0; i < 50; ++i) {
        auto point = testgen::random_point(rng, p.table()->size());
        require(evaluate(r, point) == resultant_eval_oracle(p, dp, "x", point),
                "(a) specialization homomorphism failed at n=" + std::to_string(n));
      }
    }
  }
  // (b) Bareiss vs cofactor expansion on 200 random matrices of dim <= 4.
  {
    std::mt19937_64 rng(8002);
    TablePtr t = VarTable::coefficients(2);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t dim = 1 + rng() % 4;
      PolyMatrix m(dim, t);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          m.at(i, j) = rng() % 4 == 0 ? Polynomial::zero(t)
                                      : testgen::random_poly(rng, t, 3, 2);
      require(det_fraction_free(m) == det_cofactor(m),
              "(b) determinant mismatch at trial " + std::to_string(trial));
    }
  }
  // (c) shift invariance of R on 50 random (a, h).
  {
    std::mt19937_64 rng(8003);
    const Polynomial& r4 = shared.discriminant(4);
    for (int i = 0; i < 50; ++i) {
      auto point = testgen::random_point(rng, 4);
      Int h = static_cast<long>(rng() % 11) - 5;
      require(evaluate(r4, shift_coeffs(point, h)) == evaluate(r4, point),
              "(c) shift invariance failed");
    }
  }
  // (d) reversal invariance: Res(P_r, P_r', x) = a_n * Res(P, P', x) at 50
  // points with a_n != 0.
  {
    std::mt19937_64 rng(8004);
    TablePtr t = VarTable::family(4);
    Polynomial p = general_family(4);
    Polynomial dp = derivative(p, "x");
    Polynomial pr = parse_polynomial("a4*x^4 + a3*x^3 + a2*x^2 + a1*x + 1", t);
    Polynomial dpr = derivative(pr, "x");
    int tested = 0;
    while (tested < 50) {
      auto point = testgen::random_point(rng, t->size());
      if (point[t->require_index("a4")] == 0) continue;
      require(resultant_eval_oracle(pr, dpr, "x", point) ==
                  point[t->require_index("a4")] *
                      resultant_eval_oracle(p, dp, "x", point),
              "(d) reversal invariance failed");
      ++tested;
    }
  }
  // (e) strata vanishing: T_k on triple-root samples, M_k on two-double-root
  // samples, 50 each, n = 4 and 5.
  for (int n : {4, 5}) {
    auto sigma = sample_stratum(n, sigma_pattern(n), 50, 8100);
    auto maxwell = sample_stratum(n, maxwell_pattern(n), 50, 8200);
    for (const auto& report : shared.reports(n)) {
      for (const auto& sample : sigma)
        require(evaluate(report.T, sample.coeffs) == 0,
                "(e) T nonzero on a triple-root sample, n=" + std::to_string(n) +
                    " k=" + std::to_string(report.k));
      for (const auto& sample : maxwell)
        require(evaluate(report.M, sample.coeffs) == 0,
                "(e) M nonzero on a two-double-root sample, n=" +
                    std::to_string(n) + " k=" + std::to_string(report.k));
    }
  }
  // (f) R equals prod (z_i - z_j)^2 on 50 simple-root samples (n = 4, 5).
  for (int n : {4, 5}) {
    for (const auto& sample : sample_stratum(n, simple_pattern(n), 25, 8300)) {
      Int expected = 1;
      for (std::size_t i = 0; i < sample.roots.size(); ++i)
        for (std::size_t j = i + 1; j < sample.roots.size(); ++j)
          expected *= Int(sample.roots[i] - sample.roots[j]) *
                      Int(sample.roots[i] - sample.roots[j]);
      require(evaluate(shared.discriminant(n), sample.coeffs) == expected,
              "(f) root-difference product mismatch at n=" + std::to_string(n));
    }
  }
  notes.push_back("suites (a)-(f) at the stated sample counts");
}

void criterion9_infrastructure(std::vector<std::string>& notes) {
  // Serialize/parse round-trip on 500 random polynomials.
  {
    std::mt19937_64 rng(9001);
    TablePtr t = VarTable::coefficients(4);
    for (int i = 0; i < 500; ++i) {
      Polynomial a = testgen::random_poly(rng, t, 8, 5);
      require(parse_polynomial(to_canonical_string(a), t) == a,
              "round-trip failed at sample " + std::to_string(i));
    }
  }
  // Cache: hits byte-identical, corruption recovers.
  {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("rdisc_acceptance_cache_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    PolyCache cache(dir);
    require(cache.enabled(), "cache directory could not be created");
    std::string key = cache_key("ddisc", 4, 2);
    Polynomial value = fixtures::tilde_d4(2);
    cache.store(key, value);
    auto first = cache.load(key, value.table());
    require(first.has_value() && *first == value, "cache miss after store");
    std::ifstream in(cache.path_for(key));
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    cache.store(key, value);
    std::ifstream in2(cache.path_for(key));
    std::string bytes2((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
    require(bytes == bytes2, "cache bytes differ between identical stores");
    {
      std::ofstream out(cache.path_for(key), std::ios::trunc);
      out << "corrupted\n";
    }
    require(!cache.load(key, value.table()).has_value(),
            "corrupt cache entry was trusted");
    cache.store(key, value);
    require(cache.load(key, value.table()).has_value(), "cache repair failed");
    std::filesystem::remove_all(dir);
  }
  // JSON schema validation of a full report.
  {
    const auto& report = shared.reports(4)[1];
    std::string reason;
    require(validate_theorem_report_json(theorem_report_to_json(report), &reason),
            "JSON schema validation failed: " + reason);
  }
  notes.push_back("500 round-trips, cache determinism, JSON schema");
}

}  // namespace

int main() {
  shared.n6_enabled = []() {
    const char* env = std::getenv("RDISC_ACCEPT_N6");
    return env != nullptr && std::string(env) == "1";
  }();

  struct Criterion {
    int id;
    const char* label;
    std::function<void(std::vector<std::string>&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "n=3 fixtures (R and all repeated discriminants), < 1 s",
       criterion1_cubic_fixtures},
      {2, "n=4 fixtures (R, factors, constants), < 5 s", criterion2_quartic_fixtures},
      {3, "a_n exponent law and quotient divisibility, n=3,4,5",
       criterion3_d_exponent_law},
      {4, "full theorem certification at n=5 with 20-point oracle, < 10 min",
       criterion4_quintic_certification},
      {5, "quasi-homogeneous degree formulas, n=4,5", criterion5_qhd_formulas},
      {6, "restriction identities with recovered constants",
       criterion6_restriction_identities},
      {7, "specialized two-term shapes, n=4,5, all k", criterion7_specialized_forms},
      {8, "property suites (a)-(f)", criterion8_property_suites},
      {9, "serialization, cache and report schema", criterion9_infrastructure},
  };

  bool any_fail = false;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::string> notes;
    std::string failure;
    try {
      criterion.body(notes);
    } catch (const CheckFailure& f) {
      failure = f.message;
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    double elapsed = ms_since(start);
    std::ostringstream line;
    line << "criterion " << criterion.id << ": "
         << (failure.empty() ? "PASS" : "FAIL") << " - " << criterion.label
         << " [" << static_cast<long>(elapsed) << " ms]";
    if (!failure.empty()) line << "\n    reason: " << failure;
    for (const auto& note : notes) line << "\n    note: " << note;
    std::cout << line.str() << std::endl;
    if (!failure.empty()) any_fail = true;
  }
  return any_fail ? 1 : 0;
}
