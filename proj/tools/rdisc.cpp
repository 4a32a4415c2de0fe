// Command-line front end: computes discriminants, the T_k factors and
// repeated discriminants of the general monic family, and certifies the
// factorization dD_k = c * a_n^d * M_k^2 * T_k^3 together with the degree
// and restriction lemmas.
//
// Exit codes: 0 success, 1 a mathematical check failed (witnesses printed),
// 2 usage error, 3 internal error.

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <rdisc/rdisc.hpp>

namespace {

using namespace rdisc;

constexpr int kMinDegree = 2;
constexpr int kMaxDegree = 8;  // repeated discriminants grow superexponentially

struct JobConfig {
  int n = 0;
  std::string k = "all";
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t seed = 1234577;
  bool letters = false;
};

std::vector<int> parse_k(const JobConfig& config) {
  if (config.k == "all") {
    std::vector<int> all;
    for (int k = 1; k <= config.n; ++k) all.push_back(k);
    return all;
  }
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(config.k, &used);
    if (used != config.k.size()) throw std::invalid_argument(config.k);
  } catch (const std::exception&) {
    throw UsageError("--k expects an integer or 'all'");
  }
  if (k < 1 || k > config.n) throw UsageError("--k out of range [1, n]");
  return {k};
}

std::optional<std::vector<std::string>> letter_names(const JobConfig& config) {
  if (!config.letters) return std::nullopt;
  static const char* letters = "abcdefgh";
  std::vector<std::string> names;
  for (int j = 0; j < config.n; ++j) names.emplace_back(1, letters[j]);
  return names;
}

std::unique_ptr<PolyCache> open_cache(const JobConfig& config) {
  if (config.cache_dir.empty()) return nullptr;
  auto cache = std::make_unique<PolyCache>(config.cache_dir);
  if (!cache->enabled()) {
    std::cerr << "warning: cache directory unusable, recomputing everything\n";
    return nullptr;
  }
  return cache;
}

void print_poly(const Polynomial& value, const JobConfig& config,
                const std::string& command, int k) {
  auto names = letter_names(config);
  if (config.format == "json") {
    Json j;
    j["command"] = command;
    j["n"] = config.n;
    if (k >= 1) j["k"] = k;
    j["poly"] = to_canonical_string(value, names ? &*names : nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_canonical_string(value, names ? &*names : nullptr) << "\n";
  }
}

int run_poly_command(const std::string& command, const JobConfig& config) {
  auto cache = open_cache(config);
  TablePtr table = VarTable::coefficients(config.n);
  auto compute = [&](int k) {
    if (command == "discriminant")
      return detail::with_store(cache.get(), "discriminant", config.n, 0, table,
                                [&] { return big_discriminant(config.n); });
    if (command == "tk")
      return detail::with_store(cache.get(), "tk", config.n, k, table,
                                [&] { return v_poly(config.n, k); });
    return detail::with_store(cache.get(), "ddisc", config.n, k, table,
                              [&] { return tilde_D(config.n, k); });
  };
  if (command == "discriminant") {
    print_poly(compute(0), config, command, -1);
    return 0;
  }
  for (int k : parse_k(config)) print_poly(compute(k), config, command, k);
  return 0;
}

int run_verify_theorem(const JobConfig& config) {
  auto cache = open_cache(config);
  auto ks = parse_k(config);
  PipelineOptions options;
  options.seed = config.seed;
  options.store = cache.get();
  // Fan out per k; each pipeline is independent and deterministic.
  std::vector<std::future<FactorizationReport>> futures;
  futures.reserve(ks.size());
  for (int k : ks)
    futures.push_back(std::async(std::launch::async, [&, k] {
      return factor_pipeline(config.n, k, options);
    }));
  auto names = letter_names(config);
  bool all_ok = true;
  for (auto& f : futures) {
    FactorizationReport report = f.get();
    all_ok = all_ok && report.all_passed();
    if (config.format == "json") {
      std::cout << theorem_report_to_json(report, names ? &*names : nullptr).dump(2)
                << "\n";
    } else {
      std::cout << theorem_report_to_text(report, names ? &*names : nullptr);
    }
  }
  return all_ok ? 0 : 1;
}

int run_verify_lemmas(const JobConfig& config) {
  if (config.n + 1 > kMaxDegree)
    throw UsageError("verify-lemmas needs n+1 <= 8 for the restriction step");
  std::vector<LemmaReport> reports;
  reports.push_back(verify_restriction_lemma(config.n));
  for (int k = 1; k <= config.n; ++k) {
    LemmaReport shapes = verify_specialized_forms(config.n, k);
    if (k == 1) {
      reports.push_back(shapes);
    } else {
      reports.back().cases.insert(reports.back().cases.end(),
                                  shapes.cases.begin(), shapes.cases.end());
    }
  }
  // Divisibility lemma: the a_n power of dD_k is d(n,k) and nothing else
  // divides the quotient.
  LemmaReport divisibility{"divisibility", config.n, {}};
  TablePtr table = VarTable::coefficients(config.n);
  auto cache = open_cache(config);
  for (int k = 1; k <= config.n; ++k) {
    Polynomial dd =
        detail::with_store(cache.get(), "ddisc", config.n, k, table,
                           [&] { return tilde_D(config.n, k); });
    LemmaCase item;
    item.id = "k=" + std::to_string(k);
    unsigned mult = var_multiplicity(dd, "a" + std::to_string(config.n));
    bool ok = mult == static_cast<unsigned>(d_exponent(config.n, k));
    Polynomial d0 = exact_div(
        dd, Polynomial::var_power(table, table->require_index("a" + std::to_string(config.n)), mult));
    for (int j = 1; j <= config.n && ok; ++j)
      ok = var_multiplicity(d0, "a" + std::to_string(j)) == 0;
    item.pass = ok;
    item.details = "a_n multiplicity " + std::to_string(mult);
    divisibility.cases.push_back(std::move(item));
  }
  reports.push_back(std::move(divisibility));

  bool all_ok = true;
  for (const auto& report : reports) {
    all_ok = all_ok && report.all_passed();
    if (config.format == "json") {
      std::cout << lemma_report_to_json(report).dump(2) << "\n";
    } else {
      std::cout << lemma_report_to_text(report);
    }
  }
  return all_ok ? 0 : 1;
}

int run_verify_qhd(const JobConfig& config) {
  auto cache = open_cache(config);
  PipelineOptions options;
  options.seed = config.seed;
  options.store = cache.get();
  std::vector<FactorizationReport> reports;
  for (int k = 1; k <= config.n; ++k)
    reports.push_back(factor_pipeline(config.n, k, options));
  LemmaReport report = verify_qhd(config.n, &reports);
  if (config.format == "json") {
    std::cout << lemma_report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << lemma_report_to_text(report);
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact discriminants and repeated-discriminant factorization "
               "certificates for the monic family x^n + a1*x^(n-1) + ... + an"};
  app.set_version_flag("--version", rdisc::kVersion);
  app.require_subcommand(1);

  JobConfig config;
  auto add_common = [&](CLI::App* cmd, int min_n, bool with_k, bool with_seed) {
    cmd->add_option("--n", config.n, "family degree")
        ->required()
        ->check(CLI::Range(std::max(min_n, kMinDegree), kMaxDegree));
    if (with_k) cmd->add_option("--k", config.k, "coefficient index or 'all'");
    cmd->add_option("--format", config.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--cache-dir", config.cache_dir, "content-addressed cache");
    if (with_seed) cmd->add_option("--seed", config.seed, "strata sampling seed");
    cmd->add_flag("--letters", config.letters,
                  "print variables as a,b,c,... instead of a1,a2,...");
  };

  CLI::App* discriminant = app.add_subcommand("discriminant", "print R = Res(P,P',x)");
  add_common(discriminant, 2, false, false);
  CLI::App* tk = app.add_subcommand("tk", "print the stratum factor T_k");
  add_common(tk, 3, true, false);
  CLI::App* ddisc = app.add_subcommand("ddisc", "print the repeated discriminant");
  add_common(ddisc, 3, true, false);
  CLI::App* theorem = app.add_subcommand(
      "verify-theorem", "certify dD_k = c * a_n^d * M_k^2 * T_k^3");
  add_common(theorem, 3, true, true);
  CLI::App* lemmas = app.add_subcommand(
      "verify-lemmas", "check the restriction, divisibility and shape lemmas");
  add_common(lemmas, 3, false, false);
  CLI::App* qhd = app.add_subcommand("verify-qhd",
                                     "check the quasi-homogeneous degree formulas");
  add_common(qhd, 3, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (discriminant->parsed() || tk->parsed() || ddisc->parsed()) {
      std::string command = discriminant->parsed() ? "discriminant"
                            : tk->parsed()         ? "tk"
                                                   : "ddisc";
      return run_poly_command(command, config);
    }
    if (theorem->parsed()) return run_verify_theorem(config);
    if (lemmas->parsed()) return run_verify_lemmas(config);
    if (qhd->parsed()) return run_verify_qhd(config);
    return 2;
  } catch (const rdisc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const rdisc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
