// Command-line front end: single Gauss/Jacobi sum evaluations, verification
// sweeps over the property suites, and closed-form vs brute benchmarks.
//
// Exit codes: 0 success, 1 verify found failures, 2 invalid flags or
// arguments, 3 term guard exceeded, 4 unsupported regime without a fallback,
// 5 I/O failure.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "charsum/charsum.hpp"

namespace {

using namespace charsum;

volatile double g_sink = 0.0;

/// Brute-force guard honoring the CHARSUM_TERM_GUARD environment override.
/// Returns the override when set, otherwise the supplied default.
uint64_t guard_from_env(uint64_t fallback) {
  const char* raw = std::getenv("CHARSUM_TERM_GUARD");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string text(raw);
  size_t pos = 0;
  unsigned long long parsed = 0;
  try {
    parsed = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("CHARSUM_TERM_GUARD is not a positive integer: " + text);
  }
  if (pos != text.size() || parsed == 0)
    throw std::invalid_argument("CHARSUM_TERM_GUARD is not a positive integer: " + text);
  return static_cast<uint64_t>(parsed);
}

std::string exact_to_string(const ExactValue& v) {
  if (v.is_zero) return "0";
  std::ostringstream os;
  if (v.scale != 1) os << v.scale << " * ";
  if (v.half_exp != 0) {
    os << v.base << "^(" << v.half_exp << "/2)";
    if (v.phase.num != 0) os << " * ";
  }
  if (v.phase.num != 0)
    os << "e(" << v.phase.num << "/" << v.phase.den << ")";
  else if (v.half_exp == 0)
    os << 1;
  return os.str();
}

/// One evaluation report. JSON is a single object per line and round-trips
/// through the documented schema; text is a small human-readable block. Both
/// carry the generator convention so character labels are self-describing.
void print_result(const std::string& head, const UnitGroupContext& ctx, const SumResult& res,
                  const std::string& format) {
  if (format == "json") {
    nlohmann::json obj = io::to_json(res);
    obj["q"] = ctx.q();
    obj["generators"] = ctx.generator_description();
    std::cout << obj.dump() << '\n';
    return;
  }
  std::cout << head << " mod " << ctx.q() << "\n";
  std::cout << "  generators: " << ctx.generator_description() << "\n";
  std::cout << "  method: " << to_string(res.method) << "\n";
  if (res.exact) std::cout << "  exact: " << exact_to_string(res.value) << "\n";
  std::cout << "  value: (" << res.approx.real() << ", " << res.approx.imag() << ")\n";
  std::cout << "  terms: " << res.terms << "\n";
  if (!res.notes.empty()) std::cout << "  notes: " << res.notes << "\n";
}

GaussMethod parse_gauss_method(const std::string& name) {
  if (name == "auto") return GaussMethod::automatic;
  if (name == "brute") return GaussMethod::brute;
  if (name == "closed") return GaussMethod::closed;
  throw std::invalid_argument("unknown gauss method: " + name);
}

JacobiMethod parse_jacobi_method(const std::string& name) {
  if (name == "auto") return JacobiMethod::automatic;
  if (name == "brute") return JacobiMethod::brute;
  if (name == "closed") return JacobiMethod::closed;
  if (name == "quotient") return JacobiMethod::quotient;
  if (name == "direct") return JacobiMethod::direct;
  throw std::invalid_argument("unknown jacobi method: " + name);
}

struct GaussArgs {
  int64_t p = 0;
  int64_t m = 0;
  int64_t c = 0;
  int64_t sign = 0;
  std::string method = "auto";
  std::string format = "json";
};

int cmd_gauss(const GaussArgs& args) {
  if (args.p != 2 && args.sign != 0)
    throw std::invalid_argument("--sign applies to p = 2 only");
  UnitGroupContext ctx = UnitGroupContext::build(args.p, args.m);
  Character chi = Character::make(ctx, args.c, args.sign);
  SumResult res = gauss_eval(chi, parse_gauss_method(args.method), guard_from_env(kGaussTermGuard));
  std::ostringstream head;
  head << "G(chi[c=" << chi.c();
  if (args.p == 2) head << ",sign=" << chi.e();
  head << "])";
  print_result(head.str(), ctx, res, args.format);
  return 0;
}

struct JacobiArgs {
  int64_t p = 0;
  int64_t m = 0;
  std::vector<int64_t> chars;
  std::vector<int64_t> signs;
  int64_t B = 1;
  std::string method = "auto";
  std::string format = "json";
};

int cmd_jacobi(const JacobiArgs& args) {
  if (!args.signs.empty() && args.signs.size() != args.chars.size())
    throw std::invalid_argument("--signs must list one entry per --chars entry");
  if (args.p != 2) {
    for (int64_t s : args.signs)
      if (s != 0) throw std::invalid_argument("--signs applies to p = 2 only");
  }
  UnitGroupContext ctx = UnitGroupContext::build(args.p, args.m);
  JacobiQuery query;
  query.B = args.B;
  for (size_t i = 0; i < args.chars.size(); ++i) {
    int64_t e = args.signs.empty() ? 0 : args.signs[i];
    query.chars.push_back(Character::make(ctx, args.chars[i], e));
  }
  SumResult res =
      jacobi_eval(query, parse_jacobi_method(args.method), guard_from_env(kJacobiTermGuard));
  std::ostringstream head;
  head << "J_B(";
  for (size_t i = 0; i < query.chars.size(); ++i) {
    if (i > 0) head << ", ";
    head << "chi[c=" << query.chars[i].c();
    if (args.p == 2) head << ",sign=" << query.chars[i].e();
    head << "]";
  }
  head << "; B=" << args.B << ")";
  print_result(head.str(), ctx, res, args.format);
  return 0;
}

struct VerifyArgs {
  verify::SweepConfig cfg;
  std::string format = "json";
  std::string out;
};

int cmd_verify(VerifyArgs& args) {
  args.cfg.term_guard = guard_from_env(args.cfg.term_guard);
  verify::SweepSummary summary;
  std::vector<verify::DiscrepancyRecord> records = verify::run_sweep(args.cfg, summary);

  const io::RecordFormat format =
      (args.format == "csv") ? io::RecordFormat::csv : io::RecordFormat::json;
  if (args.out.empty()) {
    io::write_records(std::cout, records, format);
    if (!std::cout) throw std::ios_base::failure("writing records to stdout failed");
  } else {
    std::ofstream file(args.out);
    if (!file) throw std::ios_base::failure("cannot open " + args.out + " for writing");
    io::write_records(file, records, format);
    file.flush();
    if (!file) throw std::ios_base::failure("writing records to " + args.out + " failed");
  }

  for (int64_t p : args.cfg.primes) {
    UnitGroupContext ctx = UnitGroupContext::build(p, p == 2 ? 3 : 2);
    std::cerr << "generators: mod " << p << "^m units use " << ctx.generator_description() << "\n";
  }
  std::cerr << "verify: records=" << summary.total() << " pass=" << summary.passed
            << " fail=" << summary.failed << " skip=" << summary.skipped
            << " seed=" << args.cfg.seed << " tolerance=" << args.cfg.tolerance << "\n";
  return summary.failed == 0 ? 0 : 1;
}

struct BenchArgs {
  int64_t p = 0;
  int64_t m = 0;
  int64_t k = 1;
  int64_t reps = 20;
};

double median_us(std::vector<double>& samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

template <typename F>
double time_us(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  SumResult res = body();
  const auto stop = std::chrono::steady_clock::now();
  g_sink = g_sink + res.approx.real();
  return std::chrono::duration<double, std::micro>(stop - start).count();
}

int cmd_bench(const BenchArgs& args) {
  if (args.reps < 1) throw std::invalid_argument("--reps must be at least 1");
  UnitGroupContext ctx = UnitGroupContext::build(args.p, args.m);
  const uint64_t guard =
      guard_from_env(args.k == 1 ? kGaussTermGuard : kJacobiTermGuard);

  // A primitive character whenever the modulus admits one.
  const int64_t c = (ctx.cyclic_order() > 1) ? 1 : 0;
  const int64_t e = (args.p == 2 && args.m >= 2) ? 1 : 0;
  Character chi = Character::make(ctx, c, e);

  unsigned __int128 brute_terms = 1;
  for (int64_t i = 0; i + 1 < std::max<int64_t>(args.k, 2); ++i)
    brute_terms *= static_cast<unsigned __int128>(ctx.q());
  if (args.k == 1) brute_terms = static_cast<unsigned __int128>(ctx.q());

  JacobiQuery query;
  if (args.k >= 2) {
    query.B = 1;
    for (int64_t i = 0; i < args.k; ++i) query.chars.push_back(chi);
  }

  std::vector<double> closed_samples;
  std::string closed_method;
  for (int64_t rep = 0; rep < args.reps; ++rep) {
    closed_samples.push_back(time_us([&] {
      SumResult res = (args.k == 1) ? gauss_eval(chi, GaussMethod::automatic, guard)
                                    : jacobi_eval(query, JacobiMethod::automatic, guard);
      closed_method = to_string(res.method);
      return res;
    }));
  }

  std::vector<double> brute_samples;
  std::string status = "ok";
  try {
    for (int64_t rep = 0; rep < args.reps; ++rep) {
      brute_samples.push_back(time_us([&] {
        return (args.k == 1) ? gauss_brute(chi, guard) : jacobi_brute(query, guard);
      }));
    }
  } catch (const resource_limit_error&) {
    status = "skipped";
    brute_samples.clear();
  }

  std::cerr << "generators: " << ctx.generator_description() << "\n";
  std::cout << "task,p,m,k,method_closed,terms_brute,reps,median_brute_us,median_closed_us,"
               "speedup,status\n";
  std::cout << (args.k == 1 ? "gauss" : "jacobi") << ',' << args.p << ',' << args.m << ','
            << args.k << ',' << closed_method << ','
            << static_cast<unsigned long long>(brute_terms) << ',' << args.reps << ',';
  const double closed = std::max(median_us(closed_samples), 1e-3);
  if (status == "ok") {
    const double brute = median_us(brute_samples);
    std::cout << brute << ',' << closed << ',' << brute / closed << ',' << status << "\n";
  } else {
    std::cout << ',' << closed << ",," << status << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss and Jacobi sums modulo prime powers"};
  app.require_subcommand(1);

  GaussArgs gauss_args;
  CLI::App* gauss = app.add_subcommand("gauss", "Evaluate one Gauss sum G(chi, p^m)");
  gauss->add_option("--p", gauss_args.p, "prime modulus base")->required();
  gauss->add_option("--m", gauss_args.m, "exponent of the modulus p^m")->required();
  gauss->add_option("--c", gauss_args.c, "character index against the canonical generator");
  gauss->add_option("--sign", gauss_args.sign,
                    "exponent at -1 (p = 2 only): chi(-1) = (-1)^sign");
  gauss->add_option("--method", gauss_args.method, "auto, brute, or closed")
      ->check(CLI::IsMember({"auto", "brute", "closed"}));
  gauss->add_option("--format", gauss_args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  JacobiArgs jacobi_args;
  CLI::App* jacobi = app.add_subcommand("jacobi", "Evaluate one Jacobi sum J_B(chi_1, ..., chi_k)");
  jacobi->add_option("--p", jacobi_args.p, "prime modulus base")->required();
  jacobi->add_option("--m", jacobi_args.m, "exponent of the modulus p^m")->required();
  jacobi->add_option("--chars", jacobi_args.chars, "comma-separated character indices c_1,...,c_k")
      ->required()
      ->delimiter(',');
  jacobi->add_option("--signs", jacobi_args.signs,
                     "comma-separated exponents at -1, one per character (p = 2 only)")
      ->delimiter(',');
  jacobi->add_option("--B", jacobi_args.B, "target of the defining congruence x_1+...+x_k = B");
  jacobi->add_option("--method", jacobi_args.method, "auto, brute, closed, quotient, or direct")
      ->check(CLI::IsMember({"auto", "brute", "closed", "quotient", "direct"}));
  jacobi->add_option("--format", jacobi_args.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run every property suite over a grid");
  verify_cmd->add_option("--primes", verify_args.cfg.primes, "primes to sweep")->delimiter(',');
  verify_cmd->add_option("--m-min", verify_args.cfg.m_min, "smallest modulus exponent");
  verify_cmd->add_option("--m-max", verify_args.cfg.m_max, "largest modulus exponent");
  verify_cmd->add_option("--k-min", verify_args.cfg.k_min, "smallest tuple length");
  verify_cmd->add_option("--k-max", verify_args.cfg.k_max, "largest tuple length");
  verify_cmd->add_option("--q-cap-gauss", verify_args.cfg.q_cap_gauss,
                         "largest modulus in the Gauss oracle sweep");
  verify_cmd->add_option("--q-cap-char", verify_args.cfg.q_cap_char,
                         "largest modulus in the character sweeps");
  verify_cmd->add_option("--jacobi-moduli", verify_args.cfg.jacobi_moduli,
                         "moduli for the Jacobi pair grid")
      ->delimiter(',');
  verify_cmd->add_option("--char-cap", verify_args.cfg.char_cap,
                         "characters sampled per large modulus");
  verify_cmd->add_option("--char-sample-threshold", verify_args.cfg.char_sample_threshold,
                         "phi(q) above which characters are sampled");
  verify_cmd->add_option("--sample-count", verify_args.cfg.sample_count,
                         "random tuples per modulus in sampled sweeps");
  verify_cmd->add_flag("--sample-b", verify_args.cfg.sample_b,
                       "sample B in the translation sweep instead of trying all of [1, q)");
  verify_cmd->add_option("--tolerance", verify_args.cfg.tolerance, "numeric comparison tolerance");
  verify_cmd->add_option("--jobs", verify_args.cfg.jobs, "worker threads");
  verify_cmd->add_option("--seed", verify_args.cfg.seed, "sampling seed");
  verify_cmd->add_option("--term-guard", verify_args.cfg.term_guard, "brute-force term guard");
  verify_cmd->add_option("--format", verify_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", verify_args.out, "write records to this file instead of stdout");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Time closed forms against brute sums");
  bench->add_option("--p", bench_args.p, "prime modulus base")->required();
  bench->add_option("--m", bench_args.m, "exponent of the modulus p^m")->required();
  bench->add_option("--k", bench_args.k, "1 for a Gauss sum, k >= 2 for a Jacobi sum");
  bench->add_option("--reps", bench_args.reps, "repetitions per timing median");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gauss->parsed()) return cmd_gauss(gauss_args);
    if (jacobi->parsed()) return cmd_jacobi(jacobi_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
    return cmd_bench(bench_args);
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const unsupported_regime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
