#pragma once

// Property sweeps that cross-check every evaluation path against independent
// oracles: brute-force sums, defining congruences, and the structural laws
// the closed forms rely on. Each sweep emits one DiscrepancyRecord per query;
// run_sweep fans a task list out over a worker pool and merges the results in
// task order, so reports are deterministic for a fixed seed regardless of the
// number of jobs.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "charsum/algebraic.hpp"
#include "charsum/character.hpp"
#include "charsum/errors.hpp"
#include "charsum/gauss.hpp"
#include "charsum/jacobi.hpp"
#include "charsum/modular.hpp"
#include "charsum/unit_group.hpp"

namespace charsum::verify {

/// Absolute magnitude below which a numeric sum counts as zero.
inline constexpr double kZeroTolerance = 1e-9;

enum class Status { pass, fail, skipped };

[[nodiscard]] inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

/// One verified query: what was compared, the two values, and the verdict.
struct DiscrepancyRecord {
  std::string suite;
  int64_t p = 0;
  int64_t m = 0;
  int64_t k = 0;
  int64_t n = 0;
  int64_t B = 0;
  std::vector<int64_t> c_tuple;
  std::vector<int64_t> e_tuple;
  std::string method_a;
  std::string method_b;
  std::complex<double> value_a{0.0, 0.0};
  std::complex<double> value_b{0.0, 0.0};
  double deviation = 0.0;
  Status status = Status::pass;
};

struct SweepSummary {
  uint64_t passed = 0;
  uint64_t failed = 0;
  uint64_t skipped = 0;
  [[nodiscard]] uint64_t total() const { return passed + failed + skipped; }
};

/// (p, m) with q = p^m; rejects inputs that are not prime powers.
[[nodiscard]] inline std::pair<int64_t, int64_t> prime_power_split(int64_t q) {
  if (q < 2) throw std::invalid_argument("prime_power_split: need q >= 2");
  int64_t p = (q % 2 == 0) ? 2 : 0;
  if (p == 0) {
    for (int64_t d = 3; d * d <= q; d += 2) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
  }
  if (p == 0) p = q;
  int64_t m = 0;
  int64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1)
    throw std::invalid_argument("prime_power_split: " + std::to_string(q) +
                                " is not a prime power");
  return {p, m};
}

struct SweepConfig {
  std::vector<int64_t> primes{2, 3, 5, 7, 11, 13};
  int64_t m_min = 1;
  int64_t m_max = 14;
  int64_t k_min = 2;
  int64_t k_max = 3;
  int64_t q_cap_gauss = 20000;
  int64_t q_cap_char = 512;
  std::vector<int64_t> jacobi_moduli{8, 16, 32, 64, 128, 9, 27, 81, 25, 125, 49};
  int64_t char_cap = 500;              // characters sampled once phi(q) > char_sample_threshold
  int64_t char_sample_threshold = 5000;
  int64_t sample_count = 200;          // random tuples per modulus in sampled sweeps
  bool sample_b = false;               // translation sweep: sample B instead of all of [1, q)
  double tolerance = 1e-6;
  int jobs = 1;
  uint64_t term_guard = kJacobiTermGuard;
  uint64_t seed = 1;

  void validate() const {
    if (primes.empty()) throw std::invalid_argument("verify: prime list must not be empty");
    for (int64_t p : primes)
      if (!is_prime(p))
        throw std::invalid_argument("verify: " + std::to_string(p) + " is not prime");
    if (m_min < 1 || m_max < m_min) throw std::invalid_argument("verify: bad m range");
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("verify: bad k range");
    if (q_cap_gauss < 2 || q_cap_char < 2)
      throw std::invalid_argument("verify: modulus caps must be >= 2");
    if (char_cap <= 0 || sample_count <= 0 || char_sample_threshold <= 0)
      throw std::invalid_argument("verify: sampling caps must be positive");
    if (!(tolerance > 0.0)) throw std::invalid_argument("verify: tolerance must be positive");
    if (jobs < 1) throw std::invalid_argument("verify: jobs must be >= 1");
    if (term_guard == 0) throw std::invalid_argument("verify: term guard must be positive");
    for (int64_t q : jacobi_moduli) (void)prime_power_split(q);
  }
};

namespace detail {

[[nodiscard]] inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

/// `want` distinct indices out of [0, total), by partial Fisher-Yates.
[[nodiscard]] inline std::vector<size_t> sample_indices(size_t total, size_t want,
                                                        std::mt19937_64& rng) {
  std::vector<size_t> idx(total);
  std::iota(idx.begin(), idx.end(), size_t{0});
  if (want >= total) return idx;
  for (size_t i = 0; i < want; ++i) {
    size_t j = i + static_cast<size_t>(rng() % static_cast<uint64_t>(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(want);
  return idx;
}

/// R_j mod p^prec from the defining congruence, recomputed at precision
/// p^(j+prec). Independent of the table UnitGroupContext builds.
[[nodiscard]] inline int64_t rj_reference(int64_t p, int64_t gen, int64_t j, int64_t prec) {
  const int64_t big = checked_pow(p, j + prec);
  const int64_t order = (p == 2) ? checked_pow(2, j - 2) : checked_pow(p, j - 1) * (p - 1);
  const int64_t base = (p == 2) ? 5 : gen;
  const int64_t val = pow_mod(base, static_cast<uint64_t>(order), big);
  return ((val - 1) / checked_pow(p, j)) % checked_pow(p, prec);
}

inline void set_query(DiscrepancyRecord& rec, const std::vector<Character>& chars, int64_t n,
                      int64_t b) {
  rec.k = static_cast<int64_t>(chars.size());
  rec.n = n;
  rec.B = b;
  rec.c_tuple.clear();
  rec.e_tuple.clear();
  for (const Character& chi : chars) {
    rec.c_tuple.push_back(chi.c());
    rec.e_tuple.push_back(chi.e());
  }
}

struct Path {
  const char* label;
  SumResult result;
};

/// Compare every pair of paths. Exact results must match bitwise; numeric
/// comparisons use the absolute tolerance. Fewer than two paths: skipped.
inline void finish_paths(DiscrepancyRecord& rec, const std::vector<Path>& paths,
                         double tol_abs) {
  if (paths.size() < 2) {
    rec.status = Status::skipped;
    if (!paths.empty()) {
      rec.method_a = paths[0].label;
      rec.value_a = paths[0].result.approx;
    }
    return;
  }
  size_t wa = 0, wb = 1;
  double worst = -1.0;
  bool exact_bad = false;
  size_t ea = 0, eb = 1;
  for (size_t i = 0; i < paths.size(); ++i) {
    for (size_t j = i + 1; j < paths.size(); ++j) {
      const double dev = std::abs(paths[i].result.approx - paths[j].result.approx);
      if (dev > worst) {
        worst = dev;
        wa = i;
        wb = j;
      }
      if (!exact_bad && paths[i].result.exact && paths[j].result.exact &&
          !(paths[i].result.value == paths[j].result.value)) {
        exact_bad = true;
        ea = i;
        eb = j;
      }
    }
  }
  const size_t a = exact_bad ? ea : wa;
  const size_t b = exact_bad ? eb : wb;
  rec.method_a = paths[a].label;
  rec.method_b = paths[b].label;
  rec.value_a = paths[a].result.approx;
  rec.value_b = paths[b].result.approx;
  rec.deviation = std::abs(rec.value_a - rec.value_b);
  rec.status = (exact_bad || worst > tol_abs) ? Status::fail : Status::pass;
}

inline void numeric_compare(DiscrepancyRecord& rec, std::string ma, std::complex<double> a,
                            std::string mb, std::complex<double> b, double tol_abs) {
  rec.method_a = std::move(ma);
  rec.method_b = std::move(mb);
  rec.value_a = a;
  rec.value_b = b;
  rec.deviation = std::abs(a - b);
  rec.status = rec.deviation <= tol_abs ? Status::pass : Status::fail;
}

[[nodiscard]] inline std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Arithmetic building blocks
// ---------------------------------------------------------------------------

inline std::vector<DiscrepancyRecord> sweep_jacobi_symbol(const SweepConfig&, uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  std::mt19937_64 rng(seed);
  auto record = [&](const char* what, int64_t lhs, int64_t rhs, int64_t a, int64_t n) {
    DiscrepancyRecord rec;
    rec.suite = "jacobi-symbol";
    rec.method_a = what;
    rec.method_b = "reference";
    rec.B = a;
    rec.n = n;
    rec.value_a = {static_cast<double>(lhs), 0.0};
    rec.value_b = {static_cast<double>(rhs), 0.0};
    rec.deviation = std::abs(static_cast<double>(lhs - rhs));
    rec.status = lhs == rhs ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  };
  for (int64_t s = 0; s < 1000; ++s) {
    const int64_t n1 = 2 * static_cast<int64_t>(rng() % 500000) + 1;
    const int64_t n2 = 2 * static_cast<int64_t>(rng() % 500000) + 1;
    const int64_t a = static_cast<int64_t>(rng() % 2000000001ull) - 1000000000;
    const int64_t b = static_cast<int64_t>(rng() % 2000000001ull) - 1000000000;
    record("square", jacobi_symbol(mul_mod(a, a, n1), n1),
           std::gcd(mod_reduce(a, n1), n1) == 1 ? 1 : 0, a, n1);
    record("numerator-product", jacobi_symbol(mul_mod(a, b, n1), n1),
           jacobi_symbol(a, n1) * jacobi_symbol(b, n1), a, n1);
    record("denominator-product", jacobi_symbol(a, n1 * n2),
           jacobi_symbol(a, n1) * jacobi_symbol(a, n2), a, n1 * n2);
    const int64_t r8 = n1 % 8;
    record("two-supplement", jacobi_symbol(2, n1), (r8 == 1 || r8 == 7) ? 1 : -1, 2, n1);
    record("minus-one-supplement", jacobi_symbol(-1, n1), (n1 % 4 == 1) ? 1 : -1, -1, n1);
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_rotation_arithmetic(const SweepConfig&,
                                                                uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  std::mt19937_64 rng(seed);
  auto push = [&](const char* what, bool ok, std::complex<double> a, std::complex<double> b) {
    DiscrepancyRecord rec;
    rec.suite = "rotation";
    rec.method_a = what;
    rec.method_b = "reference";
    rec.value_a = a;
    rec.value_b = b;
    rec.deviation = std::abs(a - b);
    rec.status = ok ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  };
  auto draw = [&]() {
    const int64_t den = 1 + static_cast<int64_t>(rng() % 1000);
    const int64_t num = static_cast<int64_t>(rng() % static_cast<uint64_t>(4 * den)) - 2 * den;
    return Rotation::of(num, den);
  };
  for (int64_t s = 0; s < 1000; ++s) {
    const Rotation r1 = draw();
    const Rotation r2 = draw();
    const Rotation r3 = draw();
    const Rotation left = (r1 + r2) + r3;
    const Rotation right = r1 + (r2 + r3);
    push("associativity", left == right, left.to_complex(), right.to_complex());
    const std::complex<double> sum = (r1 + r2).to_complex();
    const std::complex<double> prod = r1.to_complex() * r2.to_complex();
    push("complex-homomorphism", std::abs(sum - prod) <= 1e-12, sum, prod);
    const int64_t t = static_cast<int64_t>(rng() % 9) - 4;
    const Rotation scaled = r1.times(t);
    const Rotation direct = Rotation::of(r1.num * t, r1.den);
    push("integer-multiple", scaled == direct, scaled.to_complex(), direct.to_complex());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unit group structure
// ---------------------------------------------------------------------------

inline std::vector<DiscrepancyRecord> sweep_unit_structure(const SweepConfig&, int64_t p,
                                                           int64_t m) {
  std::vector<DiscrepancyRecord> out;
  UnitGroupContext ctx = UnitGroupContext::build(p, m);
  const int64_t q = ctx.q();
  auto make_rec = [&](std::string what, std::string reference) {
    DiscrepancyRecord rec;
    rec.suite = "unit-structure";
    rec.p = p;
    rec.m = m;
    rec.method_a = std::move(what);
    rec.method_b = std::move(reference);
    return rec;
  };
  auto push_count = [&](DiscrepancyRecord rec, int64_t bad) {
    rec.value_a = {static_cast<double>(bad), 0.0};
    rec.deviation = static_cast<double>(bad);
    rec.status = bad == 0 ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  };

  {  // every unit decomposes and recomposes through the generators
    int64_t bad = 0;
    int64_t count = 0;
    for (int64_t x = 1; x < q; ++x) {
      const bool coprime = std::gcd(x, q) == 1;
      if (ctx.is_unit(x) != coprime) {
        ++bad;
        continue;
      }
      if (!coprime) continue;
      ++count;
      const UnitExponents ue = ctx.unit_exponents(x);
      if (ue.t < 0 || ue.t >= ctx.cyclic_order() || ue.e < 0 || ue.e > 1 ||
          (p != 2 && ue.e != 0)) {
        ++bad;
        continue;
      }
      int64_t y = pow_mod(ctx.generator(), static_cast<uint64_t>(ue.t), q);
      if (ue.e != 0) y = mod_reduce(-y, q);
      if (y != x) ++bad;
    }
    if (count != ctx.phi()) ++bad;
    push_count(make_rec("generator-decomposition", "recompose"), bad);
  }

  {  // the cyclic generator has full order
    int64_t bad = 0;
    const int64_t ord = ctx.cyclic_order();
    if (pow_mod(ctx.generator(), static_cast<uint64_t>(ord), q) != 1 % q) ++bad;
    for (int64_t f : detail::prime_factors(ord))
      if (pow_mod(ctx.generator(), static_cast<uint64_t>(ord / f), q) == 1) ++bad;
    if (p == 2 && m >= 3 && ctx.unit_exponents(q - 1).e != 1) ++bad;
    push_count(make_rec("generator-order", "phi-factorization"), bad);
  }

  if (p != 2) {
    {  // a^(p-1) = 1 + r p mod p^2 with r a unit
      int64_t bad = 0;
      const int64_t p2 = p * p;
      if (pow_mod(ctx.generator(), static_cast<uint64_t>(p - 1), p2) !=
          mod_reduce(1 + ctx.r() * p, p2))
        ++bad;
      if (ctx.r() <= 0 || ctx.r() >= p) ++bad;
      push_count(make_rec("r-constant", "definition"), bad);
    }
    {  // epsilon_{p^m} is 1 or i according to p^m mod 4
      int64_t bad = 0;
      if (epsilon_exponent(p, m) != ((q % 4 == 1) ? 0 : 1)) ++bad;
      push_count(make_rec("epsilon-exponent", "q mod 4"), bad);
    }
  }

  {  // R_j recomputed from the defining congruence at full stored precision
    const int64_t jmin = (p == 2) ? 2 : 1;
    for (int64_t j = jmin; j <= m; ++j) {
      int64_t bad = 0;
      if (detail::rj_reference(p, ctx.generator(), j, m) != ctx.Rj(j)) ++bad;
      DiscrepancyRecord rec = make_rec("Rj-definition", "independent-recompute");
      rec.n = j;
      push_count(std::move(rec), bad);
    }
  }

  if (p != 2) {  // R_j = R_i mod p^i for i <= j
    for (int64_t i = 1; i <= m; ++i) {
      for (int64_t j = i; j <= m; ++j) {
        int64_t bad = 0;
        if (mod_reduce(ctx.Rj(j) - ctx.Rj(i), checked_pow(p, i)) != 0) ++bad;
        DiscrepancyRecord rec = make_rec("Rj-congruence", "mod p^i");
        rec.n = i;
        rec.B = j;
        push_count(std::move(rec), bad);
      }
    }
  } else if (m >= 2) {
    {  // every R_i is odd
      int64_t bad = 0;
      for (int64_t i = 2; i <= m; ++i)
        if (ctx.Rj(i) % 2 == 0) ++bad;
      push_count(make_rec("Rj-odd", "parity"), bad);
    }
    // R_{i+1} = R_i + 2^(i-1) mod 2^(i+2); needs more precision than the
    // stored tables carry, so both sides are recomputed from the definition.
    for (int64_t i = 2; i + 1 <= m; ++i) {
      int64_t bad = 0;
      const int64_t prec = i + 2;
      const int64_t ri = detail::rj_reference(2, 5, i, prec);
      const int64_t ri1 = detail::rj_reference(2, 5, i + 1, prec);
      if (mod_reduce(ri1 - ri - checked_pow(2, i - 1), checked_pow(2, prec)) != 0) ++bad;
      DiscrepancyRecord rec = make_rec("Rj-congruence", "mod 2^(i+2)");
      rec.n = i;
      rec.B = i + 1;
      push_count(std::move(rec), bad);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

inline std::vector<DiscrepancyRecord> sweep_characters(const SweepConfig&, int64_t p, int64_t m) {
  std::vector<DiscrepancyRecord> out;
  UnitGroupContext ctx = UnitGroupContext::build(p, m);
  const int64_t q = ctx.q();
  const int64_t ord = ctx.cyclic_order();
  const std::vector<Character> chars = enumerate_characters(ctx);
  const size_t C = chars.size();

  std::vector<int64_t> xs;
  std::vector<int32_t> pos(static_cast<size_t>(q), -1);
  for (int64_t x = 1; x < q; ++x) {
    if (!ctx.is_unit(x)) continue;
    pos[static_cast<size_t>(x)] = static_cast<int32_t>(xs.size());
    xs.push_back(x);
  }
  const size_t U = xs.size();
  std::vector<UnitExponents> ue(U);
  for (size_t i = 0; i < U; ++i) ue[i] = ctx.unit_exponents(xs[i]);

  // Position of x*y among the units, built once and shared by every character.
  std::vector<int32_t> mulidx(U * U);
  for (size_t i = 0; i < U; ++i)
    for (size_t j = 0; j < U; ++j)
      mulidx[i * U + j] = pos[static_cast<size_t>((xs[i] * xs[j]) % q)];

  auto char_rec = [&](const Character& chi, std::string what, std::string reference) {
    DiscrepancyRecord rec;
    rec.suite = "characters";
    rec.p = p;
    rec.m = m;
    detail::set_query(rec, {chi}, 0, 0);
    rec.method_a = std::move(what);
    rec.method_b = std::move(reference);
    return rec;
  };
  auto push_count = [&](DiscrepancyRecord rec, int64_t bad) {
    rec.value_a = {static_cast<double>(bad), 0.0};
    rec.deviation = static_cast<double>(bad);
    rec.status = bad == 0 ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  };

  {  // enumeration covers the dual group exactly once
    DiscrepancyRecord rec;
    rec.suite = "characters";
    rec.p = p;
    rec.m = m;
    rec.method_a = "enumeration-count";
    rec.method_b = "phi";
    const int64_t phi_prev = (m == 1) ? 1 : checked_pow(p, m - 2) * (p - 1);
    const int64_t expected_primitive = ctx.phi() - phi_prev;
    const auto prim = enumerate_characters(ctx, true);
    int64_t bad = 0;
    if (static_cast<int64_t>(C) != ctx.phi()) ++bad;
    if (static_cast<int64_t>(prim.size()) != expected_primitive) ++bad;
    push_count(std::move(rec), bad);
  }

  std::vector<UnitGroupContext> sub;  // sub[j-1] = the mod p^j context
  for (int64_t j = 1; j < m; ++j) sub.push_back(UnitGroupContext::build(p, j));

  for (size_t ci = 0; ci < C; ++ci) {
    const Character& chi = chars[ci];
    const int64_t c = chi.c();
    const int64_t e = chi.e();
    std::vector<int64_t> s(U);
    std::vector<uint8_t> bit(U);
    for (size_t i = 0; i < U; ++i) {
      s[i] = mul_mod(c, ue[i].t, ord);
      bit[i] = static_cast<uint8_t>((e & ue[i].e) & 1);
    }

    {  // chi(xy) = chi(x) chi(y) over every ordered pair of units
      int64_t bad = 0;
      for (size_t i = 0; i < U; ++i) {
        const int64_t si = s[i];
        const uint8_t bi = bit[i];
        const size_t row = i * U;
        for (size_t j = 0; j < U; ++j) {
          const size_t t = static_cast<size_t>(mulidx[row + j]);
          if ((si + s[j]) % ord != s[t] || (bi ^ bit[j]) != bit[t]) ++bad;
        }
      }
      push_count(char_rec(chi, "multiplicativity", "exponent-sum"), bad);
    }

    {  // conductor formula vs the smallest kernel congruence level
      int64_t f_brute = m;
      for (int64_t f = 0; f <= m; ++f) {
        bool trivial = true;
        const int64_t step = checked_pow(p, f);
        for (int64_t x = 1; x < q && trivial; x += step) {
          const int32_t i = pos[static_cast<size_t>(x)];
          if (i < 0) continue;
          // chi(x) = zeta_{2 ord}^(2 s + bit * ord); trivial iff exponent is 0.
          if ((2 * s[static_cast<size_t>(i)] + bit[static_cast<size_t>(i)] * ord) % (2 * ord) !=
              0)
            trivial = false;
        }
        if (trivial) {
          f_brute = f;
          break;
        }
      }
      DiscrepancyRecord rec = char_rec(chi, "conductor-exponent", "kernel-scan");
      rec.value_a = {static_cast<double>(chi.conductor_exponent()), 0.0};
      rec.value_b = {static_cast<double>(f_brute), 0.0};
      rec.deviation = std::abs(static_cast<double>(chi.conductor_exponent() - f_brute));
      rec.status = chi.conductor_exponent() == f_brute ? Status::pass : Status::fail;
      out.push_back(std::move(rec));
    }

    {  // reducing to the conductor level and re-inducing reproduces chi
      const int64_t f = chi.conductor_exponent();
      int64_t bad = 0;
      int64_t tested = 0;
      for (int64_t j = std::max<int64_t>(f, 1); j < m; ++j) {
        const UnitGroupContext& cj = sub[static_cast<size_t>(j - 1)];
        const Character red = chi.reduce_to(cj);
        for (size_t i = 0; i < U; ++i) {
          ++tested;
          const auto r1 = chi.rotation_at(xs[i]);
          const auto r2 = red.rotation_at(xs[i] % cj.q());
          if (!r1 || !r2 || !(*r1 == *r2)) ++bad;
        }
      }
      DiscrepancyRecord rec = char_rec(chi, "reduce-lift", "pointwise");
      rec.n = f;
      if (tested == 0) {
        rec.status = Status::skipped;
        out.push_back(std::move(rec));
      } else {
        push_count(std::move(rec), bad);
      }
    }
  }

  {  // pointwise products match the labeled product character
    std::vector<std::vector<Rotation>> rots(C, std::vector<Rotation>(U, kRotOne));
    for (size_t ci = 0; ci < C; ++ci)
      for (size_t i = 0; i < U; ++i) rots[ci][i] = chars[ci].rotation_at(xs[i]).value();
    for (size_t c1 = 0; c1 < C; ++c1) {
      int64_t bad = 0;
      for (size_t c2 = c1; c2 < C; ++c2) {
        const int64_t pc = (chars[c1].c() + chars[c2].c()) % ord;
        const int64_t pe = (chars[c1].e() + chars[c2].e()) % 2;
        const size_t pi = static_cast<size_t>(pe * ord + pc);
        const std::vector<Rotation>& ra = rots[c1];
        const std::vector<Rotation>& rb = rots[c2];
        const std::vector<Rotation>& rp = rots[pi];
        for (size_t i = 0; i < U; ++i)
          if (!(ra[i] + rb[i] == rp[i])) ++bad;
      }
      push_count(char_rec(chars[c1], "pointwise-product", "product-character"), bad);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gauss sums
// ---------------------------------------------------------------------------

inline std::vector<DiscrepancyRecord> sweep_gauss_oracle(const SweepConfig& cfg, int64_t p,
                                                         int64_t m, uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  UnitGroupContext ctx = UnitGroupContext::build(p, m);
  const std::vector<Character> chars = enumerate_characters(ctx);
  std::mt19937_64 rng(seed);
  const size_t want = ctx.phi() > cfg.char_sample_threshold
                          ? static_cast<size_t>(cfg.char_cap)
                          : chars.size();
  const std::vector<size_t> picks = detail::sample_indices(chars.size(), want, rng);
  const double tol = cfg.tolerance * std::pow(static_cast<double>(p), m / 2.0);

  const int64_t jmin = (p == 2) ? (m + 1) / 2 + 2 : (m + 1) / 2;
  std::vector<int64_t> j_bad;
  if ((p != 2 || m >= 5) && jmin <= m) j_bad.assign(static_cast<size_t>(m - jmin + 1), 0);

  for (size_t ci : picks) {
    const Character& chi = chars[ci];
    const SumResult closed = gauss_closed(chi);
    const SumResult brute = gauss_brute(chi, cfg.term_guard);
    DiscrepancyRecord rec;
    rec.suite = "gauss-oracle";
    rec.p = p;
    rec.m = m;
    detail::set_query(rec, {chi}, 0, 0);
    detail::numeric_compare(rec, to_string(closed.method), closed.approx, "brute", brute.approx,
                            tol);
    if (!chi.is_primitive() && !(closed.exact && closed.value.is_zero))
      rec.status = Status::fail;
    out.push_back(std::move(rec));

    if (!j_bad.empty() && chi.is_primitive()) {
      const SumResult base = gauss_closed_with_j(chi, jmin);
      for (int64_t j = jmin; j <= m; ++j) {
        const SumResult with_j = gauss_closed_with_j(chi, j);
        if (!(with_j.value == base.value)) ++j_bad[static_cast<size_t>(j - jmin)];
      }
    }
  }
  for (size_t t = 0; t < j_bad.size(); ++t) {
    DiscrepancyRecord rec;
    rec.suite = "gauss-j-independence";
    rec.p = p;
    rec.m = m;
    rec.n = jmin + static_cast<int64_t>(t);
    rec.method_a = "closed-with-j";
    rec.method_b = "closed-minimal-j";
    rec.value_a = {static_cast<double>(j_bad[t]), 0.0};
    rec.deviation = static_cast<double>(j_bad[t]);
    rec.status = j_bad[t] == 0 ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_gauss_magnitude(const SweepConfig& cfg, int64_t p,
                                                            int64_t m) {
  std::vector<DiscrepancyRecord> out;
  UnitGroupContext ctx = UnitGroupContext::build(p, m);
  const int64_t q = ctx.q();
  const int64_t ord = ctx.cyclic_order();
  const std::vector<Character> chars = enumerate_characters(ctx);
  std::vector<std::complex<double>> g(chars.size());

  if (p != 2 || m >= 3) {
    // All Gauss sums at once, walking the units in generator order.
    std::vector<std::complex<double>> eq(static_cast<size_t>(q));
    for (int64_t x = 0; x < q; ++x)
      eq[static_cast<size_t>(x)] =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(q));
    std::vector<std::complex<double>> zord(static_cast<size_t>(ord));
    for (int64_t s = 0; s < ord; ++s)
      zord[static_cast<size_t>(s)] = std::polar(
          1.0, 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(ord));
    if (p != 2) {
      std::vector<int64_t> xs(static_cast<size_t>(ord));
      int64_t x = 1;
      for (int64_t t = 0; t < ord; ++t) {
        xs[static_cast<size_t>(t)] = x;
        x = mul_mod(x, ctx.generator(), q);
      }
      for (size_t ci = 0; ci < chars.size(); ++ci) {
        const int64_t c = chars[ci].c();
        std::complex<double> acc{0.0, 0.0};
        for (int64_t t = 0; t < ord; ++t)
          acc += zord[static_cast<size_t>((c * t) % ord)] *
                 eq[static_cast<size_t>(xs[static_cast<size_t>(t)])];
        g[ci] = acc;
      }
    } else {
      // Units mod 2^m are (-1)^e 5^t; fold the +/- pair for each t.
      std::vector<std::complex<double>> plus(static_cast<size_t>(ord));
      std::vector<std::complex<double>> minus(static_cast<size_t>(ord));
      int64_t x5 = 1;
      for (int64_t t = 0; t < ord; ++t) {
        plus[static_cast<size_t>(t)] =
            eq[static_cast<size_t>(x5)] + eq[static_cast<size_t>(q - x5)];
        minus[static_cast<size_t>(t)] =
            eq[static_cast<size_t>(x5)] - eq[static_cast<size_t>(q - x5)];
        x5 = mul_mod(x5, 5, q);
      }
      for (size_t ci = 0; ci < chars.size(); ++ci) {
        const int64_t c = chars[ci].c();
        const bool odd_part = chars[ci].e() != 0;
        std::complex<double> acc{0.0, 0.0};
        for (int64_t t = 0; t < ord; ++t)
          acc += zord[static_cast<size_t>((c * t) % ord)] *
                 (odd_part ? minus[static_cast<size_t>(t)] : plus[static_cast<size_t>(t)]);
        g[ci] = acc;
      }
    }
  } else {
    for (size_t ci = 0; ci < chars.size(); ++ci) g[ci] = gauss_brute(chars[ci]).approx;
  }

  const double full = std::pow(static_cast<double>(p), m / 2.0);
  const double tol = cfg.tolerance * std::max(1.0, full);
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    const Character& chi = chars[ci];
    double expected = 0.0;
    if (chi.is_primitive())
      expected = full;
    else if (m == 1 && chi.is_principal())
      expected = 1.0;  // G(chi_0, p) = -1
    DiscrepancyRecord rec;
    rec.suite = "gauss-magnitude";
    rec.p = p;
    rec.m = m;
    detail::set_query(rec, {chi}, 0, 0);
    rec.method_a = "brute-magnitude";
    rec.method_b = "magnitude-law";
    rec.value_a = g[ci];
    rec.value_b = {expected, 0.0};
    rec.deviation = std::abs(std::abs(g[ci]) - expected);
    rec.status = rec.deviation <= tol ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_gauss_conjugation(const SweepConfig& cfg, int64_t p,
                                                              int64_t m) {
  std::vector<DiscrepancyRecord> out;
  UnitGroupContext ctx = UnitGroupContext::build(p, m);
  const double tol = cfg.tolerance * std::max(1.0, std::pow(static_cast<double>(p), m / 2.0));
  for (const Character& chi : enumerate_characters(ctx)) {
    const Character bar = chi.conjugate();
    const std::complex<double> lhs = std::conj(gauss_brute(chi, cfg.term_guard).approx);
    const std::complex<double> rhs =
        (bar.sign_at_minus_one() < 0 ? -1.0 : 1.0) * gauss_brute(bar, cfg.term_guard).approx;
    DiscrepancyRecord rec;
    rec.suite = "gauss-conjugation";
    rec.p = p;
    rec.m = m;
    detail::set_query(rec, {chi}, 0, 0);
    detail::numeric_compare(rec, "conj-brute", lhs, "sign-times-conjugate-brute", rhs, tol);
    out.push_back(std::move(rec));

    DiscrepancyRecord rec2;
    rec2.suite = "gauss-conjugation";
    rec2.p = p;
    rec2.m = m;
    detail::set_query(rec2, {chi}, 0, 0);
    detail::numeric_compare(rec2, "gauss-conjugate", gauss_conjugate(chi, cfg.term_guard).approx,
                            "conj-brute", lhs, tol);
    out.push_back(std::move(rec2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi sums
// ---------------------------------------------------------------------------

namespace detail {

/// Shared per-modulus scaffolding for the Jacobi sweeps: value tables for
/// every character plus the unit list.
struct JacobiGrid {
  UnitGroupContext ctx;
  std::vector<Character> chars;
  std::vector<std::vector<std::complex<double>>> tab;
  std::vector<int64_t> units;

  explicit JacobiGrid(int64_t q)
      : ctx(UnitGroupContext::build(prime_power_split_checked(q).first,
                                    prime_power_split_checked(q).second)) {
    chars = enumerate_characters(ctx);
    tab.reserve(chars.size());
    for (const Character& chi : chars) tab.push_back(character_value_table(chi));
    for (int64_t x = 1; x < ctx.q(); ++x)
      if (ctx.is_unit(x)) units.push_back(x);
  }

  static std::pair<int64_t, int64_t> prime_power_split_checked(int64_t q) {
    return verify::prime_power_split(q);
  }

  [[nodiscard]] std::complex<double> brute2(size_t i1, size_t i2, int64_t b) const {
    const int64_t q = ctx.q();
    std::complex<double> acc{0.0, 0.0};
    for (int64_t x : units)
      acc += tab[i1][static_cast<size_t>(x)] * tab[i2][static_cast<size_t>(mod_reduce(b - x, q))];
    return acc;
  }

  [[nodiscard]] std::complex<double> brute3(size_t i1, size_t i2, size_t i3, int64_t b) const {
    const int64_t q = ctx.q();
    std::complex<double> acc{0.0, 0.0};
    for (int64_t x : units) {
      const std::complex<double> lead = tab[i1][static_cast<size_t>(x)];
      const int64_t rest = b - x;
      for (int64_t y : units)
        acc += lead * tab[i2][static_cast<size_t>(y)] *
               tab[i3][static_cast<size_t>(mod_reduce(rest - y, q))];
    }
    return acc;
  }
};

}  // namespace detail

inline std::vector<DiscrepancyRecord> sweep_jacobi_pairs(const SweepConfig& cfg, int64_t q) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const int64_t p = grid.ctx.p();
  const int64_t m = grid.ctx.m();
  const size_t C = grid.chars.size();

  for (size_t i1 = 0; i1 < C; ++i1) {
    for (size_t i2 = 0; i2 < C; ++i2) {
      const std::vector<Character> pair{grid.chars[i1], grid.chars[i2]};
      for (int64_t n = 0; n <= m; ++n) {
        const int64_t b = (n == m) ? 0 : checked_pow(p, n);
        const std::complex<double> br = grid.brute2(i1, i2, b);

        std::vector<detail::Path> paths;
        paths.push_back(
            {"brute", SumResult::from_numeric(br, grid.units.size(), SumMethod::brute)});
        if (n == m) {
          paths.push_back({"top-case", jacobi_eval(JacobiQuery{pair, 0}, JacobiMethod::automatic,
                                                   cfg.term_guard)});
        } else {
          try {
            paths.push_back({"closed", jacobi_closed(pair, n)});
          } catch (const unsupported_regime_error&) {
          } catch (const precondition_error&) {
          }
          try {
            paths.push_back({"quotient", jacobi_via_gauss(
                                             pair, n,
                                             std::min<uint64_t>(cfg.term_guard, kGaussTermGuard))});
          } catch (const unsupported_regime_error&) {
          } catch (const precondition_error&) {
          }
          if (p != 2) {
            try {
              paths.push_back({"direct", jacobi_direct_k2(pair[0], pair[1], b)});
            } catch (const unsupported_regime_error&) {
            } catch (const precondition_error&) {
            }
          }
        }

        DiscrepancyRecord rec;
        rec.suite = "jacobi-pairs";
        rec.p = p;
        rec.m = m;
        detail::set_query(rec, pair, n, b);
        detail::finish_paths(rec, paths,
                             cfg.tolerance * std::pow(static_cast<double>(p), (m + n) / 2.0));
        out.push_back(std::move(rec));

        if (const std::optional<bool> pz = predict_zero(pair, n)) {
          DiscrepancyRecord zrec;
          zrec.suite = "jacobi-zero";
          zrec.p = p;
          zrec.m = m;
          detail::set_query(zrec, pair, n, b);
          const bool observed_zero = std::abs(br) <= kZeroTolerance;
          zrec.method_a = "brute";
          zrec.method_b = *pz ? "predicted-zero" : "predicted-nonzero";
          zrec.value_a = br;
          zrec.value_b = {*pz ? 0.0 : 1.0, 0.0};
          zrec.deviation = *pz ? std::abs(br) : 0.0;
          zrec.status = observed_zero == *pz ? Status::pass : Status::fail;
          out.push_back(std::move(zrec));
        }
      }
    }
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_jacobi_triples(const SweepConfig& cfg, int64_t q,
                                                           uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const int64_t p = grid.ctx.p();
  const int64_t m = grid.ctx.m();
  const size_t C = grid.chars.size();
  std::mt19937_64 rng(seed);

  for (int64_t s = 0; s < cfg.sample_count; ++s) {
    const size_t i1 = static_cast<size_t>(rng() % C);
    const size_t i2 = static_cast<size_t>(rng() % C);
    const size_t i3 = static_cast<size_t>(rng() % C);
    const std::vector<Character> triple{grid.chars[i1], grid.chars[i2], grid.chars[i3]};
    for (int64_t n = 0; n <= 1; ++n) {
      if (n >= m) break;
      const int64_t b = checked_pow(p, n);
      std::vector<detail::Path> paths;
      paths.push_back({"brute", SumResult::from_numeric(grid.brute3(i1, i2, i3, b),
                                                        grid.units.size() * grid.units.size(),
                                                        SumMethod::brute)});
      try {
        paths.push_back({"closed", jacobi_closed(triple, n)});
      } catch (const unsupported_regime_error&) {
      } catch (const precondition_error&) {
      }
      try {
        paths.push_back({"quotient", jacobi_via_gauss(
                                         triple, n,
                                         std::min<uint64_t>(cfg.term_guard, kGaussTermGuard))});
      } catch (const unsupported_regime_error&) {
      } catch (const precondition_error&) {
      }
      DiscrepancyRecord rec;
      rec.suite = "jacobi-triples";
      rec.p = p;
      rec.m = m;
      detail::set_query(rec, triple, n, b);
      detail::finish_paths(rec, paths,
                           cfg.tolerance * std::pow(static_cast<double>(p), (2.0 * m + n) / 2.0));
      out.push_back(std::move(rec));
    }
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_jacobi_translation(const SweepConfig& cfg, int64_t q,
                                                               uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const int64_t p = grid.ctx.p();
  const int64_t m = grid.ctx.m();
  const size_t C = grid.chars.size();
  std::mt19937_64 rng(seed);

  std::vector<int64_t> bs;
  if (cfg.sample_b) {
    for (size_t i : detail::sample_indices(static_cast<size_t>(q - 1),
                                           static_cast<size_t>(cfg.sample_count), rng))
      bs.push_back(static_cast<int64_t>(i) + 1);
  } else {
    for (int64_t b = 1; b < q; ++b) bs.push_back(b);
  }

  for (size_t i1 = 0; i1 < C; ++i1) {
    for (size_t i2 = 0; i2 < C; ++i2) {
      std::vector<std::complex<double>> ref(static_cast<size_t>(m) + 1);
      for (int64_t n = 0; n <= m; ++n)
        ref[static_cast<size_t>(n)] = grid.brute2(i1, i2, n == m ? 0 : checked_pow(p, n));
      std::vector<std::complex<double>> ptab(static_cast<size_t>(q));
      for (int64_t x = 0; x < q; ++x)
        ptab[static_cast<size_t>(x)] =
            grid.tab[i1][static_cast<size_t>(x)] * grid.tab[i2][static_cast<size_t>(x)];

      DiscrepancyRecord rec;
      rec.suite = "jacobi-translation";
      rec.p = p;
      rec.m = m;
      detail::set_query(rec, {grid.chars[i1], grid.chars[i2]}, 0, 1);
      rec.method_a = "brute";
      rec.method_b = "translated";
      double worst_ratio = -1.0;
      for (int64_t b : bs) {
        const int64_t n = (b % p == 0) ? valuation(b, p) : 0;
        const int64_t bp = b / checked_pow(p, n);
        const std::complex<double> lhs = grid.brute2(i1, i2, b);
        const std::complex<double> rhs =
            ptab[static_cast<size_t>(bp)] * ref[static_cast<size_t>(n)];
        const double scale = std::pow(static_cast<double>(p), (m + n) / 2.0);
        const double ratio = std::abs(lhs - rhs) / (cfg.tolerance * scale);
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          rec.B = b;
          rec.n = n;
          rec.value_a = lhs;
          rec.value_b = rhs;
          rec.deviation = std::abs(lhs - rhs);
        }
      }
      rec.status = worst_ratio <= 1.0 ? Status::pass : Status::fail;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_jacobi_magnitude_law(const SweepConfig& cfg,
                                                                 int64_t q, int64_t k) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const int64_t p = grid.ctx.p();
  const int64_t m = grid.ctx.m();
  const size_t C = grid.chars.size();
  const int64_t n = m - 1;
  const int64_t b = checked_pow(p, n);
  const double top = std::pow(static_cast<double>(p), (m * k - 1) / 2.0);

  auto emit = [&](const std::vector<size_t>& idx, std::complex<double> value) {
    std::vector<Character> tuple;
    tuple.reserve(idx.size());
    bool all_primitive = true;
    bool any_primitive = false;
    for (size_t i : idx) {
      tuple.push_back(grid.chars[i]);
      const bool pr = grid.chars[i].is_primitive();
      all_primitive = all_primitive && pr;
      any_primitive = any_primitive || pr;
    }
    Character prod = tuple[0];
    for (size_t i = 1; i < tuple.size(); ++i) prod = prod * tuple[i];
    double expected = 0.0;
    if (all_primitive && prod.conductor_exponent() <= 1)
      expected = prod.is_principal()
                     ? std::pow(static_cast<double>(p), m * k / 2.0 - 1.0)
                     : top;
    DiscrepancyRecord rec;
    rec.suite = "jacobi-law";
    rec.p = p;
    rec.m = m;
    detail::set_query(rec, tuple, n, b);
    rec.method_a = "brute-magnitude";
    rec.method_b = "magnitude-law";
    rec.value_a = value;
    rec.value_b = {expected, 0.0};
    if (!any_primitive) {
      // The law presumes at least one primitive factor; tuples made entirely
      // of imprimitive characters are outside its scope.
      rec.deviation = 0.0;
      rec.status = Status::skipped;
      out.push_back(std::move(rec));
      return;
    }
    rec.deviation = std::abs(std::abs(value) - expected);
    const double tol = cfg.tolerance * (expected > 0.0 ? expected : top);
    rec.status = rec.deviation <= tol ? Status::pass : Status::fail;
    out.push_back(std::move(rec));
  };

  if (k == 2) {
    for (size_t i1 = 0; i1 < C; ++i1)
      for (size_t i2 = 0; i2 < C; ++i2) emit({i1, i2}, grid.brute2(i1, i2, b));
  } else {
    for (size_t i1 = 0; i1 < C; ++i1)
      for (size_t i2 = 0; i2 < C; ++i2)
        for (size_t i3 = 0; i3 < C; ++i3) emit({i1, i2, i3}, grid.brute3(i1, i2, i3, b));
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_jacobi_induction(const SweepConfig& cfg, int64_t q) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const UnitGroupContext& ctx = grid.ctx;
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  std::vector<size_t> prim;
  for (size_t i = 0; i < grid.chars.size(); ++i)
    if (grid.chars[i].is_primitive()) prim.push_back(i);

  for (size_t a : prim) {
    for (size_t bidx : prim) {
      const Character& chi1 = grid.chars[a];
      const Character& chi2 = grid.chars[bidx];
      const Character prod12 = chi1 * chi2;
      if (!prod12.is_primitive()) continue;
      const int64_t c1 = chi1.c();
      const int64_t c2 = chi2.c();
      const int64_t v = c1 + c2;
      // The two-character coefficient: chi1(c1) chi2(c2) conj(chi1 chi2)(v)
      // p^(m/2) (-2 r v c1 c2 | p)^m eps_{p^m}.
      Rotation rot = chi1.rotation_at(c1).value() + chi2.rotation_at(c2).value();
      rot = rot - prod12.rotation_at(v).value();
      int64_t lead = mod_reduce(-2 * ctx.r(), p);
      lead = mul_mod(lead, v, p);
      lead = mul_mod(lead, c1, p);
      lead = mul_mod(lead, c2, p);
      if (m % 2 != 0 && jacobi_symbol(lead, p) < 0) rot = rot + kRotMinusOne;
      rot = rot + Rotation::of(epsilon_exponent(p, m), 4);
      const ExactValue factor = ExactValue::make(p, m, rot);

      for (const Character& chi3 : grid.chars) {
        for (int64_t n = 0; n + 2 <= m; ++n) {
          const int64_t b = checked_pow(p, n);
          const SumResult lhs = jacobi_eval(JacobiQuery{{chi1, chi2, chi3}, b},
                                            JacobiMethod::automatic, cfg.term_guard);
          SumResult inner = jacobi_eval(JacobiQuery{{prod12, chi3}, b}, JacobiMethod::automatic,
                                        cfg.term_guard);
          const SumResult rhs = scale_result(factor, std::move(inner));
          DiscrepancyRecord rec;
          rec.suite = "jacobi-induction";
          rec.p = p;
          rec.m = m;
          detail::set_query(rec, {chi1, chi2, chi3}, n, b);
          detail::finish_paths(
              rec, {{"three-term", lhs}, {"reduced-pair", rhs}},
              cfg.tolerance * std::pow(static_cast<double>(p), (2.0 * m + n) / 2.0));
          out.push_back(std::move(rec));
        }
      }
    }
  }
  return out;
}

inline std::vector<DiscrepancyRecord> sweep_jacobi_power_characters(const SweepConfig& cfg,
                                                                    int64_t q, int64_t k,
                                                                    uint64_t seed) {
  std::vector<DiscrepancyRecord> out;
  detail::JacobiGrid grid(q);
  const UnitGroupContext& ctx = grid.ctx;
  const int64_t p = ctx.p();
  const int64_t m = ctx.m();
  const int64_t ord = ctx.cyclic_order();
  std::mt19937_64 rng(seed);

  std::vector<int64_t> valid;  // exponents in [1, 2 ord] prime to p
  for (int64_t nn = 1; nn <= 2 * ord; ++nn)
    if (nn % p != 0) valid.push_back(nn);

  for (const Character& chi : enumerate_characters(ctx, true)) {
    uint64_t total = 1;
    bool exhaustive = true;
    for (int64_t i = 0; i < k; ++i) {
      total *= valid.size();
      if (total > static_cast<uint64_t>(cfg.sample_count)) {
        exhaustive = false;
        break;
      }
    }
    std::vector<std::vector<int64_t>> tuples;
    if (exhaustive) {
      std::vector<size_t> odo(static_cast<size_t>(k), 0);
      for (;;) {
        std::vector<int64_t> tuple;
        tuple.reserve(static_cast<size_t>(k));
        for (size_t t : odo) tuple.push_back(valid[t]);
        tuples.push_back(std::move(tuple));
        size_t level = 0;
        while (level < odo.size() && ++odo[level] == valid.size()) {
          odo[level] = 0;
          ++level;
        }
        if (level == odo.size()) break;
      }
    } else {
      for (int64_t s = 0; s < cfg.sample_count; ++s) {
        std::vector<int64_t> tuple;
        tuple.reserve(static_cast<size_t>(k));
        for (int64_t i = 0; i < k; ++i)
          tuple.push_back(valid[static_cast<size_t>(rng() % valid.size())]);
        tuples.push_back(std::move(tuple));
      }
    }

    for (const std::vector<int64_t>& tuple : tuples) {
      std::vector<Character> powers;
      powers.reserve(tuple.size());
      int64_t u = 0;
      int64_t prod_nn = 1;
      for (int64_t nn : tuple) {
        powers.push_back(chi.pow(nn));
        u += nn;
        prod_nn = mul_mod(prod_nn, pow_mod(nn, static_cast<uint64_t>(nn), q), q);
      }
      const SumResult lhs = jacobi_closed(powers, 0);
      ExactValue rhs = chi.conjugate().value_at(pow_mod(u, static_cast<uint64_t>(u), q));
      rhs = rhs * chi.value_at(prod_nn);
      rhs = rhs * ExactValue::make(p, (k - 1) * m, kRotOne);

      DiscrepancyRecord rec;
      rec.suite = "jacobi-power";
      rec.p = p;
      rec.m = m;
      detail::set_query(rec, powers, 0, u);
      rec.method_a = "jacobi-closed";
      rec.method_b = "power-product";
      rec.value_a = lhs.approx;
      rec.value_b = rhs.to_complex();
      rec.deviation = std::abs(rec.value_a - rec.value_b);
      rec.status = lhs.value == rhs ? Status::pass : Status::fail;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Task list and runner
// ---------------------------------------------------------------------------

struct SweepTask {
  std::string name;
  std::function<std::vector<DiscrepancyRecord>(uint64_t seed)> run;
};

[[nodiscard]] inline std::vector<SweepTask> build_sweep_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  auto add = [&](std::string name, std::function<std::vector<DiscrepancyRecord>(uint64_t)> fn) {
    tasks.push_back({std::move(name), std::move(fn)});
  };

  add("jacobi-symbol", [cfg](uint64_t seed) { return sweep_jacobi_symbol(cfg, seed); });
  add("rotation", [cfg](uint64_t seed) { return sweep_rotation_arithmetic(cfg, seed); });

  for (int64_t p : cfg.primes) {
    int64_t q = 1;
    for (int64_t m = 1; m <= cfg.m_max; ++m) {
      if (q > cfg.q_cap_gauss / p) break;
      q *= p;
      if (m < cfg.m_min) continue;
      const std::string tag = " p=" + std::to_string(p) + " m=" + std::to_string(m);
      add("unit-structure" + tag,
          [cfg, p, m](uint64_t) { return sweep_unit_structure(cfg, p, m); });
      if (q <= cfg.q_cap_char)
        add("characters" + tag, [cfg, p, m](uint64_t) { return sweep_characters(cfg, p, m); });
      if (m >= 2)
        add("gauss-oracle" + tag,
            [cfg, p, m](uint64_t seed) { return sweep_gauss_oracle(cfg, p, m, seed); });
      if (q <= std::min<int64_t>(2048, cfg.q_cap_gauss))
        add("gauss-magnitude" + tag,
            [cfg, p, m](uint64_t) { return sweep_gauss_magnitude(cfg, p, m); });
      if (q <= std::min<int64_t>(512, cfg.q_cap_gauss))
        add("gauss-conjugation" + tag,
            [cfg, p, m](uint64_t) { return sweep_gauss_conjugation(cfg, p, m); });
    }
  }

  for (int64_t q : cfg.jacobi_moduli) {
    const auto [p, m] = prime_power_split(q);
    const std::string tag = " q=" + std::to_string(q);
    add("jacobi-pairs" + tag, [cfg, q](uint64_t) { return sweep_jacobi_pairs(cfg, q); });
    if (q <= 32 && cfg.k_max >= 3)
      add("jacobi-triples" + tag,
          [cfg, q](uint64_t seed) { return sweep_jacobi_triples(cfg, q, seed); });
    if (q <= 81)
      add("jacobi-translation" + tag,
          [cfg, q](uint64_t seed) { return sweep_jacobi_translation(cfg, q, seed); });
    if (p <= 3 && q <= 27) {
      for (int64_t k = std::max<int64_t>(2, cfg.k_min); k <= std::min<int64_t>(3, cfg.k_max);
           ++k)
        add("jacobi-law" + tag + " k=" + std::to_string(k),
            [cfg, q, k](uint64_t) { return sweep_jacobi_magnitude_law(cfg, q, k); });
    }
    if (p != 2 && q <= 27 && m >= 2 && cfg.k_max >= 3)
      add("jacobi-induction" + tag,
          [cfg, q](uint64_t) { return sweep_jacobi_induction(cfg, q); });
    if (p != 2 && p <= 5 && m % 2 == 0 && q <= 81) {
      for (int64_t k = std::max<int64_t>(2, cfg.k_min); k <= std::min<int64_t>(3, cfg.k_max);
           ++k)
        add("jacobi-power" + tag + " k=" + std::to_string(k),
            [cfg, q, k](uint64_t seed) { return sweep_jacobi_power_characters(cfg, q, k, seed); });
    }
  }
  return tasks;
}

/// Run every task, fanning out over cfg.jobs workers. Records come back in
/// task order; per-task seeds depend only on the task name and cfg.seed, so
/// output is identical for any job count.
[[nodiscard]] inline std::vector<DiscrepancyRecord> run_sweep(const SweepConfig& cfg,
                                                              SweepSummary& summary) {
  cfg.validate();
  const std::vector<SweepTask> tasks = build_sweep_tasks(cfg);
  std::vector<std::vector<DiscrepancyRecord>> slots(tasks.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const uint64_t seed = detail::fnv1a(tasks[i].name) ^ (cfg.seed * 0x9e3779b97f4a7c15ull + 1);
      try {
        slots[i] = tasks[i].run(seed);
      } catch (const std::exception& e) {
        DiscrepancyRecord rec;
        rec.suite = tasks[i].name;
        rec.method_a = "exception";
        rec.method_b = e.what();
        rec.deviation = 1.0;
        rec.status = Status::fail;
        slots[i] = {std::move(rec)};
      }
    }
  };
  const size_t jobs = std::min<size_t>(static_cast<size_t>(std::max(1, cfg.jobs)), tasks.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  size_t total = 0;
  for (const auto& slot : slots) total += slot.size();
  std::vector<DiscrepancyRecord> records;
  records.reserve(total);
  summary = SweepSummary{};
  for (auto& slot : slots) {
    for (DiscrepancyRecord& rec : slot) {
      switch (rec.status) {
        case Status::pass: ++summary.passed; break;
        case Status::fail: ++summary.failed; break;
        case Status::skipped: ++summary.skipped; break;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

}  // namespace charsum::verify
