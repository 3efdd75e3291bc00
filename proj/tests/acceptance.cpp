// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the binary
// exits nonzero if any criterion fails. Pass the CLI binary path as argv[1]
// so the determinism criterion can spawn real pipelines.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beatty/beatty.hpp"
#include "oracles.hpp"

using namespace beatty;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::string cli_path;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Rational rnd_gamma(std::mt19937_64& eng, std::uint64_t max_den) {
  const std::uint64_t s = 2 + eng() % (max_den - 1);
  const std::uint64_t r = 1 + eng() % (s - 1);
  return Rational(BigInt(r), BigInt(s));
}

// gamma in (max(0, 1 - alpha), 1): keeps alpha*n + gamma >= 1 for every
// n >= 1, so spectrum values never drop out of N anywhere in the corpus
Rational rnd_gamma_above(std::mt19937_64& eng, const Rational& alpha) {
  if (alpha >= Rational(1)) return rnd_gamma(eng, 60);
  const BigInt& p = alpha.num();
  const BigInt& q = alpha.den();
  for (;;) {
    const std::uint64_t s = 2 + eng() % 120;
    const BigInt rmin_b = (BigInt(s) * (q - p)) / q + 1;
    if (rmin_b > BigInt(s - 1)) continue;
    const auto rmin = static_cast<std::uint64_t>(rmin_b);
    const std::uint64_t r = rmin + eng() % (s - rmin);
    return Rational(BigInt(r), BigInt(s));
  }
}

// ---------------------------------------------------------------------------

// C1: floor_affine agrees with the raw big-integer product formula on 1000
// seeded rational pairs and every n <= 1e4, in under 10 seconds.
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 eng(0xC1);
  std::uint64_t mismatches = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const std::uint64_t q = 1 + eng() % 1000;
    const std::uint64_t p = 1 + eng() % (1000 * q);  // alpha <= 1000
    const std::uint64_t s = 2 + eng() % 9999;
    const std::uint64_t r = 1 + eng() % (s - 1);
    const RealValue alpha = RealValue::from_rational(Rational(BigInt(p), BigInt(q)));
    const RealValue gamma = RealValue::from_rational(Rational(BigInt(r), BigInt(s)));
    const BigInt bp(p), bq(q), br(r), bs(s);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      if (floor_affine(alpha, gamma, n) != oracles::floor_formula(bp, bq, br, bs, n))
        ++mismatches;
    }
  }
  const double dt = seconds_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "1000 pairs x 10^4 evaluations, %llu mismatches, %.1fs",
                static_cast<unsigned long long>(mismatches), dt);
  report("C1 exact-floor oracle equivalence", mismatches == 0 && dt < 10.0, detail);
}

// C2: integer-level shadows of the circle-map identities, exact rational
// arithmetic, zero failures over 50 seeded parameter pairs.
void criterion2() {
  std::mt19937_64 eng(0xC2);
  std::uint64_t add_fail = 0, zone_fail = 0, round_fail = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t q = 1 + eng() % 400;
    const std::uint64_t p = 1 + eng() % (4 * q);
    const Rational alpha{BigInt(p), BigInt(q)};
    const Rational gamma = rnd_gamma(eng, 300);
    const RealValue av = RealValue::from_rational(alpha);
    const RealValue gv = RealValue::from_rational(gamma);

    // (a) additivity mod 1 over all x, y <= 1000; residues scaled to /q
    std::vector<long long> fnum(2001);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      const Rational f = signed_frac(av, n).value();
      fnum[n] = static_cast<long long>(f.num() * (BigInt(q) / f.den()));
    }
    const auto ll_q = static_cast<long long>(q);
    for (std::uint64_t x = 1; x <= 1000; ++x) {
      for (std::uint64_t y = x; y <= 1000; ++y) {
        long long sum = fnum[x] + fnum[y];  // reduce into [-q/2, q/2)
        while (2 * sum >= ll_q) sum -= ll_q;
        while (2 * sum < -ll_q) sum += ll_q;
        if (sum != fnum[x + y]) ++add_fail;
      }
    }

    // (b) g = h exactly when -gamma <= f < 1 - gamma
    // (c) h_{1/alpha} inverts h_alpha when |f| < min(1/2, alpha/2)
    const RealValue inv = av.reciprocal();
    const Rational rt_threshold = std::min(Rational(1, 2), alpha * Rational(1, 2));
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      const Rational f = signed_frac(av, n).value();
      const BigInt h = nearest_affine(av, n);
      if (-gamma <= f && f < Rational(1) - gamma) {
        if (floor_affine(av, gv, n) != h) ++zone_fail;
      }
      if (f.abs() < rt_threshold) {
        if (h < 1 || nearest_affine(inv, static_cast<std::uint64_t>(h)) != n) ++round_fail;
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "additivity fails %llu, g=h zone fails %llu, round-trip fails %llu",
                static_cast<unsigned long long>(add_fail),
                static_cast<unsigned long long>(zone_fail),
                static_cast<unsigned long long>(round_fail));
  report("C2 circle-map finite shadows", add_fail + zone_fail + round_fail == 0, detail);
}

// C3: the injective partition construction plus the harmonic comparison on
// 100 seeded dense corpora, exact rationals, under 30 seconds.
void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 eng(0xC3);
  std::uint64_t bad = 0, small = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t q = 1 + eng() % 60;
    const std::uint64_t p = 1 + eng() % 60;
    const Rational alpha_r{BigInt(p), BigInt(q)};
    const RealValue alpha = RealValue::from_rational(alpha_r);
    const RealValue gamma = RealValue::from_rational(rnd_gamma_above(eng, alpha_r));
    const Rational density{1 + static_cast<long long>(eng() % 4), 4};  // >= 1/4
    const IntegerSet set = random_density_set(density, 10000, eng());
    if (set.size() < 1000) {
      ++small;
      continue;
    }
    const SpectrumParams params(alpha, gamma);
    const PartitionCertificate part = injective_partition(alpha, set, gamma);
    if (!part.injective[part.chosen_index]) ++bad;
    if (!hsd_inequality_check(params, part.chosen_class()).holds) ++bad;
  }
  const double dt = seconds_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "100 corpora, %llu failures, %llu undersized, %.1fs",
                static_cast<unsigned long long>(bad), static_cast<unsigned long long>(small), dt);
  report("C3 partition and harmonic comparison", bad == 0 && small == 0 && dt < 30.0, detail);
}

// C4: the density-transfer inequality at every sample point, 50 configs in
// each regime (alpha <= 1 and alpha > 1).
void criterion4() {
  std::mt19937_64 eng(0xC4);
  std::uint64_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool shrinking = trial < 50;
    const std::uint64_t q = 2 + eng() % 40;
    const std::uint64_t p = shrinking ? 1 + eng() % q : q + 1 + eng() % (3 * q);
    const Rational alpha_r{BigInt(p), BigInt(q)};
    const RealValue alpha = RealValue::from_rational(alpha_r);
    const RealValue gamma = RealValue::from_rational(rnd_gamma_above(eng, alpha_r));
    const Rational density{1 + static_cast<long long>(eng() % 4), 4};
    const IntegerSet set = random_density_set(density, 10000, eng());
    if (set.empty()) continue;
    const SpectrumParams params(alpha, gamma);
    const PartitionCertificate part = injective_partition(alpha, set, gamma);
    const DensityReport rep =
        density_report(part.chosen_class(), std::min<std::uint64_t>(64, set.universe_bound()));
    const DensityComparison cmp =
        density_transfer_check(params, part.chosen_class(), rep.prefix_argmax);
    if (!cmp.holds) ++bad;
    if ((cmp.case_tag == 1) != shrinking) ++bad;
  }
  report("C4 density transfer in both regimes", bad == 0,
         bad == 0 ? "100 configs, all samples verified" : "failures: " + std::to_string(bad));
}

// C5: the gap-transfer bound image_max_gap <= alpha*input_max_gap + 1 over
// 100 seeded bounded-gap inputs.
void criterion5() {
  std::mt19937_64 eng(0xC5);
  std::uint64_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t max_gap = 1 + eng() % 10;
    std::vector<std::uint64_t> elems;
    std::uint64_t v = 0;
    for (int i = 0; i < 1500; ++i) {
      v += 1 + eng() % max_gap;
      elems.push_back(v);
    }
    const IntegerSet set(std::move(elems), v);
    const std::uint64_t q = 1 + eng() % 30;
    const std::uint64_t p = 1 + eng() % 90;
    const Rational alpha_r{BigInt(p), BigInt(q)};
    const SpectrumParams params(RealValue::from_rational(alpha_r),
                                RealValue::from_rational(rnd_gamma_above(eng, alpha_r)));
    if (!gap_transfer_check(params, set).holds) ++bad;
  }
  report("C5 gap transfer bound", bad == 0,
         bad == 0 ? "100 syndetic inputs verified" : "failures: " + std::to_string(bad));
}

// C6: the prime corpus at desk scale: exact harmonic partial sum within
// [2.70, 2.71], the hand-verifiable progression in the primes up to 30, and
// the pinned progression in the spectrum image of the primes up to 1e5.
void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  const IntegerSet primes = primes_up_to(100000);
  const FractionSum harmonic = harmonic_accumulate(primes);
  if (!(harmonic.compare(Rational(27, 10)) >= 0 && harmonic.compare(Rational(271, 100)) <= 0)) {
    ok = false;
    detail += "harmonic sum out of [2.70, 2.71]; ";
  }

  const ApCertificate small = longest_ap(primes_up_to(30));
  if (!(small == ApCertificate{5, 5, 6})) {
    ok = false;
    detail += "primes<=30 progression mismatch; ";
  }

  const SpectrumParams params(RealValue::parse("3/2"), RealValue::parse("1/2"));
  const IntegerSet image = spectrum_image(params, primes);
  const ApCertificate cert = longest_ap(image);
  if (cert.length < 4) {
    ok = false;
    detail += "image progression shorter than 4; ";
  }
  if (!(cert == ApCertificate{10, 299, 315})) {
    ok = false;
    detail += "image progression differs from the pinned run; ";
  }
  for (std::uint64_t i = 0; i < cert.length; ++i) {
    if (!image.contains(cert.start + i * cert.difference)) {
      ok = false;
      detail += "pinned progression fails revalidation; ";
      break;
    }
  }

  const double dt = seconds_since(t0);
  char timing[96];
  std::snprintf(timing, sizeof timing, "harmonic %s, image AP length %llu, %.1fs",
                harmonic.decimal(6).c_str(), static_cast<unsigned long long>(cert.length), dt);
  report("C6 prime corpus", ok && dt < 20.0, detail + timing);
}

// C7: search oracles: longest_ap against the unpruned cubic walk on 500
// random sets, and j_witness_search against the double loop on 100 instances.
void criterion7() {
  std::mt19937_64 eng(0xC7);
  std::uint64_t ap_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::set<std::uint64_t> pool;
    const std::size_t count = 3 + eng() % 58;
    while (pool.size() < count) pool.insert(1 + eng() % 500);
    const std::vector<std::uint64_t> elems(pool.begin(), pool.end());
    const IntegerSet set = IntegerSet::with_inferred_bound(elems);
    const ApCertificate cert = longest_ap(set);
    if (cert.length != oracles::longest_ap_length(elems)) ++ap_bad;
    for (std::uint64_t i = 0; i < cert.length; ++i)
      if (!set.contains(cert.start + i * cert.difference)) ++ap_bad;
  }

  std::uint64_t j_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + eng() % 6;
    std::vector<std::vector<std::uint64_t>> fns(1 + eng() % 3);
    for (auto& f : fns) {
      f.resize(m);
      for (auto& x : f) x = 1 + eng() % 8;
    }
    std::vector<std::uint64_t> elems;
    for (std::uint64_t x = 1; x <= 60; ++x)
      if (eng() % 2) elems.push_back(x);
    if (elems.empty()) elems.push_back(2);
    const IntegerSet target = IntegerSet::with_inferred_bound(elems);
    const std::uint64_t a_bound = 1 + eng() % 50;
    const std::size_t h_cap = 1 + eng() % m;
    const auto got = j_witness_search(fns, target, a_bound, h_cap);
    const auto want = oracles::j_search(fns, target.elements(), a_bound, h_cap);
    if (got.has_value() != want.has_value()) {
      ++j_bad;
    } else if (got) {
      if (got->shift != want->shift || got->indices != want->indices) ++j_bad;
      if (!revalidate(*got, fns, target)) ++j_bad;
    }
  }

  char detail[96];
  std::snprintf(detail, sizeof detail, "ap mismatches %llu, witness mismatches %llu",
                static_cast<unsigned long long>(ap_bad), static_cast<unsigned long long>(j_bad));
  report("C7 largeness oracle equivalence", ap_bad + j_bad == 0, detail);
}

// C8: chain certificates: the canonical powers-of-two chain passes, the
// planted control fails at exactly the planted shift, and the identity map
// reproduces both verdicts.
void criterion8() {
  bool ok = true;
  std::string detail;

  // generators are the powers of two below 2^16; the chain's universe is
  // their subset-sum total 2^16 - 1, the window the certificate is sound on
  std::vector<std::uint64_t> pows;
  for (int i = 0; i < 16; ++i) pows.push_back(1ull << i);
  const Chain canonical = canonical_ip_chain(GeneratorSequence(pows), 5);
  const FamilyCheck check = FamilyCheck::parse("if:1");
  const ChainVerdict good = verify_chain_d(canonical, check, 64);
  if (!good.holds) {
    ok = false;
    detail += "canonical chain rejected; ";
  }

  std::vector<std::uint64_t> full;
  for (std::uint64_t i = 1; i <= 100; ++i) full.push_back(i);
  const Chain planted = make_chain({IntegerSet(full, 100), IntegerSet({2, 64}, 100)});
  const ChainVerdict bad = verify_chain_d(planted, check, 32);
  if (!(bad.violations == std::vector<ChainViolation>{{2, 2}}) || bad.holds) {
    ok = false;
    detail += "planted violation not isolated; ";
  }

  const SpectrumParams identity(RealValue::parse("1"), RealValue::parse("1/2"));
  const ImageChainReport rep_good = image_chain_experiment(identity, canonical, check, 64);
  const ImageChainReport rep_bad = image_chain_experiment(identity, planted, check, 32);
  if (!(rep_good.image_verdict.holds == good.holds &&
        rep_good.image_verdict.violations == good.violations &&
        rep_bad.image_verdict.violations == bad.violations)) {
    ok = false;
    detail += "identity image changed a verdict; ";
  }

  report("C8 chain certificates", ok,
         detail.empty() ? "canonical passes, control fails at (2,2), identity stable" : detail);
}

// C9: byte-identical outputs from repeated CLI pipelines.
void criterion9() {
  if (cli_path.empty()) {
    report("C9 pipeline determinism", false, "no CLI path given (pass it as argv[1])");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "beatty_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto path = [&](const std::string& name) { return (dir / name).string(); };

  {
    std::vector<std::uint64_t> tower;
    for (int i = 0; i < 10; ++i) tower.push_back(1ull << i);
    write_chain_file(canonical_ip_chain(GeneratorSequence(tower), 4), path("chain.txt"));
  }

  const std::vector<std::pair<std::string, std::string>> pipelines = {
      {"gen primes --limit 200 --out ", "primes"},
      {"gen random --density 1/2 --bound 2000 --seed 7 --out ", "random"},
      {"gen fs --terms 1,2,4,8,16 --out ", "fs"},
      {"spectrum --alpha 3/2 --gamma 1/2 --in " + path("primes_1.txt") + " --out ", "image"},
      {"spectrum --alpha 3/2 --gamma 1/2 --preimage --bound 200 --in " + path("image_1.txt") +
           " --out ",
       "preimage"},
      {"analyze --in " + path("primes_1.txt") + " --window 16 --report ", "analyze"},
      {"preserve --alpha 3/2 --gamma 1/3 --in " + path("primes_1.txt") +
           " --families if,ap,ps,puad,pubd,hsd --window 16 --csv ",
       "preserve"},
      {"certify --chain " + path("chain.txt") + " --family if:1 --shift-bound 32 --out ",
       "certify"},
  };

  bool ok = true;
  std::string detail;
  for (const auto& [command, name] : pipelines) {
    std::string out[2];
    for (int run = 0; run < 2; ++run) {
      out[run] = path(name + "_" + std::to_string(run + 1) + ".txt");
      const std::string full = cli_path + " " + command + out[run] + " >/dev/null 2>&1";
      if (std::system(full.c_str()) != 0) {
        ok = false;
        detail += name + " exited nonzero; ";
        break;
      }
    }
    if (!ok) break;
    std::ifstream a(out[0], std::ios::binary), b(out[1], std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str().empty() || sa.str() != sb.str()) {
      ok = false;
      detail += name + " not byte-identical; ";
    }
  }
  report("C9 pipeline determinism", ok,
         ok ? std::to_string(pipelines.size()) + " pipelines byte-stable" : detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
