#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "beatty/preservation.hpp"
#include "oracles.hpp"

using namespace beatty;

namespace {

SpectrumParams sp(const char* alpha, const char* gamma) {
  return SpectrumParams(RealValue::parse(alpha), RealValue::parse(gamma));
}

IntegerSet iota_set(std::uint64_t n) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t i = 1; i <= n; ++i) v.push_back(i);
  return IntegerSet(std::move(v), n);
}

IntegerSet evens_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t e = 2; e <= n; e += 2) v.push_back(e);
  return IntegerSet(std::move(v), n);
}

}  // namespace

TEST_CASE("injective_partition contract examples") {
  const IntegerSet twelve = iota_set(12);
  CHECK(injective_partition(RealValue::parse("2"), twelve).r == 1);
  CHECK(injective_partition(RealValue::parse("1"), twelve).r == 2);

  const PartitionCertificate cert =
      injective_partition(RealValue::parse("1/3"), twelve, RealValue::parse("1/2"));
  CHECK(cert.r == 4);
  REQUIRE(cert.classes.size() == 4);
  CHECK(cert.classes[0].elements() == std::vector<std::uint64_t>{1, 5, 9});
  CHECK(cert.classes[1].elements() == std::vector<std::uint64_t>{2, 6, 10});
  CHECK(cert.classes[2].elements() == std::vector<std::uint64_t>{3, 7, 11});
  CHECK(cert.classes[3].elements() == std::vector<std::uint64_t>{4, 8, 12});
  CHECK(cert.chosen_index == 0);  // 1 + 1/5 + 1/9 dominates
  REQUIRE(cert.injective.size() == 4);
  for (const bool b : cert.injective) CHECK(b);
  CHECK_THROWS_AS(injective_partition(RealValue::parse("2"), IntegerSet()), DomainError);
}

TEST_CASE("partition classes are strictly increasing under the map") {
  std::mt19937_64 eng(201);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t q = 1 + eng() % 40;
    const std::uint64_t p = 1 + eng() % 120;
    const std::uint64_t s = 2 + eng() % 30;
    const std::uint64_t r = 1 + eng() % (s - 1);
    const RealValue alpha = RealValue::from_rational(Rational(BigInt(p), BigInt(q)));
    const RealValue gamma = RealValue::from_rational(Rational(BigInt(r), BigInt(s)));
    const IntegerSet set = random_density_set(Rational(1, 2), 2000, eng());
    if (set.empty()) continue;
    const PartitionCertificate cert = injective_partition(alpha, set, gamma);
    std::size_t total = 0;
    for (const IntegerSet& cls : cert.classes) total += cls.size();
    CHECK(total == set.size());
    for (const bool inj : cert.injective) CHECK(inj);
  }
}

TEST_CASE("hsd_inequality_check contract examples") {
  {
    const HsdInequalityCheck c = hsd_inequality_check(sp("3/2", "1/2"), IntegerSet({2}, 2));
    CHECK(c.lhs_exact);
    CHECK(c.lhs_hi.to_rational() == Rational(1, 4));
    CHECK(c.rhs.to_rational() == Rational(1, 3));
    CHECK(c.holds);
  }
  {
    const HsdInequalityCheck c = hsd_inequality_check(sp("1", "1/2"), iota_set(10));
    FractionSum lhs, rhs;
    for (std::uint64_t n = 1; n <= 10; ++n) {
      lhs.add_reciprocal(BigInt(n + 1));
      rhs.add_reciprocal(BigInt(n));
    }
    CHECK(c.lhs_hi.to_rational() == lhs.to_rational());
    CHECK(c.rhs.to_rational() == rhs.to_rational());
    CHECK(c.holds);
  }
  {
    const HsdInequalityCheck c =
        hsd_inequality_check(sp("3/2", "1/2"), IntegerSet({2, 4, 6}, 6));
    CHECK(c.lhs_hi.to_rational() ==
          Rational(1, 4) + Rational(1, 7) + Rational(1, 10));
    CHECK(c.rhs.to_rational() == Rational(1, 3) + Rational(1, 6) + Rational(1, 9));
    CHECK(c.holds);
  }
}

TEST_CASE("hsd inequality with surd alpha certifies through enclosures") {
  const HsdInequalityCheck c =
      hsd_inequality_check(sp("(0+1*sqrt(2))/1", "1/3"), IntegerSet({1, 3, 7, 20}, 20));
  CHECK_FALSE(c.lhs_exact);
  CHECK(c.holds);
  CHECK(c.lhs_lo.compare(c.lhs_hi) <= 0);
}

TEST_CASE("density_transfer_check contract examples") {
  {
    const std::vector<std::uint64_t> samples{10};
    const DensityComparison c = density_transfer_check(sp("1", "1/2"), iota_set(10), samples);
    CHECK(c.case_tag == 1);
    CHECK(c.holds);
    CHECK(c.samples.front().lhs == Rational(10));
    CHECK(c.samples.front().rhs == Rational(10));
  }
  {
    const std::vector<std::uint64_t> samples{6};
    const DensityComparison c = density_transfer_check(sp("3/2", "1/2"), evens_up_to(6), samples);
    CHECK(c.case_tag == 2);
    CHECK(c.r == 2);
    CHECK(c.samples.front().image_cut == 9);
    CHECK(c.samples.front().lhs == Rational(1, 3));
    CHECK(c.samples.front().rhs == Rational(1, 4));
    CHECK(c.holds);
    CHECK(c.beta == Rational(1, 2));
  }
  {
    const std::vector<std::uint64_t> samples{8};
    const DensityComparison c =
        density_transfer_check(sp("1/2", "1/2"), IntegerSet({2, 4, 6, 8}, 8), samples);
    CHECK(c.case_tag == 1);
    CHECK(c.samples.front().lhs == Rational(4));
    CHECK(c.samples.front().rhs == Rational(4));
    CHECK(c.holds);
  }
  // a class on which the map collides is rejected loudly
  const std::vector<std::uint64_t> samples{2};
  CHECK_THROWS_AS(density_transfer_check(sp("1/2", "1/2"), IntegerSet({1, 2}, 2), samples),
                  ContractViolation);
}

TEST_CASE("gap_transfer_check contract examples") {
  {
    const GapTransferCheck c = gap_transfer_check(sp("3/2", "1/2"), evens_up_to(20));
    CHECK(c.input_max_gap == 2);
    CHECK(c.image_max_gap == 3);
    CHECK(c.bound_upper == Rational(4));
    CHECK(c.bound_exact);
    CHECK(c.holds);
  }
  {
    const GapTransferCheck c = gap_transfer_check(sp("1", "2/3"), iota_set(10));
    CHECK(c.image_max_gap <= c.input_max_gap + 1);
    CHECK(c.holds);
  }
  {
    const GapTransferCheck c = gap_transfer_check(sp("1/2", "1/2"), iota_set(10));
    CHECK(c.image_max_gap <= 1);
    CHECK(c.holds);
  }
  CHECK_THROWS_AS(gap_transfer_check(sp("1", "1/2"), IntegerSet({3}, 3)), SizeError);
}

TEST_CASE("transfer checks hold on random corpora") {
  std::mt19937_64 eng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t q = 1 + eng() % 30;
    const std::uint64_t p = 1 + eng() % 90;
    const std::uint64_t s = 2 + eng() % 20;
    const std::uint64_t r = 1 + eng() % (s - 1);
    const SpectrumParams params(RealValue::from_rational(Rational(BigInt(p), BigInt(q))),
                                RealValue::from_rational(Rational(BigInt(r), BigInt(s))));
    const IntegerSet set = random_density_set(Rational(1, 2), 3000, eng());
    if (set.size() < 2) continue;

    const PartitionCertificate part = injective_partition(params.alpha(), set, params.gamma());
    CHECK(part.injective[part.chosen_index]);
    CHECK(hsd_inequality_check(params, part.chosen_class()).holds);

    const DensityReport density = density_report(part.chosen_class(), 64);
    CHECK(density_transfer_check(params, part.chosen_class(), density.prefix_argmax).holds);
    CHECK(gap_transfer_check(params, set).holds);
  }
}

TEST_CASE("suite output is deterministic and identity-clean at alpha one") {
  const IntegerSet primes = primes_up_to(300);
  const SpectrumParams identity = sp("1", "1/2");
  const PreservationSuite a = run_preservation_suite(identity, primes, all_families(), 16);
  const PreservationSuite b = run_preservation_suite(identity, primes, all_families(), 16);
  CHECK(a.theorems_hold);
  CHECK(emit_report(a.rows) == emit_report(b.rows));

  // with alpha = 1 the map is the identity, so both sides carry equal values;
  // the declared universe bound is the one field allowed to differ, since the
  // image universe is g(max), not the input's declared bound
  for (const ReportRow& row : a.rows) {
    if (row.side != "input") continue;
    if (row.family == "set" && row.field == "universe_bound") continue;
    for (const ReportRow& other : a.rows) {
      if (other.side == "image" && other.family == row.family && other.field == row.field)
        CHECK(other.value == row.value);
    }
  }
}

TEST_CASE("suite runs with a surd alpha") {
  const PreservationSuite suite = run_preservation_suite(
      sp("(0+1*sqrt(7))/1", "2/3"), primes_up_to(500), all_families(), 16);
  CHECK(suite.theorems_hold);
  bool saw_hsd_holds = false;
  for (const ReportRow& row : suite.rows) {
    if (row.family == "hsd_inequality" && row.field == "holds") {
      saw_hsd_holds = true;
      CHECK(row.value == "true");
    }
  }
  CHECK(saw_hsd_holds);
}

TEST_CASE("suite CSV matches the pinned golden run") {
  const PreservationSuite suite =
      run_preservation_suite(sp("3/2", "1/2"), primes_up_to(100), all_families(), 10);
  CHECK(suite.theorems_hold);
  const std::string csv = emit_report(suite.rows);
  std::ifstream golden(std::string(BEATTY_TEST_DATA_DIR) + "/preserve_primes100.csv",
                       std::ios::binary);
  REQUIRE(golden.good());
  std::stringstream buf;
  buf << golden.rdbuf();
  CHECK(csv == buf.str());
}
