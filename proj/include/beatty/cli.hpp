#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "beatty/chains.hpp"
#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/largeness.hpp"
#include "beatty/preservation.hpp"
#include "beatty/real.hpp"
#include "beatty/spectrum.hpp"

namespace beatty::cli {

// Exit codes: 0 success, 1 input error, 2 theorem-backed invariant failure.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kContractViolation = 2;

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline std::vector<std::uint64_t> parse_terms(const std::string& csv) {
  std::vector<std::uint64_t> terms;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const auto piece = beatty::detail::trim(std::string_view(csv).substr(pos, comma - pos));
    if (!piece.empty()) {
      const Rational r = Rational::parse(piece);
      if (!r.is_integer() || r <= Rational(0))
        throw ParseError("--terms entries must be positive integers");
      terms.push_back(static_cast<std::uint64_t>(r.num()));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return terms;
}

inline std::string chain_verdict_text(const ChainVerdict& v, const std::string& prefix) {
  std::string out;
  out += prefix + "family_failures=";
  if (v.family_failures.empty()) out += "none";
  for (std::size_t i = 0; i < v.family_failures.size(); ++i)
    out += (i ? ";" : "") + std::to_string(v.family_failures[i]);
  out += "\n" + prefix + "violations=";
  if (v.violations.empty()) out += "none";
  for (std::size_t i = 0; i < v.violations.size(); ++i)
    out += (i ? ";" : "") + std::string("(") + std::to_string(v.violations[i].level) + "," +
           std::to_string(v.violations[i].x) + ")";
  out += "\n" + prefix + "verdict=" + (v.holds ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace detail

struct RunConfig {
  // gen
  std::uint64_t limit = 0;
  std::string density;
  std::uint64_t bound = 0;
  std::uint64_t seed = 0;
  std::string terms;
  // shared
  std::string alpha, gamma;
  std::string in_path, out_path, report_path, csv_path, chain_path;
  std::string families = "if,ap,ps,puad,pubd,hsd";
  std::uint64_t window = 0;
  bool preimage = false;
  // certify
  std::string family_arg;
  std::uint64_t shift_bound = 64;
};

inline int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"finite certificates for nonhomogeneous spectra"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen", "generate integer sets");
  gen->require_subcommand(1);
  auto* gen_primes = gen->add_subcommand("primes", "sieve the primes up to a limit");
  gen_primes->add_option("--limit", cfg.limit, "sieve bound (>= 2)")->required();
  gen_primes->add_option("--out", cfg.out_path, "output set file")->required();
  auto* gen_random = gen->add_subcommand("random", "seeded Bernoulli set");
  gen_random->add_option("--density", cfg.density, "inclusion probability, rational in (0,1]")
      ->required();
  gen_random->add_option("--bound", cfg.bound, "universe bound")->required();
  gen_random->add_option("--seed", cfg.seed, "generator seed")->required();
  gen_random->add_option("--out", cfg.out_path, "output set file")->required();
  auto* gen_fs = gen->add_subcommand("fs", "all finite subset sums of the given terms");
  gen_fs->add_option("--terms", cfg.terms, "comma-separated generator terms")->required();
  gen_fs->add_option("--out", cfg.out_path, "output set file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "apply n -> floor(alpha n + gamma) to a set");
  spectrum->add_option("--alpha", cfg.alpha, "alpha > 0")->required();
  spectrum->add_option("--gamma", cfg.gamma, "gamma in (0,1)")->required();
  spectrum->add_option("--in", cfg.in_path, "input set file")->required();
  spectrum->add_option("--out", cfg.out_path, "output set file")->required();
  spectrum->add_flag("--preimage", cfg.preimage, "compute the preimage on [1, bound] instead");
  spectrum->add_option("--bound", cfg.bound, "preimage domain bound");

  auto* analyze = app.add_subcommand("analyze", "largeness certificates for a set");
  analyze->add_option("--in", cfg.in_path, "input set file")->required();
  analyze->add_option("--families", cfg.families, "comma list from if,ap,ps,puad,pubd,hsd");
  analyze->add_option("--window", cfg.window, "Banach window length")->required();
  analyze->add_option("--report", cfg.report_path, "output CSV path")->required();

  auto* preserve = app.add_subcommand("preserve", "before/after certificates plus transfer checks");
  preserve->add_option("--alpha", cfg.alpha, "alpha > 0")->required();
  preserve->add_option("--gamma", cfg.gamma, "gamma in (0,1)")->required();
  preserve->add_option("--in", cfg.in_path, "input set file")->required();
  preserve->add_option("--families", cfg.families, "comma list from if,ap,ps,puad,pubd,hsd");
  preserve->add_option("--window", cfg.window, "Banach window length")->required();
  preserve->add_option("--csv", cfg.csv_path, "output CSV path")->required();

  auto* certify = app.add_subcommand("certify", "verify a decreasing-chain certificate");
  certify->add_option("--chain", cfg.chain_path, "chain file (set blocks separated by ---)")
      ->required();
  certify->add_option("--family", cfg.family_arg, "family check, e.g. hsd:5/2 or if:1")
      ->required();
  certify->add_option("--shift-bound", cfg.shift_bound, "largest shift x tested (default 64)");
  certify->add_option("--alpha", cfg.alpha, "optional: also run the image-chain experiment");
  certify->add_option("--gamma", cfg.gamma, "gamma for the image-chain experiment");
  certify->add_option("--out", cfg.out_path, "write the report here instead of stdout");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("beatty");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (gen_primes->parsed()) {
      write_set_file(primes_up_to(cfg.limit), cfg.out_path);
      return kOk;
    }
    if (gen_random->parsed()) {
      write_set_file(random_density_set(Rational::parse(cfg.density), cfg.bound, cfg.seed),
                     cfg.out_path);
      return kOk;
    }
    if (gen_fs->parsed()) {
      write_set_file(finite_sums(GeneratorSequence(detail::parse_terms(cfg.terms))), cfg.out_path);
      return kOk;
    }
    if (spectrum->parsed()) {
      const SpectrumParams params(RealValue::parse(cfg.alpha), RealValue::parse(cfg.gamma));
      const IntegerSet in = read_set_file(cfg.in_path);
      if (cfg.preimage) {
        if (cfg.bound == 0) throw DomainError("--preimage requires --bound");
        write_set_file(spectrum_preimage(params, in, cfg.bound), cfg.out_path);
      } else {
        write_set_file(spectrum_image(params, in), cfg.out_path);
      }
      return kOk;
    }
    if (analyze->parsed()) {
      const IntegerSet in = read_set_file(cfg.in_path);
      const std::vector<Family> families = parse_families(cfg.families);
      const LargenessReport rep = analyze_set(in, families, cfg.window);
      std::vector<ReportRow> rows;
      append_report_rows(rows, rep, "input",
                         "in=" + cfg.in_path + ";window=" + std::to_string(cfg.window));
      detail::write_text_file(cfg.report_path, emit_report(std::move(rows)));
      return kOk;
    }
    if (preserve->parsed()) {
      const SpectrumParams params(RealValue::parse(cfg.alpha), RealValue::parse(cfg.gamma));
      const IntegerSet in = read_set_file(cfg.in_path);
      const std::vector<Family> families = parse_families(cfg.families);
      const PreservationSuite suite = run_preservation_suite(params, in, families, cfg.window);
      detail::write_text_file(cfg.csv_path, emit_report(suite.rows));
      if (!suite.theorems_hold) {
        std::cerr << "beatty: a theorem-backed check failed; see " << cfg.csv_path << "\n";
        return kContractViolation;
      }
      return kOk;
    }
    if (certify->parsed()) {
      const Chain chain = read_chain_file(cfg.chain_path);
      const FamilyCheck check = FamilyCheck::parse(cfg.family_arg);
      std::string text;
      text += "chain_levels=" + std::to_string(chain.depth()) + "\n";
      text += "universe_bound=" + std::to_string(chain.universe_bound) + "\n";
      text += "family_check=" + check.to_string() + "\n";
      text += "shift_bound=" + std::to_string(cfg.shift_bound) + "\n";
      if (!cfg.alpha.empty() || !cfg.gamma.empty()) {
        if (cfg.alpha.empty() || cfg.gamma.empty())
          throw DomainError("the image-chain experiment needs both --alpha and --gamma");
        const SpectrumParams params(RealValue::parse(cfg.alpha), RealValue::parse(cfg.gamma));
        const ImageChainReport rep = image_chain_experiment(params, chain, check, cfg.shift_bound);
        text += detail::chain_verdict_text(rep.input_verdict, "");
        text += "image_alpha=" + params.alpha().to_string() + "\n";
        text += "image_gamma=" + params.gamma().to_string() + "\n";
        text += "image_universe_bound=" + std::to_string(rep.image_chain.universe_bound) + "\n";
        text += detail::chain_verdict_text(rep.image_verdict, "image_");
      } else {
        text += detail::chain_verdict_text(verify_chain_d(chain, check, cfg.shift_bound), "");
      }
      if (cfg.out_path.empty())
        std::cout << text;
      else
        detail::write_text_file(cfg.out_path, text);
      return kOk;
    }
    throw DomainError("no subcommand selected");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "beatty: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractViolation& e) {
    std::cerr << "beatty: contract violation: " << e.what() << "\n";
    return kContractViolation;
  } catch (const Error& e) {
    std::cerr << "beatty: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "beatty: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace beatty::cli
