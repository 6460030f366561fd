// hcount: command-line front end for lattice counting in the Heisenberg
// group under the Koranyi gauge.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcount/hcount.hpp"

namespace {

using namespace hcount;
using nlohmann::json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int cmd_count(u64 x) {
  const R2Table r2 = r2_sieve(0, isqrt_floor(x) + 1);
  const u64 s = count_S(x, r2);
  const u64 rho = rho_segment(x, x + 1, r2)[x];
  std::cout << kSampleCsvHeader << '\n' << sample_csv_row(error_sample(x, s, rho)) << '\n';
  return 0;
}

int cmd_scan(const ScanConfig& cfg, const std::string& out_path, const std::string& records_path) {
  std::ofstream csv;
  SampleSink sink;
  if (!out_path.empty()) {
    csv.open(out_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + out_path);
    csv << kSampleCsvHeader << '\n';
    sink = [&](const CountSample& c) { csv << sample_csv_row(c) << '\n'; };
  }
  const RecordTable rt = scan(cfg, sink);
  if (!records_path.empty()) {
    std::ofstream js(records_path, std::ios::binary);
    if (!js) throw std::runtime_error("cannot open " + records_path);
    js << records_json(rt).dump(2) << '\n';
  }
  std::cout << "# S(" << rt.x_hi << ") = " << rt.s_end << ", jump points = " << rt.jumps << '\n';
  std::cout << "# max |E|/(sqrt(x) ln x) = " << format_real(rt.corollary_constant) << " at x = " << rt.corollary_x
            << '\n';
  try {
    write_decade_csv(std::cout, decade_summary(rt));
  } catch (const PreconditionError& e) {
    std::cout << "# " << e.what() << '\n';
  }
  return 0;
}

int cmd_riesz(double rho, double y) {
  const R2Table r2 = r2_sieve(0, static_cast<u64>(std::floor(y)) + 1);
  const RieszSample s = riesz_error(y, rho, r2);
  const json j = {{"y", s.y}, {"rho", s.rho}, {"sum", s.sum}, {"main", s.main}, {"e_rho", s.e_rho}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_coeffs(unsigned n_max) {
  const CoefficientTable t = coefficient_table(n_max);
  std::cout << "n,c_n,partial\n";
  for (unsigned n = 0; n <= n_max; ++n) {
    std::cout << n << ',' << format_real(t.c[n]) << ',' << format_real(t.partials[n]) << '\n';
  }
  std::printf("# |partial - pi^2/4| = %.3e\n", std::fabs(t.partials.back() - kPi * kPi / 4.0));
  return 0;
}

int cmd_series(double x, unsigned n_max) {
  const R2Table r2 = r2_sieve(0, static_cast<u64>(std::floor(std::sqrt(x))) + 1);
  std::cout << "n,s_n,c_n_x\n";
  CompensatedSum total;
  for (unsigned n = 0; n <= n_max; ++n) {
    const double v = s_n(x, n, r2);
    total.add(v);
    std::cout << n << ',' << format_real(v) << ',' << format_real(c_coeff(n) * x) << '\n';
  }
  const double m = count_M_real(x, r2);
  std::cout << "# sum s_n = " << format_real(total.value()) << ", M(x) = " << format_real(m)
            << ", difference = " << format_real(total.value() - m) << '\n';
  return 0;
}

int cmd_volume(const GaugeParams& p, u64 samples, u64 seed, unsigned threads) {
  const VolumeEstimate est = mc_volume(p, samples, seed, resolve_threads(threads));
  const json j = {{"q", p.q},          {"alpha", p.alpha},         {"A", p.A},
                  {"samples", samples}, {"seed", seed},             {"hits", est.hits},
                  {"volume", est.volume}, {"std_error", est.std_error}, {"box_volume", est.box_volume}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_brute(const GaugeParams& p, u64 t4, unsigned threads) {
  std::cout << brute_count_t4(p, t4, resolve_threads(threads)) << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, unsigned threads) {
  verify::Options opt;
  opt.threads = threads;
  int failed = 0, ran = 0;
  for (const auto& c : verify::criteria(opt)) {
    if (suite != "all" && c.suite != suite) continue;
    const verify::CriterionResult r = verify::run_criterion(c);
    std::cout << verify::format_result(r) << std::endl;
    ++ran;
    failed += r.passed ? 0 : 1;
  }
  std::cout << ran - failed << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice-point counting in the Heisenberg group under the Koranyi gauge"};
  app.require_subcommand(1);
  unsigned threads = 0;

  u64 count_x = 0;
  auto* count = app.add_subcommand("count", "S(x), E(x) and E(x)/sqrt(x) from both sides");
  count->add_option("--x", count_x, "abscissa")->required();

  ScanConfig scfg;
  std::string out_path, records_path;
  auto* scan_cmd = app.add_subcommand("scan", "sweep all jump points below x-max");
  scan_cmd->add_option("--x-max", scfg.x_max)->required()->check(CLI::Range(u64{2}, u64{1} << 62));
  scan_cmd->add_option("--segment-len", scfg.segment_len)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--stride", scfg.sample_stride)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", out_path, "sample CSV");
  scan_cmd->add_option("--records", records_path, "records JSON");
  scan_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  double rho = 0.5, y = 0.0;
  auto* riesz = app.add_subcommand("riesz", "Riesz mean error E_rho(y) as JSON");
  riesz->add_option("--rho", rho)->required()->check(CLI::PositiveNumber);
  riesz->add_option("--y", y)->required()->check(CLI::NonNegativeNumber);

  unsigned n_max = 64;
  auto* coeffs = app.add_subcommand("coeffs", "coefficients c_n and partial sums");
  coeffs->add_option("--n-max", n_max)->required();

  double series_x = 0.0;
  unsigned series_n = 40;
  auto* series = app.add_subcommand("series", "S(sqrt x; n) for n <= n-max against M(x)");
  series->add_option("--x", series_x)->required()->check(CLI::PositiveNumber);
  series->add_option("--n-max", series_n)->required();

  GaugeParams gp;
  u64 samples = 1000000, seed = 1;
  auto* volume = app.add_subcommand("volume", "Monte-Carlo volume of the unit gauge ball");
  volume->add_option("--q", gp.q)->required()->check(CLI::PositiveNumber);
  volume->add_option("--alpha", gp.alpha)->required()->check(CLI::PositiveNumber);
  volume->add_option("--A", gp.A)->required()->check(CLI::PositiveNumber);
  volume->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  volume->add_option("--seed", seed)->required();
  volume->add_option("--threads", threads)->check(CLI::PositiveNumber);

  u64 t4 = 0;
  auto* brute = app.add_subcommand("brute", "brute-force count of lattice points with gauge < t");
  brute->add_option("--q", gp.q)->required()->check(CLI::PositiveNumber);
  brute->add_option("--alpha", gp.alpha)->required()->check(CLI::PositiveNumber);
  brute->add_option("--A", gp.A)->required()->check(CLI::PositiveNumber);
  brute->add_option("--t4", t4, "t^4")->required();
  brute->add_option("--threads", threads)->check(CLI::PositiveNumber);

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"all", "arith", "gauge", "identities", "scan"}));
  verify_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*count) return cmd_count(count_x);
    if (*scan_cmd) {
      scfg.threads = threads;
      return cmd_scan(scfg, out_path, records_path);
    }
    if (*riesz) return cmd_riesz(rho, y);
    if (*coeffs) return cmd_coeffs(n_max);
    if (*series) return cmd_series(series_x, series_n);
    if (*volume) return cmd_volume(gp, samples, seed, threads);
    if (*brute) return cmd_brute(gp, t4, threads);
    if (*verify_cmd) return cmd_verify(suite, threads);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
