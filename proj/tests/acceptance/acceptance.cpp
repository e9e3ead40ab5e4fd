#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "exittime/exit_time.hpp"
#include "exittime/harness.hpp"
#include "exittime/hypoexp.hpp"
#include "exittime/ssa.hpp"
#include "exittime/stats.hpp"
#include "exittime/variate_source.hpp"
#include "support/oracles.hpp"
#include "support/sir.hpp"

using namespace exittime;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s :: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(const std::string& text) {
  std::printf("       note: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> distinct_rates(std::mt19937_64& eng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 20.0);
  std::vector<double> r;
  while (r.size() < n) {
    const double x = u(eng);
    const bool close = std::any_of(r.begin(), r.end(),
                                   [&](double y) { return std::abs(x - y) < 0.05 * std::max(x, y); });
    if (!close) r.push_back(x);
  }
  return r;
}

void criterion_equivalence() {
  const auto m = fixtures::sir_model();
  const std::uint64_t n = 10000;
  const auto ssa = run_ensemble(m.system, m.initial, m.exit, Method::ssa(), n, 101);
  const auto et = run_ensemble(m.system, m.initial, m.exit, Method::exit_time(0.0), n, 102);
  if (ssa.n_exited() == 0 || et.n_exited() == 0) {
    report(1, "epsilon=0 equivalence (KS)", false, "an ensemble produced no exits");
    return;
  }
  const auto ks = ks_test(ssa.exit_times, et.exit_times, 0.01);
  report(1, "epsilon=0 equivalence (KS)", ks.equivalent,
         fmt("D=%.5f critical=%.5f exited ssa=%llu method=%llu of N=%llu", ks.statistic,
             ks.critical, static_cast<unsigned long long>(ssa.n_exited()),
             static_cast<unsigned long long>(et.n_exited()), static_cast<unsigned long long>(n)));
}

void criteria_convergence_and_rho() {
  const auto m = fixtures::sir_model();
  const std::vector<double> eps{0.5, 0.25, 0.125};
  const auto study = convergence_study(m.system, m.initial, m.exit, eps, 100000, 2024, 200);
  const auto& r = study.records;

  std::string l1s;
  for (const auto& rec : r) l1s += fmt(" l1(%.3g)=%.5f", rec.epsilon, rec.l1);
  const bool decreasing = r[0].l1 > r[1].l1 && r[1].l1 > r[2].l1;
  const double order = std::log2(r[0].l1 / r[1].l1);
  report(2, "convergence in epsilon", decreasing && order >= 1.0,
         fmt("%s strictly_decreasing=%s log2(e(0.5)/e(0.25))=%.4f", l1s.c_str(),
             decreasing ? "yes" : "no", order));
  note(fmt("reference exited %llu of %llu; method exited %llu of %llu",
           static_cast<unsigned long long>(study.reference.n_exited()),
           static_cast<unsigned long long>(study.reference.n_trajectories),
           static_cast<unsigned long long>(r[0].n_exited),
           static_cast<unsigned long long>(r[0].n)));

  bool in_range = true;
  std::string rhos;
  for (const auto& rec : r) {
    in_range = in_range && rec.rho >= 0.005 && rec.rho <= 0.05;
    rhos += fmt(" rho(%.3g)=%.6f", rec.epsilon, rec.rho);
  }
  const bool monotone = r[0].rho <= r[1].rho && r[1].rho <= r[2].rho;
  report(3, "rho range and monotonicity", in_range && monotone,
         fmt("%s in_[0.005,0.05]=%s nonincreasing_in_eps=%s", rhos.c_str(),
             in_range ? "yes" : "no", monotone ? "yes" : "no"));

  std::string per_exit;
  for (const auto& rec : r) {
    per_exit += fmt(" eps=%.3g gamma/exit=%.2f", rec.epsilon,
                    static_cast<double>(rec.gamma_draws) / static_cast<double>(rec.n_exited));
  }
  note("gamma draws per exited trajectory:" + per_exit);

  const double ratio = static_cast<double>(r[0].gamma_draws) / static_cast<double>(r[0].exp_draws);
  report(4, "variate reduction at epsilon=0.5", ratio < 0.05,
         fmt("gamma=%llu ssa_exponential=%llu ratio=%.6f",
             static_cast<unsigned long long>(r[0].gamma_draws),
             static_cast<unsigned long long>(r[0].exp_draws), ratio));
}

void criterion_oracles() {
  std::mt19937_64 eng(55);

  double worst_sum = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(eng() % 8);
    const HypoexpDistribution d(distinct_rates(eng, n));
    double s = 0.0;
    for (double l : d.coefficients()) s += l;
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  }
  const bool a = worst_sum <= 1e-9;

  double worst_conv = 0.0;
  for (const auto& rates : std::vector<std::vector<double>>{{1.0, 2.0}, {0.7, 1.9}, {1.0, 2.0, 3.5}}) {
    const HypoexpDistribution d(rates);
    const auto tab = pdf_by_numerical_convolution(rates, TimeGrid{12.0, 24001});
    for (std::size_t i = 0; i < tab.t.size(); i += 40) {
      worst_conv = std::max(worst_conv, std::abs(tab.density[i] - d.pdf(tab.t[i])));
    }
  }
  const bool b = worst_conv <= 1e-4;

  double worst_laplace = 0.0;
  std::uniform_real_distribution<double> us(0.05, 10.0);
  for (int k = 0; k < 10; ++k) {
    const double s = us(eng);
    const ErlangDistribution e(2.5, 1 + static_cast<std::uint64_t>(k % 6));
    const double q = laplace_of_pdf([&](double t) { return e.pdf(t); }, s);
    worst_laplace = std::max(worst_laplace, std::abs(q - std::pow(2.5 / (2.5 + s), e.shape())));
  }
  const bool c = worst_laplace <= 1e-5;

  double ratio_lo = 1e300;
  double ratio_hi = -1e300;
  for (double l : {2.0, 5.0}) {
    for (double s : {0.5, 1.0, 3.0}) {
      for (double e = 0.2; e > 0.01; e /= 2.0) {
        const double ratio = approximation_gap(l, e, s) / approximation_gap(l, e / 2.0, s);
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
      }
    }
  }
  const bool dd = ratio_lo >= 3.5 && ratio_hi <= 4.5;

  double worst_r = 0.0;
  for (int k = 0; k < 50; ++k) {
    const HypoexpDistribution d(distinct_rates(eng, 1 + static_cast<std::size_t>(eng() % 8)));
    for (double r = 0.01; r < 1.0; r += 0.01) {
      worst_r = std::max(worst_r, std::abs(d.cdf(d.inverse(r)) - r));
    }
  }
  double worst_t = 0.0;
  const HypoexpDistribution two({1.0, 2.0});
  for (double t = 0.05; t <= 5.0; t += 0.05) {
    worst_t = std::max(worst_t, std::abs(two.inverse(two.cdf(t)) - t));
  }
  const bool e = worst_r <= 1e-8 && worst_t <= 1e-8;

  report(5, "oracle suite", a && b && c && dd && e,
         fmt("(a) max|sum l-1|=%.2e (b) max|pdf-conv|=%.2e (c) max|laplace err|=%.2e "
             "(d) ratio in [%.4f, %.4f] (e) max|cdf(inv(r))-r|=%.2e max|inv(cdf(t))-t|=%.2e",
             worst_sum, worst_conv, worst_laplace, ratio_lo, ratio_hi, worst_r, worst_t));
}

void criterion_samplers() {
  const double lambda = 3.0;
  const std::size_t n = 10000;
  bool ok = true;
  std::string detail;
  for (std::uint64_t shape : {2u, 4u, 8u}) {
    RandomStream s(300 + shape, 0);
    std::vector<double> g(n);
    for (auto& x : g) x = s.gamma(1.0 / lambda, shape);
    const auto ref = oracle::sum_of_exponentials(std::vector<double>(shape, lambda), n, 900 + shape);
    const auto ks = ks_test(g, ref, 0.01);
    ok = ok && ks.equivalent;
    detail += fmt("KS(n=%llu)=%.4f/%.4f ", static_cast<unsigned long long>(shape), ks.statistic,
                  ks.critical);

    const double se = std::sqrt(static_cast<double>(shape)) / lambda / std::sqrt(double(n));
    const double mean_err = std::abs(oracle::mean(g) - static_cast<double>(shape) / lambda);
    ok = ok && mean_err <= 3.0 * se;
    detail += fmt("erlang mean err=%.2f se ", mean_err / se);
  }
  RandomStream s(299, 0);
  std::vector<double> x(n);
  for (auto& v : x) v = s.exponential(lambda);
  const double se = 1.0 / lambda / std::sqrt(double(n));
  const double mean_err = std::abs(oracle::mean(x) - 1.0 / lambda);
  ok = ok && mean_err <= 3.0 * se;
  detail += fmt("exponential mean err=%.2f se", mean_err / se);
  report(6, "sampler suite", ok, detail);
}

void criterion_trajectories() {
  const auto m = fixtures::sir_model();
  std::mt19937_64 eng(7);
  int mismatches = 0;
  std::uint64_t exited = 0;
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t seed = eng();
    std::vector<std::vector<Count>> a;
    std::vector<std::vector<Count>> b;
    RandomStream sa(seed, 0);
    RandomStream sb(seed, 0);
    const auto oa = run_ssa(m.system, m.initial, m.exit, sa,
                            [&](const SystemState& st) { a.push_back(st.counts); });
    const auto ob = run_timefree(m.system, m.initial, m.exit, sb,
                                 [&](const SystemState& st) { b.push_back(st.counts); });
    if (a != b || oa.status != ob.status) ++mismatches;
    if (oa.status == TrajectoryStatus::Exited) ++exited;
  }
  report(7, "trajectory exactness", mismatches == 0,
         fmt("mismatching seeds=%d of 100 (exited=%llu)", mismatches,
             static_cast<unsigned long long>(exited)));
}

}  // namespace

int main() {
  criterion_equivalence();
  criteria_convergence_and_rho();
  criterion_oracles();
  criterion_samplers();
  criterion_trajectories();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
