// Acceptance run: one PASS/FAIL line per criterion. `acceptance N` runs criterion N only.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fc/calculus.hpp"
#include "fc/catalogue.hpp"
#include "fc/cosine.hpp"
#include "fc/io.hpp"
#include "fc/measures.hpp"
#include "fc/sectorial.hpp"
#include "fc/symbol_norms.hpp"
#include "fc/transference.hpp"

namespace {

using fc::cplx;
using fc::CMatrix;
using fc::MatrixOperator;
using fc::Region;
using fc::Symbol;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok) { pass = pass && ok; }
};

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

MatrixOperator diag(const std::vector<cplx>& d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
  return MatrixOperator(m);
}

std::vector<fc::BVFunction> bv_profiles() {
  std::vector<fc::BVFunction> out;
  out.push_back(fc::BVFunction::constant(1.0));
  out.push_back(fc::BVFunction::even_steps({0.0, 0.5, 1.0}, {1.0, 0.0}));
  out.push_back(fc::BVFunction::even_steps({0.0, 0.5, 1.0}, {1.0, 0.25}));
  out.push_back(fc::BVFunction::even_steps({0.0, 0.2, 0.6, 1.0}, {cplx(1.0, 0.5), -0.5, 2.0}));
  out.push_back(fc::BVFunction::even_steps({0.0, 0.9, 1.0}, {0.3, cplx(0.0, 1.0)}));
  out.push_back(fc::BVFunction::from_function([](double t) { return cplx(1.0 - t * t, 0.0); }, 64));
  out.push_back(fc::BVFunction::from_function([](double t) { return cplx(std::cos(3.0 * t), 0.0); }, 64));
  out.push_back(fc::BVFunction::from_function([](double t) { return cplx(std::exp(-4.0 * t * t), 0.2 * t * t); }, 128));
  out.push_back(fc::BVFunction({{-1.0, 1.0}, {-0.25, 2.0}, {0.25, 1.0}}, {}));
  out.push_back(fc::BVFunction({{-1.0, 0.5}, {-0.75, 0.0}, {0.75, 0.5}},
                               [] {
                                 std::vector<cplx> ac;
                                 for (int k = 0; k <= 32; ++k) ac.emplace_back(std::abs(-1.0 + k / 16.0), 0.0);
                                 return ac;
                               }()));
  return out;
}

// 1. Oracle equivalence over a seeded corpus.
void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cat = fc::e_class_catalogue(1.5);
  std::vector<fc::ExpWeightedMeasure> measures;
  for (const auto& f : cat) measures.push_back(fc::inverse_fourier_symbol(f));
  const auto profiles = bv_profiles();
  double worst_c = 0.0, worst_p = 0.0, worst_v = 0.0, max_cond = 0.0;
  for (int i = 0; i < 50; ++i) {
    fc::CorpusOptions opt;
    opt.max_log10_cond = (i % 5) * 0.95;
    const MatrixOperator A = fc::random_diagonalizable(2 + i % 7, 1000 + static_cast<std::uint64_t>(i), opt);
    const fc::GroupModel g(A);
    const auto& sd = g.spectral();
    max_cond = std::max(max_cond, sd.condition_number);
    for (std::size_t k = 0; k < cat.size(); ++k) {
      const CMatrix ref = fc::spectral_fc(sd, cat[k]);
      const CMatrix c = fc::contour_fc_strip(A, cat[k], fc::default_omega_prime(A, cat[k])).value;
      worst_c = std::max(worst_c, rel(c, ref) / sd.condition_number);
      worst_p = std::max(worst_p, rel(fc::phillips_fc(g, measures[k]).value, ref) / sd.condition_number);
    }
    const auto& b = profiles[static_cast<std::size_t>(i) % profiles.size()];
    const CMatrix pv = fc::pv_fc(g, b).limit;
    worst_v = std::max(worst_v, rel(pv, fc::spectral_fc(sd, fc::pv_symbol(b, 1.0))) / sd.condition_number);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.need(max_cond <= 1e4);
  o.need(worst_c <= 1e-8);
  o.need(worst_p <= 1e-6);
  o.need(worst_v <= 1e-5);
  o.need(secs <= 60.0);
  o.detail << "50 matrices x " << cat.size() << " symbols, max cond " << max_cond << "; err/cond contour " << worst_c
           << ", phillips " << worst_p << ", pv " << worst_v << "; " << secs << " s";
}

// 2. cosh Fourier pair.
void criterion2(Outcome& o) {
  double worst = 0.0;
  for (double w : {0.5, 1.0, 2.0}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(w * 100));
    std::uniform_real_distribution<double> ux(-10.0, 10.0), uy(-0.9 * w, 0.9 * w);
    for (int k = 0; k < 64; ++k) {
      const cplx z(ux(rng), uy(rng));
      const cplx exact = (fc::kPi / w) / std::cosh(fc::kPi * z / (2.0 * w));
      worst = std::max(worst, std::abs(fc::sech_fourier_quadrature(w, z) - exact));
    }
  }
  o.need(worst <= 1e-8);
  o.detail << "max error " << worst << " over 3 x 64 points";
}

// 3. Deconvolution identity.
void criterion3(Outcome& o) {
  double worst = 0.0;
  for (double w : {0.5, 1.0, 2.0})
    for (int k = 0; k <= 400; ++k) {
      const double s = -10.0 / w + 20.0 / w * k / 400.0;
      worst = std::max(worst, std::abs(fc::phi_sech_convolution(w, 2.0 * w, s) - 1.0 / std::cosh(w * s)));
    }
  o.need(worst <= 1e-6);
  o.detail << "max residual " << worst;
}

// 4. Transference inequalities on the 12-case matrix.
void criterion4(Outcome& o) {
  double min_slack = INFINITY;
  int n = 0;
  for (const auto& c : fc::transference_core_cases(1)) {
    const auto r = fc::run_transference_case(c, 1);
    min_slack = std::min(min_slack, r.slack);
    o.need(r.passed());
    ++n;
  }
  o.need(n == 12);
  o.detail << n << " cases, min slack " << min_slack;
}

// 5. Weighted l1 exactness.
void criterion5(Outcome& o) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double w = 0.5 + 0.5 * (u(rng) + 1.0);
    const double c = u(rng), s = 0.3 + 0.2 * (u(rng) + 1.0);
    const cplx a(u(rng), u(rng));
    auto mu = fc::ExpWeightedMeasure::from_density([=](double t) { return a * std::exp(-(t - c) * (t - c) / (2 * s * s)); }, w);
    mu = mu + fc::ExpWeightedMeasure({{1.5 * u(rng), cplx(u(rng), u(rng))}, {1.5 * u(rng), cplx(u(rng), 0.0)}}, {}, w);
    worst = std::max(worst, fc::l1_weighted_shift_check(mu, w, 1.0 / 64, 40.0).rel_diff);
  }
  o.need(worst <= 1e-3);
  o.detail << "max relative difference " << worst << " over 10 measures";
}

// 6. PV lemma identities.
void criterion6(Outcome& o) {
  const auto profiles = bv_profiles();
  double h0 = 0.0, dres = 0.0, odd = 0.0;
  int dominated = 0;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(-0.9, 0.9);
  for (const auto& g : profiles) {
    const Symbol f = fc::pv_symbol(g, 1.0).without_derivative();
    h0 = std::max(h0, std::abs(f(0.0)));
    for (int k = 0; k < 16; ++k) {
      const cplx z(ux(rng), uy(rng));
      dres = std::max(dres, std::abs(f.cauchy_deriv(z) + cplx(0.0, 1.0) * fc::bv_cos_transform(g, z)));
      odd = std::max(odd, std::abs(f(-z) + f(z)));
    }
    dominated += fc::bv_hinf1_bound(g, 1.0).dominates;
  }
  o.need(h0 <= 1e-14 && dres <= 1e-7 && odd <= 1e-9 && dominated == static_cast<int>(profiles.size()));
  o.detail << "|h(0)| " << h0 << ", derivative residual " << dres << ", oddness " << odd << ", BV bound dominates "
           << dominated << "/" << profiles.size();
}

// 7. Convergence lemma runner.
void criterion7(Outcome& o) {
  const std::vector<MatrixOperator> ops{diag({cplx(0.0, 0.3), -0.1}), diag({0.5, cplx(-1.0, -0.2), cplx(2.0, 0.4)}),
                                        diag({cplx(0.0, 0.6), 0.0, 1.0}), diag({-2.0, 2.0}), diag({cplx(0.3, 0.5)})};
  const std::vector<Symbol> syms{
      fc::rational({cplx(0.0, 2.0)}, {1}, 1.0, Region::strip(1.0)),
      fc::product(fc::exp_line(1.0, 1.0), fc::tau_n(3.0, 1.0)),
      fc::Symbol(Region::strip(1.0), [](cplx z) { return std::tanh(z); }, std::nullopt, fc::DecayClass::None, "tanh"),
      fc::cosh_pair(1.5, 1.0),
      fc::pv_symbol(fc::BVFunction::even_steps({0.0, 0.5, 1.0}, {1.0, 0.25}), 1.0)};
  std::vector<int> ns;
  for (int k = 4; k <= 10; ++k) ns.push_back(1 << k);
  double worst = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const auto tr = fc::convergence_lemma_run(ops[i], syms[i], ns, 8, 7 + i);
    worst = std::max(worst, tr.final_error);
    sup = std::max(sup, tr.sup_norm);
    o.detail << syms[i].description() << ": err(2^10) " << tr.final_error << "; ";
  }
  o.need(std::isfinite(sup));
  o.need(worst <= 1e-6);
  o.detail << "sup_n ||f_n(A)|| " << sup << ", worst error " << worst;
}

// 8. Cosine suite.
void criterion8(Outcome& o) {
  double dal = 0.0, lap = 0.0, sq = 0.0, par = 0.0;
  int shifts = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const fc::CosineModel c(fc::random_cosine_generator(4, seed));
    dal = std::max(dal, fc::dalembert_check(c, 20, 3.0).max_scaled_residual);
    lap = std::max(lap, fc::laplace_generator_check(c, {2.0, 3.0, 5.0}).max_residual);
    sq = std::max(sq, fc::phase_space_check(c, {0.5, 1.0}).square_residual);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto r = fc::parabola_fc(c.B(), fc::cos_sqrt_symbol(t, c.parabola_omega()));
      par = std::max(par, rel(r.value, fc::spectral_fc(c.spectral_B(), fc::cos_sqrt_symbol(t, c.parabola_omega()))) /
                              c.spectral_B().condition_number);
    }
    for (double th : {fc::kPi / 6, fc::kPi / 4, fc::kPi / 2}) {
      shifts += fc::sector_shift_check(c, th, std::min(th + 0.3, 3.0)).passed;
      ++total;
    }
  }
  o.need(dal <= 1e-9 && lap <= 1e-6 && sq == 0.0 && par <= 1e-7 && shifts == total);
  o.detail << "d'Alembert " << dal << ", Laplace " << lap << ", phase square " << sq << ", parabola err/cond " << par
           << ", sector shift " << shifts << "/" << total;
}

// 9. Composition rules.
void criterion9(Outcome& o) {
  double logc = 0.0, f2 = 0.0;
  int bip_ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const fc::SectorialData A(fc::random_sectorial(3 + static_cast<int>(seed % 3), seed, 0.4 + 0.1 * static_cast<double>(seed)));
    const Symbol f = seed % 2 ? fc::rational({cplx(0.0, 3.0 + 0.1 * static_cast<double>(seed))}, {1}, 1.0, Region::strip(2.7))
                              : fc::e_class_catalogue(2.0)[seed % 5];
    const auto lc = fc::log_composition_check(A, f);
    logc = std::max(logc, lc.residual);
    const Symbol p = fc::cos_sqrt_symbol(0.5 + 0.2 * static_cast<double>(seed), 0.4 + 0.05 * static_cast<double>(seed));
    const double d = fc::hinf1_norm(p).value, s = fc::parabola_hinf1_via_strip(p).value;
    f2 = std::max(f2, std::abs(d - s) / std::max(1.0, d));
    std::vector<double> grid;
    for (int k = -20; k <= 20; ++k) grid.push_back(0.5 * k);
    bip_ok += fc::bip_group(A, grid).pruss_sohr;
  }
  o.need(logc <= 1e-6 && f2 <= 1e-6 && bip_ok == 10);
  o.detail << "log composition " << logc << ", factor-2 law " << f2 << ", omega_sect <= theta_A on " << bip_ok << "/10";
}

int run_fc(const std::string& args) {
  const int st = std::system((std::string(FC_EXE) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

// 10. Determinism of `fc run`.
void criterion10(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("fc_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "suite.json";
  fc::write_file(cfg.string(), R"({"seed": 17, "suites": ["transference-core", "identities"],
    "checks": [{"id": "pv", "op": "pv_fc", "params": {"op": {"generator": {"kind": "diagonalizable", "n": 3}},
      "bv": {"even_steps": {"edges": [0, 0.5, 1], "levels": [1, 0.25]}}}}]})");
  const int a = run_fc("run --config " + cfg.string() + " --out " + (dir / "a").string());
  const int b = run_fc("run --config " + cfg.string() + " --out " + (dir / "b").string() + " --format json");
  const std::string ja = fc::read_file((dir / "a" / "report.json").string());
  const std::string jb = fc::read_file((dir / "b" / "report.json").string());
  o.need(a == 0 && b == 0 && ja == jb && !ja.empty());
  o.detail << "exit codes " << a << "/" << b << ", report.json " << ja.size() << " bytes, "
           << (ja == jb ? "byte-identical" : "DIFFERENT");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9, criterion10};
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
