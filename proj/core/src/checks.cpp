#include "fc/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "fc/calculus.hpp"
#include "fc/catalogue.hpp"
#include "fc/cosine.hpp"
#include "fc/measures.hpp"
#include "fc/sectorial.hpp"
#include "fc/symbol_norms.hpp"
#include "fc/transference.hpp"
#include "json_io.hpp"

namespace fc {

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "unknown";
}

namespace {

using detail::json;
using detail::Node;

struct Ctx {
  const Node& p;
  std::uint64_t seed;
  CheckResult& r;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    r.status = CheckStatus::Fail;
    r.message += (r.message.empty() ? "" : "; ") + what;
  }
  void metric(const std::string& k, double v) { r.metrics[k] = v; }
  void metric(const std::string& k, cplx v) {
    r.metrics[k + ".re"] = v.real();
    r.metrics[k + ".im"] = v.imag();
  }
  MatrixOperator op(const std::string& key = "op") const { return detail::build_operator(p.at(key)); }
  Symbol symbol(const std::string& key = "symbol") const { return detail::build_symbol(p.at(key)); }
  ExpWeightedMeasure measure(const std::string& key = "measure") const { return detail::build_measure(p.at(key)); }
  BVFunction bv(const std::string& key = "bv") const { return detail::build_bv(p.at(key)); }
  double num(const std::string& k, double d) const { return p.num(k, d); }
  std::vector<double> nums(const std::string& k, std::vector<double> d) const { return p.has(k) ? p.at(k).nums() : d; }
};

using OpFn = std::function<void(Ctx&)>;

// Compact decimal for metric keys: 0.5, 1, 0.523599.
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel(const CMatrix& a, const CMatrix& ref) { return (a - ref).norm() / std::max(1.0, ref.norm()); }

std::vector<cplx> strip_points(double theta, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(-0.9 * theta, 0.9 * theta);
  std::vector<cplx> z;
  for (int i = 0; i < n; ++i) z.emplace_back(ux(rng), uy(rng));
  return z;
}

SampleGrid grid_of(const Ctx& c) { return SampleGrid{static_cast<int>(c.p.integer("grid_n", 4096)), true}; }

void report_norm(Ctx& c, const NormReport& n) {
  c.metric("value", n.value);
  c.metric("attained_at", n.attained_at);
  c.metric("divergent", n.divergent ? 1.0 : 0.0);
  c.r.info["grid"] = n.grid_spec;
  c.require(std::isfinite(n.value), "norm is not finite");
}

void report_transference(Ctx& c, const TransferenceReport& t) {
  c.metric("lhs", t.lhs);
  c.metric("rhs", t.rhs);
  c.metric("constant", t.constant);
  c.metric("slack", t.slack);
  c.metric("M", t.M);
  c.metric("omega0", t.omega0);
  c.metric("omega", t.omega);
  c.metric("p", t.p);
  c.metric("conv_lower", t.conv_lower);
  c.metric("conv_upper", t.conv_upper);
  c.r.info["form"] = t.form;
  c.r.info["grids"] = t.grids;
  c.require(t.passed(), "slack below 1 - 1e-3");
}

// Strip symbol applied through the contour, using the (lambda - z)^{-2} regulariser
// when f is not in E.
CMatrix strip_contour(const MatrixOperator& A, const Symbol& f, ContourResult* info = nullptr) {
  if (f.in_E()) {
    auto res = contour_fc_strip(A, f, default_omega_prime(A, f));
    if (info) *info = res;
    return res.value;
  }
  const double th = f.region().theta();
  return regularized_fc(A, f, resolvent_square_regulariser(cplx(0.0, th + 1.0), th));
}

std::map<std::string, OpFn> make_registry();

const std::map<std::string, OpFn>& registry() {
  static const std::map<std::string, OpFn> r = make_registry();
  return r;
}

std::map<std::string, OpFn> make_registry() {
  std::map<std::string, OpFn> R;

  // operator-core

  R["resolvent"] = [](Ctx& c) {
    const auto A = c.op();
    const cplx l = c.p.at("lambda").complex();
    const CMatrix X = resolvent(A, l);
    const Eigen::Index n = A.dim();
    const CMatrix res = (l * CMatrix::Identity(n, n) - A.entries()) * X - CMatrix::Identity(n, n);
    const double cond = X.norm() * (l * CMatrix::Identity(n, n) - A.entries()).norm();
    c.metric("residual", res.norm());
    c.metric("cond", cond);
    c.r.matrices["value"] = X;
    c.require(res.norm() <= 1e-10 * std::max(1.0, cond), "resolvent residual above 1e-10 cond");
  };

  R["group_at"] = [](Ctx& c) {
    const GroupModel g(c.op());
    const double s = c.num("s", 1.0);
    c.r.matrices["value"] = group_at(g, s);
    const auto& b = g.bounds();
    const double smax = c.num("s_max", 2.0);
    double law = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double a = -smax + 2.0 * smax * i / 19.0, t = -smax + 2.0 * smax * j / 19.0;
        const double r = (group_at(g, a) * group_at(g, t) - group_at(g, a + t)).norm();
        law = std::max(law, r / (b.M * b.M * std::cosh(b.omega0 * a) * std::cosh(b.omega0 * t)));
      }
    const Eigen::Index n = g.generator().dim();
    c.metric("identity_residual", (group_at(g, 0.0) - CMatrix::Identity(n, n)).norm());
    c.metric("group_law", law);
    c.metric("pade_vs_spectral", g.diagonalizable() ? rel(group_at(g, s, ExpRoute::Pade), group_at(g, s, ExpRoute::Spectral)) : 0.0);
    c.require(law <= 1e-9, "group law residual above 1e-9");
  };

  R["estimate_group_bounds"] = [](Ctx& c) {
    const GroupModel g(c.op());
    GroupBoundOptions o;
    o.margin = c.num("margin", o.margin);
    const double smax = c.num("s_max", 10.0);
    const int n = static_cast<int>(c.p.integer("grid_n", 512));
    const GroupBounds b = estimate_group_bounds(g, smax, n, o);
    c.metric("M", b.M);
    c.metric("omega0", b.omega0);
    c.metric("theta_U", b.theta_U);
    c.metric("theta_fit", b.theta_fit);
    c.metric("s_max", b.s_max);
    c.metric("grid_only", b.grid_only ? 1.0 : 0.0);
    int bad = 0;
    for (int j = -n; j <= n; ++j) {
      const double s = smax * j / n;
      if (op_norm(group_at(g, s)) > b.M * std::cosh(b.omega0 * s) * (1.0 + 1e-9)) ++bad;
    }
    c.metric("violations", bad);
    c.require(bad == 0, "cosh bound violated on the grid");
    c.require(b.omega0 >= b.theta_U, "omega0 below theta_U");
  };

  R["spectral_fc"] = [](Ctx& c) {
    const auto A = c.op();
    const SpectralData sd = spectral_data(A);
    const Symbol f = c.symbol();
    const CMatrix F = spectral_fc(sd, f);
    c.r.matrices["value"] = F;
    c.metric("cond", sd.condition_number);
    if (c.p.has("symbol2")) {
      const Symbol g = c.symbol("symbol2");
      const CMatrix FG = spectral_fc(sd, product(f, g));
      const double r = rel(FG, F * spectral_fc(sd, g));
      c.metric("homomorphism", r);
      c.require(r <= 1e-10 * sd.condition_number, "homomorphism residual above 1e-10 cond");
    }
  };

  // regions-symbols

  R["hinf_norm"] = [](Ctx& c) { report_norm(c, hinf_norm(c.symbol(), grid_of(c))); };
  R["hinf1_norm"] = [](Ctx& c) { report_norm(c, hinf1_norm(c.symbol(), grid_of(c))); };
  R["hinflog_norm"] = [](Ctx& c) { report_norm(c, hinflog_norm(c.symbol(), grid_of(c))); };

  R["parabola_factor2"] = [](Ctx& c) {
    const Symbol f = c.symbol();
    const NormReport direct = hinf1_norm(f, grid_of(c));
    const NormReport pulled = parabola_hinf1_via_strip(f, grid_of(c));
    const double r = std::abs(direct.value - pulled.value) / std::max(1.0, direct.value);
    c.metric("direct", direct.value);
    c.metric("via_strip", pulled.value);
    c.metric("residual", r);
    c.require(r <= 1e-6, "factor-2 law residual above 1e-6");
  };

  R["mikhlin_constant"] = [](Ctx& c) {
    const NormReport n = mikhlin_constant(c.symbol());
    report_norm(c, n);
    c.require(!n.divergent, "Mikhlin sup still growing at the grid edge");
  };

  R["venturi_embedding_check"] = [](Ctx& c) {
    const EmbeddingReport e = venturi_embedding_check(c.symbol(), detail::build_region(c.p.at("inner")), grid_of(c));
    c.metric("ratio", e.ratio);
    c.metric("inner_zf", e.inner_zf.value);
    c.metric("outer_f", e.outer_f.value);
    c.require(std::isfinite(e.ratio), "embedding ratio not finite");
  };

  R["tail_class_check"] = [](Ctx& c) {
    const cplx a = c.p.has("a") ? c.p.at("a").complex() : cplx(0.0);
    const cplx b = c.p.has("b") ? c.p.at("b").complex() : cplx(0.0);
    const TailReport t = tail_class_check(c.symbol(), a, b, c.p.at("theta").num(), grid_of(c));
    c.metric("bounded", t.bounded ? 1.0 : 0.0);
    c.metric("tail_plus", t.tail_plus);
    c.metric("tail_minus", t.tail_minus);
    if (t.bounded) c.metric("hinf1", t.hinf1.value);
    c.require(t.bounded == c.p.boolean("expect_bounded", true), "tail class differs from expectation");
  };

  R["tau_n_norms"] = [](Ctx& c) {
    const double theta = c.num("theta", 1.0);
    const auto ns = c.nums("n_list", {4, 8, 16, 32, 64});
    Series s{"hinf1(tau_n)", {}, {}};
    double sup = 0.0, unif = 0.0;
    for (double n : ns) {
      const Symbol t = tau_n(n * theta, theta);
      const double v = hinf1_norm(t, SampleGrid{1024, true}).value;
      s.x.push_back(n * theta);
      s.y.push_back(v);
      sup = std::max(sup, v);
      for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double y : {-0.5, 0.0, 0.5}) unif = std::max(unif, std::abs(t(cplx(x, y * theta)) - 1.0));
    }
    c.metric("sup_hinf1", sup);
    c.metric("compact_deviation_last", unif);
    c.r.plots.push_back(Plot{"tau_n", "H-infinity-1 norm of tau_n", "n", "norm", true, false, {s}});
    c.require(std::isfinite(sup), "tau_n norms not bounded");
  };

  // measures-fourier

  R["mw_norm"] = [](Ctx& c) {
    const auto mu = c.measure();
    c.metric("value", mw_norm(mu, c.num("omega", mu.omega())));
    c.metric("tail_flag", mu.tail_flag() ? 1.0 : 0.0);
  };

  R["fourier_stieltjes"] = [](Ctx& c) {
    const auto mu = c.measure();
    const auto pts = c.p.has("points") ? c.p.at("points").complexes() : std::vector<cplx>{0.0, 1.0, cplx(0.0, 0.5 * mu.omega())};
    for (std::size_t i = 0; i < pts.size(); ++i) c.metric("value[" + std::to_string(i) + "]", fourier_stieltjes(mu, pts[i]));
    if (c.p.has("measure2")) {
      const auto nu = c.measure("measure2");
      const auto conv = convolve(mu, nu);
      double err = 0.0;
      for (double t : {-3.0, -1.0, 0.0, 0.5, 2.0, 4.0})
        err = std::max(err, std::abs(fourier_stieltjes(conv, t) - fourier_stieltjes(mu, t) * fourier_stieltjes(nu, t)));
      c.metric("exchange_residual", err);
      c.require(err <= 1e-8, "convolution/transform exchange above 1e-8");
    }
  };

  R["cosh_pair"] = [](Ctx& c) {
    double worst = 0.0;
    for (double w : c.nums("omegas", {0.5, 1.0, 2.0})) {
      double err = 0.0;
      for (const cplx z : strip_points(w, 64, c.seed)) {
        const cplx exact = (kPi / w) / std::cosh(kPi * z / (2.0 * w));
        err = std::max(err, std::abs(sech_fourier_quadrature(w, z) - exact));
      }
      c.metric("max_error[w=" + label(w) + "]", err);
      worst = std::max(worst, err);
    }
    c.metric("max_error", worst);
    c.require(worst <= 1e-8, "cosh pair error above 1e-8");
  };

  R["inverse_fourier_symbol"] = [](Ctx& c) {
    const Symbol f = c.symbol();
    const ExpWeightedMeasure mu = inverse_fourier_symbol(f);
    double err = 0.0;
    for (int k = 0; k <= 32; ++k) {
      const double t = -10.0 + 20.0 * k / 32.0;
      err = std::max(err, std::abs(fourier_stieltjes(mu, t) - f(cplx(t, 0.0))));
    }
    c.metric("roundtrip_error", err);
    c.metric("omega", mu.omega());
    c.metric("mw_norm", mw_norm(mu, mu.omega()));
    c.require(err <= c.num("tol", 1e-6), "inverse transform round trip above tolerance");
  };

  R["cosh_weight"] = [](Ctx& c) {
    const auto mu = c.measure();
    const double w = c.num("omega", mu.omega());
    const auto mw = cosh_weight(mu, w);
    c.metric("mw_norm_weighted", mw_norm(mw, 0.0));
    c.metric("mw_norm", mw_norm(mu, w));
    // F(e^{+-w s} mu)(t) = mu^(t -+ (-i w)) with mu^(z) = int e^{-isz} mu(ds).
    double tilt_err = 0.0;
    for (double t : {-2.0, 0.0, 1.5})
      for (double sg : {1.0, -1.0})
        tilt_err = std::max(tilt_err, std::abs(fourier_stieltjes(tilt(mu, sg * w), t) - fourier_stieltjes(mu, cplx(t, sg * w))));
    c.metric("tilt_residual", tilt_err);
    c.require(mw_norm(mw, 0.0) <= mw_norm(mu, w) * (1.0 + 1e-12), "cosh weight exceeds the exponential weight");
    c.require(tilt_err <= 1e-8, "tilt identity residual above 1e-8");
  };

  R["pv_symbol"] = [](Ctx& c) {
    const BVFunction g = c.bv();
    const double theta = c.num("theta", 1.0);
    const Symbol f = pv_symbol(g, theta).without_derivative();
    double dres = 0.0, odd = 0.0;
    for (const cplx z : strip_points(theta, 16, c.seed)) {
      dres = std::max(dres, std::abs(f.cauchy_deriv(z) + cplx(0.0, 1.0) * bv_cos_transform(g, z)));
      odd = std::max(odd, std::abs(f(-z) + f(z)));
    }
    c.metric("h0", std::abs(f(0.0)));
    c.metric("derivative_residual", dres);
    c.metric("odd_residual", odd);
    c.require(std::abs(f(0.0)) <= 1e-14, "h(0) is not zero");
    c.require(dres <= 1e-7, "f' = -i g^ residual above 1e-7");
    c.require(odd <= 1e-9, "oddness residual above 1e-9");
  };

  R["bv_hinf1_bound"] = [](Ctx& c) {
    const BVBound b = bv_hinf1_bound(c.bv(), c.num("theta", 1.0), static_cast<int>(c.p.integer("grid_n", 1024)));
    c.metric("bound", b.bound);
    c.metric("sampled_norm", b.sampled_norm);
    c.metric("c_prime", b.c_prime);
    c.metric("variation", b.variation);
    c.metric("end_value", b.end_value);
    c.require(b.dominates, "BV bound does not dominate the sampled norm");
  };

  R["deconvolution"] = [](Ctx& c) {
    double worst = 0.0;
    for (double w : c.nums("omegas", {0.5, 1.0, 2.0})) {
      const double a = c.num("alpha_factor", 2.0) * w;
      double err = 0.0;
      for (int k = 0; k <= 200; ++k) {
        const double s = -10.0 / w + 20.0 / w * k / 200.0;
        err = std::max(err, std::abs(phi_sech_convolution(w, a, s) - 1.0 / std::cosh(w * s)));
      }
      c.metric("max_residual[w=" + label(w) + "]", err);
      worst = std::max(worst, err);
    }
    c.metric("max_residual", worst);
    c.require(worst <= 1e-6, "deconvolution residual above 1e-6");
  };

  // calculus-engines

  R["contour_fc_strip"] = [](Ctx& c) {
    const auto A = c.op();
    const Symbol f = c.symbol();
    ContourOptions o;
    if (c.p.str("mode", "closed") == "tail_bound") o.mode = ContourOptions::Mode::TailBound;
    const auto res = contour_fc_strip(A, f, c.num("omega_prime", default_omega_prime(A, f)), o);
    c.r.matrices["value"] = res.value;
    c.metric("panels", res.panels);
    c.metric("change", res.change);
    c.metric("R", res.R);
    const SpectralData sd = spectral_data(A);
    if (sd.diagonalizable()) {
      const double e = rel(res.value, spectral_fc(sd, f));
      c.metric("oracle_error", e);
      c.metric("cond", sd.condition_number);
      c.require(e <= 1e-8 * sd.condition_number, "contour vs spectral above 1e-8 cond");
    }
    c.require(res.converged, "panel doubling did not converge");
  };

  R["regularized_fc"] = [](Ctx& c) {
    const auto A = c.op();
    const Symbol f = c.symbol();
    const double th = f.region().theta();
    const cplx l = c.p.has("lambda") ? c.p.at("lambda").complex() : cplx(0.0, th + 1.0);
    const CMatrix F = regularized_fc(A, f, resolvent_square_regulariser(l, th));
    c.r.matrices["value"] = F;
    const SpectralData sd = spectral_data(A);
    if (sd.diagonalizable()) {
      const double e = rel(F, spectral_fc(sd, f));
      c.metric("oracle_error", e);
      c.metric("cond", sd.condition_number);
      c.require(e <= 1e-8 * sd.condition_number, "regularised vs spectral above 1e-8 cond");
    }
  };

  R["phillips_fc"] = [](Ctx& c) {
    const GroupModel g(c.op());
    std::optional<Symbol> f;
    ExpWeightedMeasure mu;
    if (c.p.has("measure")) {
      mu = c.measure();
    } else {
      f = c.symbol();
      mu = inverse_fourier_symbol(*f);
    }
    const PhillipsResult ph = phillips_fc(g, mu);
    c.r.matrices["value"] = ph.value;
    c.metric("norm", ph.norm);
    c.metric("norm_bound", ph.norm_bound);
    c.require(ph.norm <= ph.norm_bound * (1.0 + 1e-9), "||T_mu|| exceeds M ||mu||");
    if (f && g.diagonalizable()) {
      const double e = rel(ph.value, spectral_fc(g.spectral(), *f));
      c.metric("oracle_error", e);
      c.metric("cond", g.spectral().condition_number);
      c.require(e <= 1e-6 * g.spectral().condition_number, "Phillips vs spectral above 1e-6 cond");
    }
  };

  R["pv_fc"] = [](Ctx& c) {
    const GroupModel g(c.op());
    const BVFunction b = c.bv();
    const PvTrace tr = pv_fc(g, b);
    c.r.matrices["value"] = tr.limit;
    c.metric("last_increment", tr.increments.back());
    Series s{"increment", {}, {}};
    for (std::size_t k = 0; k < tr.increments.size(); ++k) {
      s.x.push_back(tr.eps[k + 1]);
      s.y.push_back(tr.increments[k]);
    }
    c.r.plots.push_back(Plot{"pv_trace", "PV increments ||I(eps_k+1) - I(eps_k)||", "eps", "increment", true, true, {s}});
    if (g.diagonalizable()) {
      const double e = rel(tr.limit, spectral_fc(g.spectral(), pv_symbol(b, std::max(1.0, 2.0 * g.generator().max_abs_imag() + 1.0))));
      c.metric("oracle_error", e);
      c.metric("cond", g.spectral().condition_number);
      c.require(e <= 1e-5 * g.spectral().condition_number, "PV vs spectral above 1e-5 cond");
    }
  };

  R["convergence_lemma_run"] = [](Ctx& c) {
    const auto A = c.op();
    const Symbol f = c.symbol();
    std::vector<int> ns;
    for (double n : c.nums("n_list", {16, 64, 256, 1024})) ns.push_back(static_cast<int>(n));
    const auto tr = convergence_lemma_run(A, f, ns, static_cast<int>(c.p.integer("probes", 8)), c.seed,
                                          c.p.boolean("with_hinf1", false));
    Series sn{"||f_n(A)||", {}, {}}, se{"probe error", {}, {}};
    for (std::size_t i = 0; i < tr.n.size(); ++i) {
      sn.x.push_back(tr.n[i]);
      sn.y.push_back(tr.norm_fn[i]);
      se.x.push_back(tr.n[i]);
      se.y.push_back(tr.probe_error[i]);
    }
    c.r.plots.push_back(Plot{"tau_n_norms", "Convergence lemma: norms and errors vs n", "n", "value", true, true, {sn, se}});
    c.metric("sup_norm", tr.sup_norm);
    c.metric("final_error", tr.final_error);
    c.require(std::isfinite(tr.sup_norm), "sup_n ||f_n(A)|| not finite");
    c.require(tr.final_error <= c.num("tol", 1e-6), "probe error above tolerance at the last n");
  };

  R["contour_fc_sector"] = [](Ctx& c) {
    const auto B = c.op();
    const Symbol f = c.symbol();
    const SectorialData sd(B);
    const double wp = c.num("omega_prime", 0.5 * (sd.angle() + f.region().theta()));
    const auto res = contour_fc_sector(B, f, wp, c.p.boolean("regularise", false));
    c.r.matrices["value"] = res.value;
    c.metric("panels", res.panels);
    if (sd.spectral().diagonalizable()) {
      const double e = rel(res.value, spectral_fc(sd.spectral(), f));
      c.metric("oracle_error", e);
      c.metric("cond", sd.spectral().condition_number);
      c.require(e <= 1e-8 * sd.spectral().condition_number, "sector contour vs spectral above 1e-8 cond");
    }
  };

  R["l1_weighted_shift_check"] = [](Ctx& c) {
    const auto mu = c.measure();
    const double w = c.num("omega", mu.omega());
    const auto rep = l1_weighted_shift_check(mu, w, c.num("h", 1.0 / 64), c.num("T", 40.0));
    c.metric("conv_norm", rep.conv_norm);
    c.metric("mw_norm", rep.mw);
    c.metric("rel_diff", rep.rel_diff);
    c.require(rep.rel_diff <= 1e-3, "weighted l1 norm differs from mw_norm by more than 1e-3");
  };

  // transference-lab

  R["conv_norm"] = [](Ctx& c) {
    const auto mu = c.measure();
    auto space = DiscretizedLpSpace::standard(c.num("omega", 1.0), c.num("p", 2.0), 1);
    const ConvNorm n = conv_norm(mu, space, c.seed);
    c.metric("value", n.value);
    c.metric("lower", n.lower);
    c.metric("upper", n.upper);
    c.metric("exact", n.exact ? 1.0 : 0.0);
    c.r.info["method"] = n.method;
  };

  R["transference_constant"] = [](Ctx& c) {
    const double p = c.num("p", 2.0), w0 = c.num("omega0", 0.0);
    if (c.p.has("omegas")) {
      Series s{"C(p=" + label(p) + ", w0=" + label(w0) + ")", {}, {}};
      for (double w : c.p.at("omegas").nums()) {
        s.x.push_back(w);
        s.y.push_back(transference_constant(p, w0, w));
        c.metric("C[w=" + label(w) + "]", s.y.back());
      }
      c.r.plots.push_back(Plot{"constant_sweep", "Transference constant C(p, w0, w)", "w", "C", false, true, {s}});
    } else {
      c.metric("value", transference_constant(p, w0, c.p.at("omega").num()));
    }
  };

  R["verify_transference"] = [](Ctx& c) {
    report_transference(c, verify_transference(GroupModel(c.op()), c.measure(), c.num("p", 2.0), c.p.at("omega").num(), c.seed));
  };
  R["verify_compact_transference"] = [](Ctx& c) {
    report_transference(c, verify_compact_transference(GroupModel(c.op()), c.measure(), c.num("p", 2.0), c.seed));
  };
  R["verify_multiplier_form"] = [](Ctx& c) {
    report_transference(c, verify_multiplier_form(GroupModel(c.op()), c.measure(), c.num("p", 2.0), c.p.at("omega").num(), c.seed));
  };
  R["verify_bounded_transference"] = [](Ctx& c) {
    report_transference(c, verify_bounded_transference(GroupModel(c.op()), c.measure(), c.num("p", 2.0), c.seed));
  };
  R["transference_case"] = [](Ctx& c) {
    const auto cases = transference_core_cases(c.seed);
    const long long i = c.p.at("index").integer();
    if (i < 0 || i >= static_cast<long long>(cases.size())) c.p.at("index").invalid("case index out of range");
    const auto& tc = cases[static_cast<std::size_t>(i)];
    c.r.info["case"] = tc.name;
    report_transference(c, run_transference_case(tc, c.seed));
  };

  R["truncated_hilbert"] = [](Ctx& c) {
    DiscretizedLpSpace space;
    space.h = c.num("h", 1.0 / 64);
    space.half = static_cast<int>(c.p.integer("half", 2048));
    Series s{"||H_eps||_2", {}, {}};
    double odd = 0.0;
    CMatrix f(space.size(), 1);
    for (int j = 0; j < space.size(); ++j) f(j, 0) = std::exp(-space.t(j) * space.t(j));
    for (double eps : c.nums("eps", {space.h, 2 * space.h, 8 * space.h, 32 * space.h})) {
      s.x.push_back(eps);
      s.y.push_back(truncated_hilbert_l2_norm(space, eps));
      odd = std::max(odd, std::abs(truncated_hilbert(space, eps, f)(space.half, 0)));
    }
    c.r.plots.push_back(Plot{"hilbert_norms", "Truncated Hilbert transform l2 norms", "eps", "norm", true, false, {s}});
    c.metric("max_norm", *std::max_element(s.y.begin(), s.y.end()));
    c.metric("odd_residual", odd);
    c.require(odd <= 1e-12, "(H_eps f)(0) is not zero for even f");
  };

  // cosine-parabola

  R["cosine_at"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const double t = c.num("t", 1.0);
    const CMatrix C = cosine_at(cm, t);
    c.r.matrices["value"] = C;
    c.metric("cos_type", cm.cos_type());
    const double d = rel(cosine_at(cm, t, CosineRoute::Series), C);
    c.metric("series_vs_auto", d);
    c.require(d <= 1e-8 * std::max(1.0, cm.spectral_B().condition_number), "series and spectral routes disagree");
  };

  R["laplace_generator_check"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const auto rep = laplace_generator_check(cm, c.nums("lambdas", {2.0, 3.0, 5.0}));
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
      c.metric("residual[l=" + label(rep.lambdas[i]) + "]", rep.residuals[i]);
    c.metric("max_residual", rep.max_residual);
    c.require(rep.max_residual <= 1e-6, "Laplace residual above 1e-6");
  };

  R["phase_space_check"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const auto rep = phase_space_check(cm, c.nums("s", {0.25, 0.5, 1.0, 2.0}));
    c.metric("square_residual", rep.square_residual);
    c.metric("block_residual", rep.block_residual);
    c.metric("ode_residual", rep.ode_residual);
    c.metric("group_law", rep.group_law);
    c.require(rep.square_residual == 0.0, "calA^2 differs from diag(A, A)");
    c.require(rep.block_residual <= 1e-9, "exp(s calA) block differs from Cos(s)");
    c.require(rep.ode_residual <= 1e-6, "u'' = A u residual above 1e-6");
  };

  R["dalembert_check"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const auto rep = dalembert_check(cm, static_cast<int>(c.p.integer("n", 20)), c.num("t_max", 3.0));
    c.metric("max_scaled_residual", rep.max_scaled_residual);
    c.metric("even_residual", rep.even_residual);
    c.metric("cos0_residual", rep.cos0_residual);
    c.require(rep.max_scaled_residual <= 1e-9, "d'Alembert residual above 1e-9");
    c.require(rep.even_residual <= 1e-12 && rep.cos0_residual <= 1e-12, "Cos not even or Cos(0) != I");
  };

  R["parabola_type_check"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const auto rep = parabola_type_check(cm.B(), c.num("omega", cm.parabola_omega()), static_cast<int>(c.p.integer("samples", 512)));
    c.metric("M_fit", rep.M_fit);
    c.metric("samples", rep.samples);
    c.require(rep.certified, "parabola resolvent bound not certified");
  };

  R["parabola_fc"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    const Symbol f = c.p.has("symbol") ? c.symbol() : cos_sqrt_symbol(c.num("t", 1.0), cm.parabola_omega());
    const auto res = parabola_fc(cm.B(), f);
    c.r.matrices["value"] = res.value;
    c.metric("block_agreement", res.block_agreement);
    c.metric("off_block", res.off_block);
    c.require(res.block_agreement <= 1e-9 * std::max(1.0, res.value.norm()), "diagonal blocks disagree");
    if (cm.spectral_B().diagonalizable()) {
      const double e = rel(res.value, spectral_fc(cm.spectral_B(), f));
      c.metric("oracle_error", e);
      c.metric("cond", cm.spectral_B().condition_number);
      c.require(e <= 1e-7 * cm.spectral_B().condition_number, "parabola calculus vs spectral above 1e-7 cond");
    }
  };

  R["sector_shift_check"] = [](Ctx& c) {
    const CosineModel cm(c.op());
    bool all = true;
    for (double th : c.nums("thetas", {kPi / 6, kPi / 4, kPi / 2})) {
      const auto rep = sector_shift_check(cm, th, c.num("phi", std::min(th + 0.3, 3.0)));
      const std::string k = "[theta=" + label(th) + "]";
      c.metric("geometry_max_arg" + k, rep.geometry_max_arg);
      c.metric("spectral_angle" + k, rep.spectral_angle);
      c.metric("sector_M" + k, rep.sector_M);
      c.metric("route_residual" + k, rep.route_residual);
      all = all && rep.passed;
    }
    c.require(all, "sector shift check failed");
  };

  R["log_composition_check"] = [](Ctx& c) {
    const SectorialData A(c.op());
    const Symbol f = c.p.has("symbol") ? c.symbol() : rational({cplx(0.0, 3.0)}, {1}, 1.0, Region::strip(2.7));
    const auto rep = log_composition_check(A, f);
    c.r.matrices["value"] = rep.lhs;
    c.metric("residual", rep.residual);
    c.metric("cond", rep.cond);
    c.require(rep.residual <= 1e-7 * rep.cond, "log composition residual above 1e-7 cond");
  };

  R["bip_group"] = [](Ctx& c) {
    const SectorialData A(c.op());
    std::vector<double> s;
    for (int k = -20; k <= 20; ++k) s.push_back(k * 0.5);
    const auto rep = bip_group(A, c.nums("s", s));
    c.metric("theta_A", rep.theta_A);
    c.metric("theta_fit", rep.theta_fit);
    c.metric("omega_sect", rep.omega_sect);
    c.require(rep.pruss_sohr, "omega_sect exceeds theta_A");
  };

  R["hinflog_calculus_check"] = [](Ctx& c) {
    const SectorialData A(c.op());
    const double phi = c.num("phi", std::min(A.angle() + 0.5, 3.0));
    std::vector<Symbol> fam;
    if (c.p.has("symbols")) {
      for (std::size_t i = 0; i < c.p.at("symbols").size(); ++i) fam.push_back(detail::build_symbol(c.p.at("symbols").at(i)));
    } else {
      for (double k : {1.0, 10.0, 100.0}) fam.push_back(sector_ratio(k, Region::sector(phi)));
    }
    const auto rep = hinflog_calculus_check(A, fam, phi);
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) c.metric("ratio[" + std::to_string(i) + "]", rep.ratios[i]);
    c.metric("max_ratio", rep.max_ratio);
    c.metric("max_route_diff", rep.max_route_diff);
    c.require(rep.max_route_diff <= 1e-7, "spectral and sector routes disagree");
  };

  // CLI front door for a single f(A).
  R["eval"] = [](Ctx& c) {
    const auto A = c.op();
    const std::string route = c.p.str("route", "contour");
    CMatrix F;
    std::optional<Symbol> f;
    if (route == "pv") {
      const Node sp = c.p.at("symbol");
      if (sp.at("builtin").str() != "pv_transform") sp.at("builtin").invalid("pv route needs a pv_transform symbol");
      const BVFunction b = detail::build_bv(sp.at("params").at("bv"));
      const PvTrace tr = pv_fc(GroupModel(A), b);
      F = tr.limit;
      c.metric("last_increment", tr.increments.back());
      f = pv_symbol(b, sp.at("params").num("theta", 1.0));
    } else {
      f = c.symbol();
      if (route == "spectral") {
        F = spectral_fc(spectral_data(A), *f);
      } else if (route == "contour") {
        if (f->region().kind() == RegionKind::Sector) {
          const SectorialData sd(A);
          F = contour_fc_sector(A, *f, 0.5 * (sd.angle() + f->region().theta()), !f->in_E()).value;
        } else if (f->region().kind() == RegionKind::Parabola) {
          F = parabola_fc(A, *f).value;
        } else {
          ContourResult info;
          F = strip_contour(A, *f, &info);
          if (info.panels > 0) {
            c.metric("panels", info.panels);
            c.metric("change", info.change);
          }
        }
      } else if (route == "phillips") {
        const GroupModel g(A);
        const PhillipsResult ph = phillips_fc(g, inverse_fourier_symbol(*f));
        F = ph.value;
        c.metric("norm_bound", ph.norm_bound);
      } else {
        c.p.at("route").invalid("route must be contour, phillips, pv or spectral");
      }
    }
    c.r.matrices["value"] = F;
    c.r.info["route"] = route;
    const SpectralData sd = spectral_data(A);
    if (route != "spectral" && sd.diagonalizable()) {
      try {
        const double e = rel(F, spectral_fc(sd, *f));
        c.metric("oracle_error", e);
        c.metric("cond", sd.condition_number);
      } catch (const Error&) {
        // Spectrum outside the symbol region: no oracle.
      }
    }
  };

  return R;
}

void apply_expectations(Ctx& c) {
  if (!c.p.has("expect")) return;
  const Node e = c.p.at("expect");
  if (!e.raw().is_object()) e.invalid("expect must be an object");
  for (const auto& [k, v] : e.raw().items()) {
    const Node n = e.at(k);
    const auto it = c.r.metrics.find(k);
    if (it == c.r.metrics.end()) {
      c.require(false, "expected metric '" + k + "' missing");
      continue;
    }
    const double x = it->second;
    if (n.has("min")) c.require(x >= n.at("min").num(), k + " below min");
    if (n.has("max")) c.require(x <= n.at("max").num(), k + " above max");
    if (n.has("value")) c.require(std::abs(x - n.at("value").num()) <= n.num("tol", 1e-12), k + " differs from expected value");
    (void)v;
  }
}

std::vector<CheckSpec> expand_suite(const std::string& name, const std::string& ptr) {
  std::vector<CheckSpec> out;
  if (name == "transference-core") {
    const auto cases = transference_core_cases(1);
    for (std::size_t i = 0; i < cases.size(); ++i)
      out.push_back(CheckSpec{"transference-core/" + cases[i].name, "transference_case",
                              json{{"index", i}}.dump(), ptr});
  } else if (name == "cosine-core") {
    for (const char* op : {"dalembert_check", "laplace_generator_check", "phase_space_check", "parabola_fc",
                           "sector_shift_check"})
      out.push_back(CheckSpec{std::string("cosine-core/") + op, op,
                              json{{"op", {{"generator", {{"kind", "cosine"}, {"n", 4}, {"seed", 3}}}}}}.dump(), ptr});
  } else if (name == "identities") {
    out.push_back(CheckSpec{"identities/cosh_pair", "cosh_pair", "{}", ptr});
    out.push_back(CheckSpec{"identities/deconvolution", "deconvolution", "{}", ptr});
    out.push_back(CheckSpec{"identities/transference_constant", "transference_constant",
                            json{{"p", 2.0}, {"omega0", 0.5}, {"omegas", {0.6, 1.0, 2.0, 4.0}}}.dump(), ptr});
    out.push_back(CheckSpec{"identities/tau_n", "tau_n_norms", "{}", ptr});
  } else {
    fail(ErrorKind::ConfigInvalid, ptr + ": unknown suite '" + name + "'");
  }
  return out;
}

}  // namespace

std::vector<std::string> registered_ops() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

std::vector<std::string> registered_suites() { return {"cosine-core", "identities", "transference-core"}; }

ExperimentConfig parse_config(const std::string& text) {
  const json j = detail::parse_text(text, "config");
  const Node root(j, "");
  if (!j.is_object()) root.invalid("config must be an object");
  for (const auto& [k, v] : j.items())
    if (k != "seed" && k != "suites" && k != "checks" && k != "schema" && k != "name")
      root.at(k).invalid("unknown field");
  ExperimentConfig cfg;
  if (root.has("seed")) cfg.seed = root.at("seed").u64();
  if (root.has("suites")) {
    const Node s = root.at("suites");
    for (std::size_t i = 0; i < s.size(); ++i)
      for (auto& c : expand_suite(s.at(i).str(), s.at(i).pointer())) cfg.checks.push_back(std::move(c));
  }
  if (root.has("checks")) {
    const Node cs = root.at("checks");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Node c = cs.at(i);
      CheckSpec spec;
      spec.op = c.at("op").str();
      if (!registry().count(spec.op)) c.at("op").invalid("unknown op '" + spec.op + "'");
      spec.id = c.str("id", spec.op + "#" + std::to_string(i));
      if (c.has("params")) {
        if (!c.at("params").raw().is_object()) c.at("params").invalid("params must be an object");
        spec.params = c.at("params").raw().dump();
      }
      spec.pointer = c.pointer();
      cfg.checks.push_back(std::move(spec));
    }
  }
  std::map<std::string, int> seen;
  for (const auto& c : cfg.checks)
    if (++seen[c.id] > 1) fail(ErrorKind::ConfigInvalid, c.pointer + "/id: duplicate check id '" + c.id + "'");
  return cfg;
}

CheckResult run_check(const CheckSpec& spec, std::uint64_t seed) {
  CheckResult r;
  r.id = spec.id;
  r.op = spec.op;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const json params = detail::parse_text(spec.params, "params");
    const Node p(params, spec.pointer + "/params");
    const auto it = registry().find(spec.op);
    if (it == registry().end()) fail(ErrorKind::ConfigInvalid, spec.pointer + "/op: unknown op '" + spec.op + "'");
    const std::uint64_t s = p.has("seed") ? p.at("seed").u64() : seed;
    Ctx ctx{p, s, r};
    it->second(ctx);
    apply_expectations(ctx);
  } catch (const Error& e) {
    r.status = CheckStatus::Error;
    r.error_kind = std::string(to_string(e.kind()));
    r.message = e.what();
    r.metrics.clear();
    r.matrices.clear();
    r.plots.clear();
  } catch (const std::exception& e) {
    r.status = CheckStatus::Error;
    r.error_kind = "InternalError";
    r.message = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Pass; }));
}

int SuiteReport::exit_code() const {
  bool fail_any = false;
  for (const auto& c : checks) {
    if (c.error_kind == "ConfigInvalid") return 3;
    if (c.status != CheckStatus::Pass) fail_any = true;
  }
  return fail_any ? 2 : 0;
}

int thread_budget() {
  if (const char* e = std::getenv("FC_THREADS")) {
    const int v = std::atoi(e);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const ExperimentConfig& config, int threads) {
  SuiteReport rep;
  rep.seed = config.seed;
  rep.checks.resize(config.checks.size());
  const int n = std::max(1, std::min<int>(threads > 0 ? threads : thread_budget(), static_cast<int>(config.checks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.checks.size(); i = next++) rep.checks[i] = run_check(config.checks[i], config.seed);
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace fc
