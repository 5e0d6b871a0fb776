// Acceptance gate: twelve criteria, one printed pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <qsoliton/engine.hpp>

using namespace qsoliton;

namespace {

int failures = 0;

void line(int k, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", k, ok ? "pass" : "FAIL",
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Vec linspace(double a, double b, int m) {
  Vec r(m);
  for (int i = 0; i < m; ++i) r[i] = a + (b - a) * i / (m - 1);
  return r;
}

// 1. soliton residuals < 1e-7 over 256 samples, under 5 s each
void criterion_1() {
  bool ok = true;
  std::string detail;
  for (const char* name :
       {"gaussian", "cylinder_shrinker", "bach_product"}) {
    Example e = build_example(name);
    CheckOptions opts;
    opts.samples = 256;
    auto t0 = std::chrono::steady_clock::now();
    CheckReport r = soliton_residual(e.soliton, opts);
    double dt = elapsed_s(t0);
    ok = ok && r.residual_max < 1e-7 && r.samples == 256 && dt < 5.0;
    detail += std::string(name) + " " + fmt(r.residual_max) + " (" +
              fmt(dt) + "s)  ";
  }
  line(1, ok, detail);
}

// 2. Hamilton equivalence; cylinder C = 0; bach residual = c^2 |grad f|
void criterion_2() {
  CheckOptions opts;
  opts.samples = 64;
  bool agree = true;
  for (const std::string& name : example_names()) {
    Example e = build_example(name);
    Verdict vs = hamilton_scalar(e.soliton, opts).second.verdict;
    Verdict vt = hamilton_tensor(e.soliton, opts).verdict;
    agree = agree && vs == vt;
  }
  Example cyl = cylinder_shrinker(2);
  double C = hamilton_scalar(cyl.soliton, opts).second.constants.at("C");
  bool c_ok = std::abs(C) < 1e-8;

  Example bach = bach_product(1);
  QFields qf = instantiate(bach.soliton.qspec, *bach.chart);
  ScalarField f = bach.soliton.potential();
  const double c2 =
      qf.q.components(bach.chart->anchor()).at(2, 2);  // B = +c^2 on the flat block
  double rel_max = 0.0;
  for (const Vec& p : bach.chart->sample_points(64, 0)) {
    Geometry geom(*bach.chart, p, 1);
    Jet fj = f.jet(p, 1);
    Vec qgf = q_of_gradient(geom, qf.q.jets(p, 0), fj);
    Vec gtr = gradient_raised(geom, qf.trace.jet(p, 1));
    Vec diff(geom.dim());
    for (int i = 0; i < geom.dim(); ++i) diff[i] = qgf[i] - 0.5 * gtr[i];
    double resid = g_norm(geom.g0(), diff);
    double target = c2 * g_norm(geom.g0(), gradient_raised(geom, fj));
    rel_max = std::max(rel_max,
                       std::abs(resid - target) / std::max(target, 1e-10));
  }
  bool bach_ok = rel_max < 0.01;
  line(2, agree && c_ok && bach_ok,
       "verdicts agree; cylinder C = " + fmt(C) + "; bach pointwise rel " +
           fmt(rel_max));
}

// 3. trace Laplacian identities and their mutual consistency
void criterion_3() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"gaussian", "cylinder_shrinker"}) {
    Example e = build_example(name);
    QFields qf = instantiate(e.soliton.qspec, *e.chart);
    ScalarField f = e.soliton.potential();
    double r_max = 0.0, mutual_max = 0.0;
    for (const Vec& p : e.chart->sample_points(64, 0)) {
      Geometry geom(*e.chart, p, 2);
      Jet trq = trace_02(geom, qf.q.jets(p, 2));
      double lap_tr = trace_02(geom, hessian_jets(geom, trq)).value();
      Vec gf = gradient_raised(geom, f.jet(p, 1));
      std::vector<Jet> divq = divergence_02_jets(geom, qf.q.jets(p, 1));
      double divq_gf = check_detail::pair_with(
          check_detail::jet_values(divq), gf);
      double q2 = qf.norm2.value(p);
      Vec dtr(geom.dim());
      for (int i = 0; i < geom.dim(); ++i) dtr[i] = trq.partial(i);
      double dtr_gf = check_detail::pair_with(dtr, gf);
      double r1 = lap_tr - 2.0 * e.soliton.lambda * trq.value() - q2 -
                  2.0 * divq_gf;
      double r2 = (lap_tr - dtr_gf) - 2.0 * e.soliton.lambda * trq.value() -
                  q2 - (2.0 * divq_gf - dtr_gf);
      r_max = std::max({r_max, std::abs(r1), std::abs(r2)});
      mutual_max = std::max(mutual_max, std::abs(r1 - r2));
    }
    ok = ok && r_max < 1e-7 && mutual_max < 1e-8;
    detail += std::string(name) + " max " + fmt(r_max) + " mutual " +
              fmt(mutual_max) + "  ";
  }
  line(3, ok, detail);
}

// 4. rigidity: eigenvalue clusters {0, Lambda}; c = 0 and c = c^2 cases
void criterion_4() {
  CheckOptions opts;
  opts.samples = 64;
  bool ok = true;
  std::string detail;
  for (auto [Lam, lin] : {std::pair<double, double>{0.5, 0.0},
                          std::pair<double, double>{0.25, 0.5}}) {
    Example e = rigid_factory(std::sqrt(2.0), 2, Lam, {lin, 0.0}, 1.0);
    CheckReport r = rigidity_check(e.soliton, opts);
    ScalarField f = e.soliton.potential();
    double width = 0.0;
    for (const Vec& p : e.chart->sample_points(64, 0)) {
      Geometry geom(*e.chart, p, 1);
      Grid2<Jet> hj = hessian_jets(geom, f.jet(p, 2));
      Grid2<double> h(geom.dim(), 0.0);
      for (int i = 0; i < geom.dim(); ++i)
        for (int j = 0; j < geom.dim(); ++j) h.at(i, j) = hj.at(i, j).value();
      for (double ev : g_eigenvalues(geom.g0(), h))
        width = std::max(width, std::min(std::abs(ev), std::abs(ev - Lam)));
    }
    ok = ok && r.verdict == Verdict::pass && width < 1e-6;
    detail += "rigid(" + fmt(Lam) + ") width " + fmt(width) + "  ";
  }
  Example cyl = cylinder_shrinker(2);
  double c_cyl = rigidity_check(cyl.soliton, opts).constants.at("c");
  Example bach = bach_product(1);
  CheckReport rb = rigidity_check(bach.soliton, opts);
  double c_bach = rb.constants.at("c");
  double c2 = 2.0 * (*bach.soliton.Lambda - bach.soliton.lambda);
  bool c_ok = std::abs(c_cyl) < 1e-8 && rb.verdict == Verdict::pass &&
              std::abs(c_bach - c2) / c2 < 1e-6;
  line(4, ok && c_ok,
       detail + "c_cyl " + fmt(c_cyl) + " c_bach " + fmt(c_bach) + " vs " +
           fmt(c2));
}

// 5. Ricatti: closed form to 0.99 of blow-up; blow-up estimate 1 +- 1e-3
void criterion_5() {
  RicattiTrace tr = ricatti_evolve(-1.0, RicattiMode::equality, 3, 0.99);
  double dev = 0.0;
  for (const auto& [s, phi] : tr.samples)
    dev = std::max(dev, std::abs(phi - (-1.0 / (1.0 - s))));
  RicattiTrace blow = ricatti_evolve(-1.0, RicattiMode::equality, 3, 2.0);
  bool ok = dev < 1e-6 && blow.blew_up &&
            std::abs(blow.blow_up_estimate - 1.0) < 1e-3;
  line(5, ok,
       "closed-form dev " + fmt(dev) + "; blow-up at " +
           fmt(blow.blow_up_estimate));
}

// 6. growth margins at >= 512 samples; Gaussian saturates on rays
void criterion_6() {
  bool ok = true;
  std::string detail;
  struct Cfg { const char* name; int probes; double s0; };
  for (auto [name, probes, s0] : {Cfg{"gaussian", 4, 8.0},
                                  Cfg{"cylinder_shrinker", 7, 8.0},
                                  Cfg{"bach_product", 10, 8.0}}) {
    Example e = build_example(name);
    auto traces = probe_traces(*e.chart, probes, s0);
    CheckReport r = growth_bounds(e.soliton, traces, {});
    ok = ok && r.verdict == Verdict::pass && r.samples >= 512;
    detail += std::string(name) + " " + std::to_string(r.samples) + "pts "
              + fmt(r.residual_max) + "  ";
  }
  Example g = gaussian(2, 0.5);
  ScalarField f = g.soliton.f;
  double sat = 0.0;
  for (double t = 1.0; t <= 8.0; t += 0.5) {
    Vec p{t, 0.0};
    Geometry geom(*g.chart, p, 1);
    Jet fj = f.jet(p, 1);
    double b1 = 0.25 * t * t - fj.value();
    double b2 = 0.5 * t - g_norm(geom.g0(), gradient_raised(geom, fj));
    sat = std::max({sat, std::abs(b1), std::abs(b2)});
  }
  line(6, ok && sat < 1e-8, detail + "saturation " + fmt(sat));
}

// 7. cylinder co-area identity; unnormalized control off by 64 pi^2
void criterion_7() {
  Example e = cylinder_shrinker(2);
  SublevelProfile pr =
      build_profile(e.soliton, linspace(12.0 / 64, 12.0, 64));
  CheckReport r = coarea_identity_check(pr, e.soliton);
  bool ok = r.verdict == Verdict::pass && r.residual_max < 1e-6;

  Example raw = cylinder_shrinker(2);
  raw.soliton.normalization = -1.0;  // back to f = |x|^2/4, i.e. a = 0
  SublevelProfile bad =
      build_profile(raw.soliton, linspace(3.0, 5.0, 21), false);
  const double expect = 64.0 * std::numbers::pi * std::numbers::pi;
  double lhs = 4.0 * bad.V[10] - bad.radii[10] * bad.Vp[10];
  double rhs = bad.G[10] / (2.0 * 0.25) + bad.boundary_trq[10] / 1.0;
  double gap = lhs - rhs;
  bool control = coarea_identity_check(bad, raw.soliton).verdict ==
                     Verdict::fail &&
                 std::abs(gap - expect) / expect < 0.01;
  line(7, ok && control,
       "residual " + fmt(r.residual_max) + "; control gap " + fmt(gap) +
           " vs 64 pi^2 = " + fmt(expect));
}

// 8. cylinder volume bounds and the boundary-integral inequality
void criterion_8() {
  Example e = cylinder_shrinker(2);
  SublevelProfile pr =
      build_profile(e.soliton, linspace(12.0 / 64, 12.0, 64));
  CheckReport up = upper_volume_check(pr, e.soliton);
  bool mono = true;
  {
    double prev = std::numeric_limits<double>::infinity();
    for (size_t i = pr.radii.size() / 2; i < pr.radii.size(); ++i) {
      double y = pr.V[i] / std::pow(pr.radii[i], pr.n);
      mono = mono && y <= prev + 1e-12;
      prev = y;
    }
  }
  CheckReport lo = lower_volume_check(pr, e.soliton, 1.0);
  bool remark = true;  // G/(2 lambda) <= lambda n V at every radius
  for (size_t i = 0; i < pr.radii.size(); ++i)
    remark = remark && pr.G[i] / (2.0 * pr.lambda) <=
                           pr.lambda * pr.n * pr.V[i] + 1e-9;
  bool ok = up.verdict == Verdict::pass && mono &&
            lo.verdict == Verdict::pass && lo.constants.at("C2") > 0.0 &&
            std::abs(lo.constants.at("exponent") - 2.0) < 1e-12 && remark;
  line(8, ok,
       "upper trend ok; C2 = " + fmt(lo.constants.at("C2")) +
           ", exponent = " + fmt(lo.constants.at("exponent")) +
           (remark ? "; remark holds" : "; REMARK VIOLATED"));
}

// 9. Omori-Yau margins; synthetic control fails the gradient condition
void criterion_9() {
  Example g = gaussian(2, 0.5);
  CheckReport lg = lower_bound_probe(g.soliton, probe_traces(*g.chart, 2, 5.0));
  CheckReport og = omori_yau_conditions(g.soliton, lg);
  Example c = cylinder_shrinker(2);
  CheckReport lc = lower_bound_probe(c.soliton, probe_traces(*c.chart, 3, 4.0));
  CheckReport oc = omori_yau_conditions(c.soliton, lc);
  SolitonData synth = g.soliton;
  synth.f = ScalarField::from_expression(Expression("exp(x1)", 2), "psi");
  double m1 = omori_margins(synth, {3.0, 0.0}, 1.0)[1];
  bool ok = og.verdict == Verdict::pass && oc.verdict == Verdict::pass &&
            m1 < 0.0;
  line(9, ok,
       "gaussian " + fmt(og.residual_max) + ", cylinder " +
           fmt(oc.residual_max) + "; control gradient margin " + fmt(m1));
}

// 10. evolution identities agree; scalar curvature reduction sign pinned
void criterion_10() {
  Example e = cylinder_shrinker(2);
  CheckOptions opts;
  opts.samples = 24;
  CheckReport r = evolution_identities(e.soliton, opts);
  bool ok = r.verdict == Verdict::pass && r.residual_max < 1e-8 &&
            r.constants.at("reduction_sign") == 1.0;  // pinned: +2|Ric|^2
  line(10, ok,
       "mutual residual " + fmt(r.residual_max) + "; sign " +
           fmt(r.constants.at("reduction_sign")) + " (+2|Ric|^2)");
}

// 11. compact integral identity on stationary spheres; control fails
void criterion_11() {
  CheckOptions opts;
  bool ok = true;
  std::string detail;
  for (auto [n, a] : {std::pair<int, double>{2, std::sqrt(2.0)},
                      std::pair<int, double>{4, std::sqrt(6.0)}}) {
    Example e = round_sphere(n, a);
    CheckReport r = compact_integral_identity(e.soliton, opts);
    double i1 = std::abs(r.constants.at("integral_div_q_grad_f"));
    double i2 = std::abs(r.constants.at("integral_hess_f_sq"));
    ok = ok && r.verdict == Verdict::pass && i1 < 1e-6 && i2 < 1e-6;
    detail += "S^" + std::to_string(n) + " " + fmt(std::max(i1, i2)) + "  ";
  }
  Example e = round_sphere(2, std::sqrt(2.0));
  SolitonData control = e.soliton;  // height function: not a soliton potential
  control.f = ScalarField::from_expression(
      Expression("1.4142135623730951*(x1^2 + x2^2 - 1)/(1 + x1^2 + x2^2)", 2),
      "z");
  CheckReport rc = compact_integral_identity(control, opts);
  line(11, ok && rc.verdict == Verdict::fail,
       detail + "control " + to_string(rc.verdict));
}

// 12. determinism: identical configs give byte-identical JSON reports
void criterion_12(const char* verify_bin) {
  std::string base = std::string(verify_bin) +
                     " cylinder_shrinker --checks "
                     "soliton_residual,hamilton_scalar,rigidity "
                     "--samples 48 --seed 11 --out-json ";
  int rc1 = std::system((base + "acceptance_run1.json > /dev/null").c_str());
  int rc2 = std::system((base + "acceptance_run2.json > /dev/null").c_str());
  auto slurp = [](const char* p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::string a = slurp("acceptance_run1.json");
  std::string b = slurp("acceptance_run2.json");
  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  line(12, ok,
       "two runs, " + std::to_string(a.size()) + " bytes, " +
           (a == b ? "byte-identical" : "DIFFER"));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12(VERIFY_BIN);
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
