#include "kreinrel/suites.hpp"

#include "kreinrel/generators.hpp"
#include "kreinrel/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace kreinrel {

namespace {

using json = nlohmann::ordered_json;

const cplx I(0, 1);
constexpr std::size_t kStoredFailures = 20;
const SuiteThresholds kThr;

struct CheckDef {
  std::string name;
  std::string threshold;
  bool informational = false;
};

struct Entry {
  std::string check;
  bool ok = true;
  double residual = 0;
  std::vector<std::pair<std::string, double>> residuals;
  std::string detail;
  std::string objects;
};

class TrialLog {
 public:
  TrialLog(Index trial, std::uint64_t seed) : trial_(trial), seed_(seed) {}

  Index trial() const { return trial_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Entry>& entries() const { return entries_; }

  void describe(std::function<std::string()> objects) { objects_ = std::move(objects); }

  void record(const std::string& check, bool ok, double residual = 0, const std::string& detail = {},
              std::vector<std::pair<std::string, double>> residuals = {}) {
    Entry e{check, ok, residual, std::move(residuals), detail, {}};
    if (!ok && objects_) {
      try {
        e.objects = objects_();
      } catch (const std::exception&) {
        e.objects.clear();
      }
    }
    entries_.push_back(std::move(e));
  }

  // Runs fn and turns any exception into a failed entry of the named check.
  template <class Fn>
  void guard(const std::string& check, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      record(check, false, 0, std::string("exception: ") + e.what());
    }
  }

 private:
  Index trial_;
  std::uint64_t seed_;
  std::vector<Entry> entries_;
  std::function<std::string()> objects_;
};

using TrialFn = std::function<void(TrialLog&, Rng&)>;

std::vector<TrialLog> run_trials(Index trials, std::uint64_t seed, std::uint64_t salt, const TrialFn& fn) {
  const std::uint64_t base = derive_seed(seed, salt);
  std::vector<TrialLog> logs;
  logs.reserve(static_cast<std::size_t>(trials));
  for (Index k = 0; k < trials; ++k) logs.emplace_back(k, derive_seed(base, static_cast<std::uint64_t>(k)));
  const Index batch = std::max<Index>(1, static_cast<Index>(std::thread::hardware_concurrency()));
  for (Index start = 0; start < trials; start += batch) {
    std::vector<std::future<void>> jobs;
    for (Index k = start; k < std::min(trials, start + batch); ++k) {
      jobs.push_back(std::async(std::launch::async, [&fn, &log = logs[static_cast<std::size_t>(k)]] {
        Rng rng(log.seed());
        try {
          fn(log, rng);
        } catch (const std::exception& e) {
          log.describe(nullptr);
          log.record("trial", false, 0, std::string("exception: ") + e.what());
        }
        log.describe(nullptr);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  return logs;
}

void merge(Report& report, const std::vector<CheckDef>& defs, const std::vector<TrialLog>& logs) {
  std::map<std::string, std::size_t> index;
  for (const CheckDef& d : defs) {
    index[d.name] = report.checks.size();
    report.checks.push_back(CheckStats{d.name, d.threshold, d.informational, 0, 0, 0});
  }
  for (const TrialLog& log : logs) {
    for (const Entry& e : log.entries()) {
      auto it = index.find(e.check);
      if (it == index.end()) {
        it = index.emplace(e.check, report.checks.size()).first;
        report.checks.push_back(CheckStats{e.check, "no exception", false, 0, 0, 0});
      }
      CheckStats& s = report.checks[it->second];
      ++s.evaluations;
      if (std::isfinite(e.residual)) s.max_residual = std::max(s.max_residual, e.residual);
      if (!e.ok) {
        ++s.failures;
        if (!s.informational && static_cast<Index>(kStoredFailures) >= s.failures) {
          report.failures.push_back(Failure{e.check, log.trial(), log.seed(), e.residuals, e.detail, e.objects});
        }
      }
    }
  }
  std::stable_sort(report.failures.begin(), report.failures.end(), [&](const Failure& a, const Failure& b) {
    if (a.check != b.check) return index[a.check] < index[b.check];
    return a.trial < b.trial;
  });
  for (const CheckStats& s : report.checks) {
    if (!s.informational) report.max_residual = std::max(report.max_residual, s.max_residual);
  }
}

std::string thr_text(double t) {
  std::ostringstream out;
  out << "residual <= " << t;
  return out.str();
}

// ‖(I - P_A) F_B‖, the sine of the largest angle from B into A.
double inclusion_gap(const Subspace& a, const Subspace& b) {
  if (b.is_zero()) return 0.0;
  if (a.is_zero()) return 1.0;
  const Matrix f = b.frame();
  return spectral_norm(f - a.frame() * (a.frame().adjoint() * f));
}

double equality_gap(const Subspace& a, const Subspace& b) { return std::max(inclusion_gap(a, b), inclusion_gap(b, a)); }

LinearRelation random_relation(const KreinSpace& space, Index dim, Rng& rng) {
  if (dim == 0) return zero_relation(space, space);
  return LinearRelation(space, space, span(rng.gaussian(2 * space.dim(), dim)));
}

KreinSpace random_space(Rng& rng, Index n) {
  const Index p = rng.integer(0, n);
  return gen_space(rng, p, n - p);
}

cplx random_point(Rng& rng) { return {rng.uniform(-2, 2), rng.uniform(0.3, 2) * (rng.uniform() < 0.5 ? -1 : 1)}; }

std::string pair_json(const LinearRelation& g, const LinearRelation& h) {
  json doc;
  doc["G"] = json::parse(relation_json(g));
  doc["H"] = json::parse(relation_json(h));
  return doc.dump();
}

std::string two_triples_json(const BoundaryTriple& a, const BoundaryTriple& b) {
  json doc;
  doc["a"] = json::parse(triple_json(a));
  doc["b"] = json::parse(triple_json(b));
  return doc.dump();
}

std::vector<cplx> with_points(std::vector<cplx> pts, std::initializer_list<cplx> extra) {
  for (const cplx z : extra) pts.push_back(z);
  return pts;
}

// ---------------------------------------------------------------- appendix

void eqgh_a_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(3, 6);
  const KreinSpace space = random_space(rng, n);
  const Matrix& j = space.J();
  LinearRelation g;
  Subspace c;
  for (int attempt = 0; attempt < 50 && c.is_zero(); ++attempt) {
    const Index k = rng.integer(1, n - 1);
    const Subspace d1 = span(rng.gaussian(n, k));
    const Subspace d2 = complement(d1);
    const Index gd = rng.integer(1, k);
    Matrix graph(2 * n, gd);
    graph << d1.frame() * rng.gaussian(k, gd), rng.gaussian(n, gd);
    g = LinearRelation(space, space, span(graph));
    c = intersect(intersect(adjoint(g).graph(), complement(g.graph())), product(d2, Subspace::full(n)));
  }
  if (c.is_zero()) {
    log.record("eqGH.a", false, 0, "no admissible H found");
    return;
  }
  const LinearRelation h(space, space, span(c.frame() * rng.gaussian(c.dim(), rng.integer(1, c.dim()))));
  log.describe([&] { return pair_json(g, h); });

  const LinearRelation jg = left_multiply(j, g, space);
  const LinearRelation jh = left_multiply(j, h, space);
  const LinearRelation jgp = left_multiply(j, adjoint(g), space);
  const LinearRelation jhp = left_multiply(j, adjoint(h), space);
  for (const cplx z : with_points(default_grid(), {0.0, 1.5, random_point(rng)})) {
    const double first = inclusion_gap(eigenspace(jgp, z), range(shift(jh, -z)));
    const double second = inclusion_gap(eigenspace(jhp, z), range(shift(jg, -z)));
    const double res = std::max(first, second);
    log.record("eqGH.a", res <= kThr.identity, res, "at z = " + format_complex(z),
               {{"ran(JH+z) in N_z(JG+)", first}, {"ran(JG+z) in N_z(JH+)", second}});
  }
}

void eqgh_b_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(2, 5);
  const KreinSpace space = random_space(rng, n);
  const KreinSpace k = doubled(space).space;
  const Matrix kp = positive_part(k).frame();
  const Matrix km = negative_part(k).frame();
  const Subspace l = span(kp + km * rng.unitary(n));
  const Index m = rng.uniform() < 0.5 ? n : rng.integer(1, n);
  const Subspace k0 = span(l.frame() * rng.gaussian(n, m));
  const Subspace gs = m >= 2 ? span(k0.frame() * rng.gaussian(m, rng.integer(1, m - 1))) : k0;
  const Subspace hs = intersect(k0, complement(gs));
  const LinearRelation g(space, space, gs);
  const LinearRelation h(space, space, hs);
  log.describe([&] { return pair_json(g, h); });

  const NeutralityRank rank = neutrality_rank(k, k0);
  const Matrix& j = space.J();
  const LinearRelation jg = left_multiply(j, g, space);
  const LinearRelation jh = left_multiply(j, h, space);
  const LinearRelation jgp = left_multiply(j, adjoint(g), space);
  const LinearRelation jhp = left_multiply(j, adjoint(h), space);

  bool equal_at[2];
  double eq_res[2];
  for (int s = 0; s < 2; ++s) {
    const cplx z = s == 0 ? I : -I;
    const Subspace n1 = eigenspace(jgp, z), r1 = range(shift(jh, -z));
    const Subspace n2 = eigenspace(jhp, z), r2 = range(shift(jg, -z));
    const double inc = std::max(inclusion_gap(n1, r1), inclusion_gap(n2, r2));
    log.record("eqGH.b.i", inc <= kThr.identity, inc, "at z = " + format_complex(z));
    eq_res[s] = std::max(equality_gap(n1, r1), equality_gap(n2, r2));
    equal_at[s] = eq_res[s] <= kThr.identity;
  }
  const bool either = equal_at[0] || equal_at[1];
  const bool both = equal_at[0] && equal_at[1];
  const bool ok = either == rank.maximal && both == rank.hyper_maximal;
  std::ostringstream detail;
  detail << "dim G+H = " << k0.dim() << " in dim " << n << ", maximal " << rank.maximal << ", hyper-maximal "
         << rank.hyper_maximal << ", equal at i " << equal_at[0] << ", equal at -i " << equal_at[1];
  log.record("eqGH.b.ii", ok, rank.hyper_maximal ? std::max(eq_res[0], eq_res[1]) : 0.0, detail.str(),
             {{"equality gap at i", eq_res[0]}, {"equality gap at -i", eq_res[1]}});

  // P±(K0) = K± as the projection form of hyper-maximality.
  const Index up = image(kp * kp.adjoint(), k0).dim();
  const Index down = image(km * km.adjoint(), k0).dim();
  const bool proj_max = up == n || down == n;
  const bool proj_hyper = up == n && down == n;
  log.record("neutral.projection_form", proj_max == rank.maximal && proj_hyper == rank.hyper_maximal, 0,
             "projections of ranks " + std::to_string(up) + " and " + std::to_string(down));
}

void lemma_o_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(3, 6);
  const KreinSpace space = random_space(rng, n);
  const Index gd = rng.integer(1, 3);
  const Index hd = rng.integer(0, 3);
  Matrix gm = rng.gaussian(2 * n, gd);
  Matrix hm = rng.gaussian(2 * n, hd);
  const std::vector<cplx> grid = default_grid();
  const cplx z0 = rng.uniform() < 0.5 ? grid[static_cast<std::size_t>(rng.integer(0, 9))] : random_point(rng);
  const cplx z1 = random_point(rng);
  if (hd > 0 && rng.uniform() < 0.7) {
    // f = g + h with g' + h' = z0 f.
    const Vector f = rng.gaussian(n, 1).col(0);
    const Vector x = rng.gaussian(n, 1).col(0);
    const Vector xp = rng.gaussian(n, 1).col(0);
    gm.col(0) << x, xp;
    hm.col(0) << f - x, z0 * f - xp;
  }
  if (gd > 1 && rng.uniform() < 0.5) {
    const Vector x = rng.gaussian(n, 1).col(0);
    gm.col(1) << x, z1 * x;
  }
  const LinearRelation g(space, space, span(gm));
  const LinearRelation h = hd == 0 ? zero_relation(space, space) : LinearRelation(space, space, span(hm));
  log.describe([&] { return pair_json(g, h); });

  const LinearRelation gh = cw_sum(g, h).relation;
  const LinearRelation id = scalar_relation(space, 1.0);
  for (const cplx z : with_points(grid, {z0, z1, 0.7, random_point(rng)})) {
    const std::string at = "at z = " + format_complex(z);
    const Subspace lhs = eigenspace(gh, z);
    const LinearRelation rg = inverse(shift(g, z));
    const Subspace x1 = range(op_sum(compose(rg, scale(shift(h, z), -1.0)), id));
    const Subspace x2 = range(op_sum(rg, scale(inverse(shift(h, z)), -1.0)));
    const Subspace sub = sum(eigenspace(g, z), eigenspace(h, z));
    const double a1 = equality_gap(lhs, x1), a2 = equality_gap(lhs, x2), a3 = inclusion_gap(lhs, sub);
    const double res = std::max({a1, a2, a3});
    log.record("O.a", res <= kThr.identity, res, at,
               {{"first formula", a1}, {"second formula", a2}, {"eigenspace sum inclusion", a3}});

    const bool in_o = o_membership(g, h, z);
    const LinearRelation chain = compose(rg, shift(h, z));
    const bool alt = contains(product(eigenspace(h, z), eigenspace(g, z)), chain.graph());
    log.record("O.b.characterization", in_o == alt, 0, at + (in_o ? " in O" : " outside O"));
    if (in_o) {
      const double eq = equality_gap(lhs, sub);
      log.record("O.b", eq <= kThr.identity, eq, at);
      const bool spec_sum = !lhs.is_zero();
      const bool spec_parts = !eigenspace(g, z).is_zero() || !eigenspace(h, z).is_zero();
      log.record("O.b.hgl0", spec_sum == spec_parts, 0, at);
    }
  }
}

void lemma_oc_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(3, 6);
  const KreinSpace space = random_space(rng, n);
  const Index gd = rng.integer(1, 3);
  const cplx z0 = rng.uniform() < 0.5 ? default_grid()[static_cast<std::size_t>(rng.integer(0, 9))] : random_point(rng);
  Matrix gm = rng.gaussian(2 * n, gd);
  std::vector<Vector> hcols;
  const bool plant = rng.uniform() < 0.7;
  Vector u;
  if (plant) {
    // (x, z0 x + u) ∈ G and (y, z0 y - u) ∈ H with H ⊥ G, so u ∈ ran(G - z0) ∩ ran(H - z0).
    const Vector x = rng.gaussian(n, 1).col(0);
    u = rng.gaussian(n, 1).col(0);
    gm.col(0) << x, z0 * x + u;
    const Matrix top = gm.topRows(n), bot = gm.bottomRows(n);
    const Matrix lhs = top.adjoint() + z0 * bot.adjoint();
    const Vector y = lhs.completeOrthogonalDecomposition().solve(bot.adjoint() * u);
    if ((lhs * y - bot.adjoint() * u).norm() <= 1e-10 * (1.0 + u.norm())) {
      Vector v(2 * n);
      v << y, z0 * y - u;
      hcols.push_back(v);
    }
  }
  const LinearRelation g(space, space, span(gm));
  const Subspace perp = complement(g.graph());
  const Index extra = rng.integer(hcols.empty() ? 1 : 0, std::min<Index>(2, perp.dim()));
  Matrix hm(2 * n, static_cast<Index>(hcols.size()) + extra);
  for (std::size_t k = 0; k < hcols.size(); ++k) hm.col(static_cast<Index>(k)) = hcols[k];
  if (extra > 0) hm.rightCols(extra) = perp.frame() * rng.gaussian(perp.dim(), extra);
  const LinearRelation h(space, space, span(hm));
  log.describe([&] { return pair_json(g, h); });

  const ComponentwiseSum gh = cw_sum(g, h);
  log.record("O.c.orthogonal", gh.orthogonal, overlap(g.graph(), h.graph()), "G and H should be orthogonal in K");
  for (const cplx z : with_points(default_grid(), {z0, 0.0, random_point(rng)})) {
    const bool in_o = o_membership(g, h, z);
    const bool lhs = !eigenspace(gh.relation, z).is_zero();
    const bool parts = !eigenspace(g, z).is_zero() || !eigenspace(h, z).is_zero();
    const bool first = in_o && parts;
    const bool second = !in_o;
    const bool ok = lhs == (first || second) && !(first && second);
    log.record("O.c", ok, 0,
               "at z = " + format_complex(z) + (in_o ? " in O" : " outside O") + (lhs ? ", eigenvalue" : ", regular"));
  }
}

void sfn_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(2, 6);
  const KreinSpace space = random_space(rng, n);
  LinearRelation g;
  if (log.trial() % 2 == 0) {
    const Index vd = rng.integer(1, n - 1);
    const Matrix v = span(rng.gaussian(n, vd)).frame();
    const Index gd = rng.integer(1, 2 * vd);
    Matrix graph(2 * n, gd);
    graph << v * rng.gaussian(vd, gd), v * rng.gaussian(vd, gd);
    g = LinearRelation(space, space, span(graph));
  } else {
    g = random_relation(space, rng.integer(1, 2 * n - 1), rng);
  }
  log.describe([&] { return relation_json(g); });

  const LinearRelation gp = adjoint(g);
  const Subspace dr = sum(domain(g), range(g));
  const bool dense = dr.is_full();
  const Subspace mk = intersect(multivalued_part(gp), kernel(gp));
  const double ident = equality_gap(mk, ortho_companion(space, dr));
  log.record("sfN.identity", ident <= kThr.identity, ident, "mul G+ ∩ ker G+ against (dom G + ran G)^[⊥]");

  const std::vector<cplx> pts = with_points(default_grid(), {0.0, 1.0, -2.0, random_point(rng)});
  bool disjoint = true;
  for (std::size_t a = 0; a < pts.size() && disjoint; ++a) {
    const Subspace ea = eigenspace(gp, pts[a]);
    for (std::size_t b = a + 1; b < pts.size() && disjoint; ++b) {
      if (!intersect(ea, eigenspace(gp, pts[b])).is_zero()) disjoint = false;
    }
  }
  log.record("sfN", disjoint == dense, 0,
             std::string("dom G + ran G ") + (dense ? "full" : "proper") + ", eigenspaces " +
                 (disjoint ? "disjoint" : "intersecting"));
}

void p3_trial(TrialLog& log, Rng& rng) {
  const Index n = rng.integer(2, 6);
  const Index d = rng.integer(0, n - 1);
  const KreinSpace space = KreinSpace::hilbert(n);
  LinearRelation t;
  bool found = false;
  for (int attempt = 0; attempt < 50 && !found; ++attempt) {
    t = gen_symmetric(space, d, rng);
    found = is_operator(t);
  }
  if (!found) {
    log.record("P3", false, 0, "no symmetric operator drawn");
    return;
  }
  log.describe([&] { return relation_json(t); });
  const bool p = has_property_p(t);
  const bool adj_op = is_operator(adjoint(t, Metric::hilbert));
  const bool dense = domain(t).is_full();
  log.record("P3.mul_adjoint", adj_op == dense, 0, "mul T* = (dom T)^⊥");
  std::ostringstream detail;
  detail << "dim " << n << ", defect " << d << ", property (P) " << p << ", T* operator " << adj_op;
  log.record("P3", p == adj_op, 0, detail.str());
}

// ---------------------------------------------------------------- extensions

void roundtrip_trial(TrialLog& log, Rng& rng) {
  const Index dim = rng.integer(2, 8);
  const KreinSpace space = random_space(rng, dim);
  const Index defect = rng.integer(1, dim - 1);
  const LinearRelation t = gen_symmetric(space, defect, rng);
  log.describe([&] { return relation_json(t); });
  const NWitness w = sample_witness(t, rng);
  const NWitness w2 = sample_witness(t, rng);

  log.guard("roundtrip.reduce_extend", [&] {
    const double r = distance(reduce(t, extend(t, w.n)).graph(), w.n.graph());
    log.record("roundtrip.reduce_extend", r < kThr.identity, r);
  });
  log.guard("roundtrip.extend_reduce", [&] {
    const double r = distance(extend(t, reduce(t, w2.t0)).graph(), w2.t0.graph());
    log.record("roundtrip.extend_reduce", r < kThr.identity, r);
  });
  log.guard("roundtrip.reduce_by_defect", [&] {
    const double r = distance(reduce_by_defect(t, w2.t0).graph(), reduce(t, w2.t0).graph());
    log.record("roundtrip.reduce_by_defect", r < kThr.identity, r);
  });
  log.guard("propN", [&] {
    const PropNAudit a = prop_n_audit(t, w.n);
    const double r = std::max({a.tplus_split, a.sigma_split, a.sigma_jm, a.dom_resolvent_plus, a.dom_resolvent_minus,
                               a.dom_cayley, a.cayley_defect});
    std::ostringstream detail;
    detail << "dim H " << a.dim_h << ", d " << a.d << ", n " << a.n << "/" << a.n_minus << ", dim N " << a.dim_n
           << ", dim T " << a.dim_t << ", dom N hyper-maximal " << a.dom_hyper_maximal << ", M direct " << a.m_direct;
    log.record("propN", a.passed(kThr.identity), std::isfinite(r) ? r : 1.0, detail.str(),
               {{"T+ = T + Σ", a.tplus_split},
                {"Σ = N + Ĵ(N)", a.sigma_split},
                {"Σ = J M", a.sigma_jm},
                {"dom N, resolvent at -i", a.dom_resolvent_plus},
                {"dom N, resolvent at i", a.dom_resolvent_minus},
                {"dom N, Cayley", a.dom_cayley},
                {"Cayley image of the defect space", a.cayley_defect}});
  });
}

void theorem_ex_trial(TrialLog& log, Rng& rng) {
  InstanceSpec spec;
  spec.seed = rng.bits();
  spec.dim = rng.integer(2, 7);
  spec.p = rng.integer(0, spec.dim - 1);
  spec.q = spec.dim - spec.p;
  spec.defect = rng.integer(1, spec.dim / 2);
  spec.require_property_p = true;
  const LinearRelation t = gen_symmetric(spec);
  log.describe([&] { return relation_json(t); });
  std::vector<NWitness> ws;
  for (int k = 0; k < 3; ++k) ws.push_back(sample_witness(t, rng));
  const std::vector<cplx> grid = default_grid();
  const TheoremExReport ex = theorem_ex_check(t, ws, grid);
  log.record("theorem_ex", ex.property_p && ex.failures == 0, 0,
             std::to_string(ex.failures) + " of " + std::to_string(ex.checked) + " points of δ(T) outside ρ(T0)");
  for (const NWitness& w : ws) {
    const LemmaOsReport os = lemma_os_check(w, grid);
    log.record("lemma_os", os.failures == 0, 0,
               std::to_string(os.failures) + " of " + std::to_string(os.checked) + " grid points disagree");
  }
}

// ---------------------------------------------------------------- boundary

void boundary_trial(TrialLog& log, Rng& rng) {
  const Index dim = rng.integer(2, 7);
  const KreinSpace space = random_space(rng, dim);
  const LinearRelation t = gen_symmetric(space, rng.integer(1, dim - 1), rng);
  const NWitness w = sample_witness(t, rng);
  const BoundaryTriple a = gen_triple(t, w.n, rng, rng.uniform() < 0.5);
  log.describe([&] { return triple_json(a); });
  const std::vector<cplx> grid = default_grid();

  log.record("green", a.green_residual() < kThr.green, a.green_residual());
  log.guard("weyl_symmetry", [&] {
    const GridReport r = weyl_symmetry_check(a, grid);
    log.record("weyl_symmetry", r.max_residual < kThr.identity, r.max_residual,
               std::to_string(r.checked) + " conjugate pairs");
  });
  log.guard("beta_shift", [&] {
    const Matrix beta = inverse_boundary(a).beta;
    const double herm = max_abs(beta - beta.adjoint());
    const BoundaryTriple b = beta_shift(a);
    const Index d = a.boundary_dim();
    double worst = herm;
    for (const cplx z : grid) {
      const WeylValue ma = weyl(a, z);
      const WeylValue mb = weyl(b, z);
      if (ma.operator_form && mb.operator_form) {
        worst = std::max(worst, max_abs(*mb.operator_form - (*ma.operator_form - beta)));
      } else {
        Matrix f = ma.relation.graph().frame();
        f.bottomRows(d) -= beta * f.topRows(d);
        const KreinSpace l = KreinSpace::hilbert(d);
        worst = std::max(worst, distance(LinearRelation(l, l, span(f)), mb.relation));
      }
    }
    log.record("beta_shift", worst < kThr.identity, worst, "", {{"β - β*", herm}});
  });
  log.guard("resolvent_identities", [&] {
    const ResolventIdentityReport r = resolvent_identities_check(a, grid);
    const double worst = std::max({r.gamma_shift.max_residual, r.krein_naimark.max_residual, r.isometry.max_residual});
    log.record("resolvent_identities", worst < kThr.identity, worst, "",
               {{"gamma shift", r.gamma_shift.max_residual},
                {"Krein-Naimark", r.krein_naimark.max_residual},
                {"isometry", r.isometry.max_residual}});
  });
  log.guard("inverse_identities", [&] {
    const InverseIdentityReport r = inverse_identities_check(a, grid);
    const double worst = std::max(r.jn_residual, r.n_residual);
    log.record("inverse_identities", worst < kThr.identity, worst, "",
               {{"P_J(N) gamma", r.jn_residual}, {"P_N gamma", r.n_residual}});
  });
}

// ---------------------------------------------------------------- similarity

BoundaryTriple random_triple(Rng& rng, Index dim, Index defect, bool shift) {
  const KreinSpace space = random_space(rng, dim);
  const LinearRelation t = gen_symmetric(space, defect, rng);
  const NWitness w = sample_witness(t, rng);
  return gen_triple(t, w.n, rng, shift);
}

void vos_trial(TrialLog& log, Rng& rng) {
  const Index d = rng.integer(1, 3);
  const BoundaryTriple a = random_triple(rng, rng.integer(d + 1, 6), d, rng.uniform() < 0.5);
  const BoundaryTriple b = random_triple(rng, rng.integer(d + 1, 6), d, rng.uniform() < 0.5);
  log.describe([&] { return two_triples_json(a, b); });
  log.guard("vos.operator_part", [&] {
    const double r = v0_operator_part(a, b).distance;
    log.record("vos.operator_part", r < kThr.vos, r);
  });
  log.guard("vos.sigma_gram", [&] {
    const SigmaUnitaryReport s = sigma_unitary_check(a, b);
    const double r = std::max({s.gram_residual, s.inverse_residual, s.range_distance});
    log.record("vos.sigma_gram", r < kThr.vos, r, "",
               {{"gram", s.gram_residual}, {"inverse", s.inverse_residual}, {"range", s.range_distance}});
  });
  log.guard("vos.llp", [&] {
    const WMaps w = w_maps(a, b);
    const double r = std::max(w.llp_residual, w.adjoint_residual);
    log.record("vos.llp", r < kThr.vos, r, "", {{"llp", w.llp_residual}, {"w0* w1 - I", w.adjoint_residual}});
  });
}

void wl_trial(TrialLog& log, Rng& rng) {
  const Index dim = rng.integer(2, 5);
  const BoundaryTriple a = random_triple(rng, dim, rng.integer(1, dim - 1), rng.uniform() < 0.5);
  const KreinSpace& space = a.space();
  BoundaryTriple b = a;
  BlockUnitary v;
  const Index family = log.trial() % 3;
  if (family == 0) {
    const KreinSpace k = doubled(space).space;
    const Matrix m = gen_standard_unitary(rng, k, k);
    b = transport(a, m, space);
    v = BlockUnitary::from_matrix(m, space, space);
  } else if (family == 1) {
    const Matrix u = gen_standard_unitary(rng, space, space);
    v = diagonal_lift(u, space, space);
    b = transport(a, v.matrix(), space);
  } else {
    const Index n = a.parent().dim();
    const Index d = a.boundary_dim();
    const Matrix tau = tau_from_coordinates(a, a, rng.gaussian(n, n) + 2.0 * Matrix::Identity(n, n));
    const Matrix theta = theta_from_coordinates(a, rng.hermitian(n));
    const Matrix sigma = sigma_from_coordinates(a, a, rng.gaussian(n, d));
    v = build_standard_v(a, a, tau, theta, sigma).v;
  }
  log.describe([&] {
    json doc = json::parse(two_triples_json(a, b));
    doc["V"] = json::parse(matrix_json(v.matrix()));
    return doc.dump();
  });
  const double scale = 1.0 + std::pow(max_abs(v.matrix()), 2);
  const double vr = vabcd_residual(v) / scale;
  const MembershipReport mem = membership_check(v, a, b);
  log.record("wl.planted", vr < kThr.identity && mem.relation_route, vr,
             "family " + std::to_string(family) + ", V in the class " + (mem.relation_route ? "yes" : "no"));

  for (const cplx z : default_grid()) {
    const std::string at = "family " + std::to_string(family) + " at z = " + format_complex(z);
    const WeylCriterion c = weyl_equality_criterion(a, b, v, z);
    std::ostringstream detail;
    detail << at << ": containment " << c.containment << ", Weyl equal " << c.weyl_equal << ", sufficiency "
           << c.sufficiency_applies << ", pencil kernel " << (c.pencil_agrees ? (*c.pencil_agrees ? "ok" : "off") : "n/a");
    log.record("wl.two_route", c.consistent(), 0, detail.str(), {{"Weyl gap", c.weyl_gap}});
    const Subspace kp = span(null_space(pencil(v, z)));
    const bool shortcut = contains(kp, eigenspace(a.tplus(), z));
    log.record("wl.pencil_shortcut", shortcut == c.weyl_equal, 0, at);
    if (c.reduction_applies) log.record("wl.reduction", c.reduction_holds, 0, at);
  }
}

void reconstruction_trial(TrialLog& log, Rng& rng) {
  BoundaryTriple a;
  if (log.trial() == 0) {
    a = c4_example_triple();
  } else {
    InstanceSpec spec;
    spec.seed = rng.bits();
    spec.dim = rng.integer(2, 5);
    spec.p = rng.integer(0, spec.dim);
    spec.q = spec.dim - spec.p;
    spec.defect = rng.integer(1, spec.dim - 1);
    spec.require_simple = true;
    const LinearRelation t = gen_symmetric(spec);
    const NWitness w = sample_witness(t, rng);
    a = gen_triple(t, w.n, rng, rng.uniform() < 0.5);
  }
  const KreinSpace& space = a.space();
  const Matrix u = gen_standard_unitary(rng, space, space);
  const BoundaryTriple b = transport(a, diagonal_lift(u, space, space).matrix(), space);
  log.describe([&] { return two_triples_json(a, b); });
  const std::vector<cplx> grid = default_grid();

  log.guard("similarity.reconstruct", [&] {
    const SimilarityResult r = reconstruct_similarity(a, b, grid);
    const bool found = r.unitary.has_value();
    log.record("similarity.reconstruct", found && r.final_distance < kThr.reconstruction, r.final_distance,
               found ? "" : "no unitary returned",
               {{"lsq", r.lsq_residual}, {"gram", r.gram_residual}, {"T distance", r.t_distance}});
    if (!found) return;
    log.record("similarity.w_diagonal", r.w_offdiag < kThr.w_offdiag, r.w_offdiag);
    log.record("similarity.w_diagonal_e0_theta", r.restricted_w_offdiag < kThr.w_offdiag, r.restricted_w_offdiag,
               "W for V rebuilt with E = E0 + Θ");
    log.record("similarity.e_splits", r.e_cross < kThr.w_offdiag, r.e_cross, "cross block of the extracted E");
  });
  log.guard("similarity.negative_control", [&] {
    const double kappa = 2.0 + static_cast<double>(log.trial() % 2);
    const BoundaryTriple bk = transform(a, scaling_matrix(a.boundary_dim(), kappa));
    const SimilarityResult r = reconstruct_similarity(a, bk, grid);
    const double gap = r.witness ? weyl_discrepancy(a, bk, *r.witness) : 0.0;
    log.record("similarity.negative_control", r.witness.has_value() && gap > kThr.witness_gap, 0,
               r.witness ? "witness " + format_complex(*r.witness) : "no witness found", {{"Weyl discrepancy", gap}});
  });
}

json failure_json(const Failure& f) {
  json j;
  j["check"] = f.check;
  j["trial"] = f.trial;
  j["seed"] = f.seed;
  json res = json::object();
  for (const auto& [name, value] : f.residuals) res[name] = std::isfinite(value) ? json(value) : json(nullptr);
  j["residuals"] = res;
  j["detail"] = f.detail;
  j["objects"] = f.objects.empty() ? json(nullptr) : json::parse(f.objects);
  return j;
}

}  // namespace

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckStats& s) { return !s.informational && s.failures > 0; });
}

const CheckStats* Report::find(const std::string& check) const {
  for (const CheckStats& s : checks) {
    if (s.name == check) return &s;
  }
  return nullptr;
}

Report appendix_suite(Index trials, std::uint64_t seed) {
  Report r{"appendix", trials, seed, {}, {}, 0};
  const std::string zero = "0 counterexamples";
  const std::vector<CheckDef> defs = {
      {"eqGH.a", thr_text(kThr.identity)},
      {"eqGH.b.i", thr_text(kThr.identity)},
      {"eqGH.b.ii", zero},
      {"neutral.projection_form", zero},
      {"O.a", thr_text(kThr.identity)},
      {"O.b", thr_text(kThr.identity)},
      {"O.b.characterization", zero},
      {"O.b.hgl0", zero},
      {"O.c.orthogonal", zero},
      {"O.c", zero},
      {"sfN.identity", thr_text(kThr.identity)},
      {"sfN", zero},
      {"P3.mul_adjoint", zero},
      {"P3", zero},
  };
  std::vector<TrialLog> logs;
  const TrialFn parts[] = {eqgh_a_trial, eqgh_b_trial, lemma_o_trial, lemma_oc_trial, sfn_trial, p3_trial};
  std::uint64_t salt = 100;
  for (const TrialFn& fn : parts) {
    std::vector<TrialLog> part = run_trials(trials, seed, salt++, fn);
    logs.insert(logs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  merge(r, defs, logs);
  return r;
}

Report extensions_suite(Index trials, std::uint64_t seed) {
  Report r{"extensions", trials, seed, {}, {}, 0};
  const std::vector<CheckDef> defs = {
      {"roundtrip.reduce_extend", thr_text(kThr.identity)},
      {"roundtrip.extend_reduce", thr_text(kThr.identity)},
      {"roundtrip.reduce_by_defect", thr_text(kThr.identity)},
      {"propN", thr_text(kThr.identity) + " and exact dimensions"},
      {"theorem_ex", "0 failures"},
      {"lemma_os", "0 failures"},
  };
  std::vector<TrialLog> logs = run_trials(trials, seed, 200, roundtrip_trial);
  std::vector<TrialLog> ex = run_trials(std::max<Index>(1, trials / 2), seed, 201, theorem_ex_trial);
  logs.insert(logs.end(), std::make_move_iterator(ex.begin()), std::make_move_iterator(ex.end()));
  merge(r, defs, logs);
  return r;
}

Report boundary_suite(Index trials, std::uint64_t seed) {
  Report r{"boundary", trials, seed, {}, {}, 0};
  const std::vector<CheckDef> defs = {
      {"green", thr_text(kThr.green)},
      {"weyl_symmetry", thr_text(kThr.identity)},
      {"beta_shift", thr_text(kThr.identity)},
      {"resolvent_identities", thr_text(kThr.identity)},
      {"inverse_identities", thr_text(kThr.identity)},
  };
  merge(r, defs, run_trials(trials, seed, 300, boundary_trial));
  return r;
}

Report similarity_suite(Index trials, std::uint64_t seed) {
  Report r{"similarity", trials, seed, {}, {}, 0};
  const std::vector<CheckDef> defs = {
      {"vos.operator_part", thr_text(kThr.vos)},
      {"vos.sigma_gram", thr_text(kThr.vos)},
      {"vos.llp", thr_text(kThr.vos)},
      {"wl.planted", thr_text(kThr.identity)},
      {"wl.two_route", "0 disagreements"},
      {"wl.pencil_shortcut", "informational", true},
      {"wl.reduction", "informational", true},
      {"similarity.reconstruct", thr_text(kThr.reconstruction)},
      {"similarity.w_diagonal", thr_text(kThr.w_offdiag)},
      {"similarity.w_diagonal_e0_theta", "informational", true},
      {"similarity.e_splits", "informational", true},
      {"similarity.negative_control", "Weyl discrepancy > 1e-3"},
  };
  std::vector<TrialLog> logs = run_trials(trials, seed, 400, vos_trial);
  for (const auto& [salt, fn, count] : {std::tuple{401ULL, TrialFn(wl_trial), trials},
                                        std::tuple{402ULL, TrialFn(reconstruction_trial), std::max<Index>(1, trials / 2)}}) {
    std::vector<TrialLog> part = run_trials(count, seed, salt, fn);
    logs.insert(logs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  merge(r, defs, logs);
  return r;
}

std::vector<Report> run_suites(const std::string& name, Index trials, std::uint64_t seed) {
  if (trials <= 0) throw Error(ErrorKind::input, "the number of trials must be positive");
  std::vector<Report> out;
  const bool all = name == "all";
  if (all || name == "appendix") out.push_back(appendix_suite(trials, seed));
  if (all || name == "extensions") out.push_back(extensions_suite(trials, seed));
  if (all || name == "boundary") out.push_back(boundary_suite(trials, seed));
  if (all || name == "similarity") out.push_back(similarity_suite(trials, seed));
  if (out.empty()) throw Error(ErrorKind::input, "unknown suite \"" + name + "\"");
  return out;
}

std::string report_json(const std::vector<Report>& reports, int indent) {
  json root;
  json list = json::array();
  bool passed = true;
  for (const Report& r : reports) {
    json s;
    s["suite"] = r.suite;
    s["trials"] = r.trials;
    s["seed"] = r.seed;
    s["passed"] = r.passed();
    s["max_residual"] = r.max_residual;
    json checks = json::array();
    for (const CheckStats& c : r.checks) {
      json cj;
      cj["name"] = c.name;
      cj["threshold"] = c.threshold;
      cj["informational"] = c.informational;
      cj["evaluations"] = c.evaluations;
      cj["failures"] = c.failures;
      cj["max_residual"] = c.max_residual;
      checks.push_back(std::move(cj));
    }
    s["checks"] = std::move(checks);
    json failures = json::array();
    for (const Failure& f : r.failures) failures.push_back(failure_json(f));
    s["failures"] = std::move(failures);
    passed = passed && r.passed();
    list.push_back(std::move(s));
  }
  root["passed"] = passed;
  root["suites"] = std::move(list);
  return pretty_json(root.dump(), indent);
}

std::string report_text(const std::vector<Report>& reports) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2);
  for (const Report& r : reports) {
    out << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.trials << " trials, seed "
        << r.seed << ", max residual " << r.max_residual << ")\n";
    for (const CheckStats& c : r.checks) {
      out << "  " << std::left << std::setw(34) << c.name << (c.informational ? " info " : (c.failures ? " FAIL " : " ok   "))
          << std::right << std::setw(6) << c.failures << "/" << std::left << std::setw(6) << c.evaluations
          << " max " << c.max_residual << "  [" << c.threshold << "]\n";
    }
    for (const Failure& f : r.failures) {
      out << "    " << f.check << " trial " << f.trial << " seed " << f.seed << ": " << f.detail << "\n";
    }
  }
  return out.str();
}

BoundaryTriple c4_example_triple() {
  Matrix j = Matrix::Zero(4, 4);
  for (Index k = 0; k < 4; ++k) j(k, 3 - k) = 1.0;
  const KreinSpace h = make_krein(j);
  Matrix dom = Matrix::Zero(4, 1), ran = Matrix::Zero(4, 1);
  dom(0, 0) = 1.0;
  ran(1, 0) = 1.0;
  const LinearRelation t = from_pairs(dom, ran, h, h);
  Matrix basis = Matrix::Zero(8, 7);
  basis(0, 0) = 1.0;
  basis(1, 1) = 1.0;
  basis(2, 2) = 1.0;
  basis(7, 2) = 1.0;
  basis(3, 3) = 1.0;
  basis(4, 4) = 1.0;
  basis(5, 5) = 1.0;
  basis(6, 6) = 1.0;
  Matrix gamma = Matrix::Zero(6, 7);
  gamma(0, 0) = 1.0;
  gamma(0, 5) = -1.0;
  gamma(1, 1) = 1.0;
  gamma(2, 3) = 1.0;
  gamma(3, 2) = 1.0;
  gamma(4, 6) = 1.0;
  gamma(5, 4) = 1.0;
  return validate_triple(t, gamma, basis);
}

}  // namespace kreinrel
