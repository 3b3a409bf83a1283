// One PASS/FAIL line per acceptance criterion. Usage: kreinrel_acceptance <1..9 | all>.
#include "kreinrel/suites.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace kreinrel;
namespace c4 = kreinrel::testing::c4;

constexpr std::uint64_t kSeed = 42;

// Pinned thresholds.
constexpr double kGoldenDistance = 1e-10;
constexpr double kGoldenBeta = 1e-12;
constexpr double kGoldenSeconds = 1.0;
constexpr double kRoundtrip = 1e-8;
constexpr double kRoundtripSeconds = 30.0;
constexpr double kPropN = 1e-8;
constexpr double kGreen = 1e-10;
constexpr double kWeylSymmetry = 1e-8;
constexpr double kBetaShift = 1e-8;
constexpr double kVos = 1e-9;
constexpr double kReconstruction = 1e-7;
constexpr double kWOffdiag = 1e-8;
constexpr double kAppendix = 1e-8;
constexpr double kAllSuitesSeconds = 300.0;

constexpr Index kRoundtripInstances = 200;
constexpr Index kBoundaryInstances = 200;
constexpr Index kVosPairs = 100;
constexpr Index kWlInstances = 100;
constexpr Index kReconstructions = 50;
constexpr Index kTheoremExInstances = 100;
constexpr Index kAppendixTrials = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// A check evaluated at least `evaluations` times (and at least once) with no failures and max residual below `limit`.
void require_check(Outcome& o, const Report& r, const std::string& name, double limit, Index evaluations = 0) {
  const CheckStats* s = r.find(name);
  if (!s) {
    o.require(false, name + ": missing from the " + r.suite + " report");
    return;
  }
  const std::string counts = std::to_string(s->failures) + "/" + std::to_string(s->evaluations);
  o.require(s->failures == 0, name + ": " + counts + " failures");
  o.require(s->evaluations >= std::max<Index>(1, evaluations),
            name + ": " + std::to_string(s->evaluations) + " evaluations, expected " + std::to_string(evaluations));
  if (limit > 0) o.require(s->max_residual < limit, name + fmt(": max residual %.3e", s->max_residual) + fmt(" >= %.0e", limit));
  o.summary += (o.summary.empty() ? "" : ", ") + name + " " + counts + fmt(" max %.1e", s->max_residual);
}

double operator_graph_distance(const Matrix& a, const Matrix& b) {
  auto graph = [](const Matrix& g) {
    Matrix m(g.cols() + g.rows(), g.cols());
    m << Matrix::Identity(g.cols(), g.cols()), g;
    return span(m);
  };
  return distance(graph(a), graph(b));
}

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const LinearRelation t = c4::t();
  const LinearRelation tp = adjoint(t);
  const BoundaryTriple tr = c4::triple();
  const InverseBoundaryData inv = inverse_boundary(tr);
  const std::vector<std::pair<std::string, double>> distances = {
      {"T+", distance(tp.graph(), c4::tplus())},
      {"N_i(T+)", distance(eigenspace(tp, cplx(0, 1)), c4::defect(cplx(0, 1)))},
      {"N_1+2i(T+)", distance(eigenspace(tp, cplx(1, 2)), c4::defect(cplx(1, 2)))},
      {"T0", distance(tr.t0().graph(), c4::t0())},
      {"T1", distance(tr.t1().graph(), c4::t1())},
      {"N", distance(inv.n.graph(), c4::n())},
      {"J(N)", distance(inv.jn, c4::jn())},
      {"Gamma0^-1", operator_graph_distance(inv.g0_inv, c4::gamma0_inverse())},
      {"Gamma1^-1", operator_graph_distance(inv.g1_inv, c4::gamma1_inverse())},
  };
  const double beta = max_abs(inv.beta);
  const double elapsed = seconds_since(start);
  double worst = 0;
  for (const auto& [name, d] : distances) {
    o.require(d < kGoldenDistance, name + fmt(": distance %.3e", d));
    worst = std::max(worst, d);
  }
  o.require(beta <= kGoldenBeta, fmt("beta: max |entry| %.3e", beta));
  o.require(elapsed < kGoldenSeconds, fmt("runtime %.3f s", elapsed));
  o.summary = fmt("max distance %.1e", worst) + fmt(" (< %.0e)", kGoldenDistance) + fmt(", |beta| %.1e", beta) +
              fmt(" (<= %.0e)", kGoldenBeta) + fmt(", %.3f s", elapsed) + fmt(" (< %.0f s)", kGoldenSeconds);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = Clock::now();
  const Report r = extensions_suite(kRoundtripInstances, kSeed);
  const double elapsed = seconds_since(start);
  require_check(o, r, "roundtrip.reduce_extend", kRoundtrip, kRoundtripInstances);
  require_check(o, r, "roundtrip.extend_reduce", kRoundtrip, kRoundtripInstances);
  o.require(elapsed < kRoundtripSeconds, fmt("runtime %.1f s", elapsed));
  o.summary += fmt(", %.1f s", elapsed);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Report r = extensions_suite(kRoundtripInstances, kSeed);
  require_check(o, r, "propN", kPropN, kRoundtripInstances);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Report r = boundary_suite(kBoundaryInstances, kSeed);
  require_check(o, r, "green", kGreen, kBoundaryInstances);
  require_check(o, r, "weyl_symmetry", kWeylSymmetry);
  require_check(o, r, "beta_shift", kBetaShift);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Report r = similarity_suite(kVosPairs, kSeed);
  require_check(o, r, "vos.operator_part", kVos, kVosPairs);
  require_check(o, r, "vos.sigma_gram", kVos, kVosPairs);
  require_check(o, r, "vos.llp", kVos, kVosPairs);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Report r = similarity_suite(kWlInstances, kSeed);
  require_check(o, r, "wl.planted", 0, kWlInstances);
  require_check(o, r, "wl.two_route", 0);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Report r = similarity_suite(2 * kReconstructions, kSeed);
  require_check(o, r, "similarity.reconstruct", kReconstruction, kReconstructions);
  require_check(o, r, "similarity.w_diagonal", kWOffdiag, kReconstructions);
  require_check(o, r, "similarity.negative_control", 0, kReconstructions);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Report r = extensions_suite(2 * kTheoremExInstances, kSeed);
  require_check(o, r, "theorem_ex", 0, kTheoremExInstances);
  require_check(o, r, "lemma_os", 0, kTheoremExInstances);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<Report> all = run_suites("all", kAppendixTrials, kSeed);
  const double elapsed = seconds_since(start);
  const Report& r = all.front();
  for (const char* name : {"eqGH.a", "eqGH.b.i", "eqGH.b.ii", "neutral.projection_form", "O.a", "O.b",
                           "O.b.characterization", "O.b.hgl0", "O.c.orthogonal", "O.c", "sfN.identity", "sfN",
                           "P3.mul_adjoint", "P3"}) {
    require_check(o, r, name, kAppendix);
  }
  o.require(elapsed < kAllSuitesSeconds, fmt("verify --suite all: %.1f s", elapsed));
  o.summary += fmt(", all suites %.1f s", elapsed);
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"C4 golden", criterion1},
    {"extension roundtrip", criterion2},
    {"N-class audit", criterion3},
    {"Green and Weyl identities", criterion4},
    {"(V0)s checks", criterion5},
    {"Weyl equality two routes", criterion6},
    {"similarity reconstruction", criterion7},
    {"resolvent sets on property (P) instances", criterion8},
    {"appendix suites", criterion9},
};

bool run(std::size_t k) {
  Outcome o;
  try {
    o = kCriteria[k].second();
  } catch (const std::exception& e) {
    o.pass = false;
    o.details.push_back(std::string("exception: ") + e.what());
  }
  std::printf("criterion %zu [%s]: %s  %s\n", k + 1, kCriteria[k].first, o.pass ? "PASS" : "FAIL", o.summary.c_str());
  for (const std::string& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  if (which == "all") {
    for (std::size_t k = 0; k < kCriteria.size(); ++k) ok = run(k) && ok;
    return ok ? 0 : 1;
  }
  const int k = std::atoi(which.c_str());
  if (k < 1 || k > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "usage: %s <1..%zu | all>\n", argv[0], kCriteria.size());
    return 2;
  }
  return run(static_cast<std::size_t>(k - 1)) ? 0 : 1;
}
