#include "kreinrel/generators.hpp"
#include "kreinrel/io.hpp"
#include "kreinrel/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

using namespace kreinrel;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

const JsonStyle kPrint{2, true, true};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::not_hermitian:
    case ErrorKind::not_involution:
    case ErrorKind::host_mismatch:
      return kInputError;
    default:
      return kRejected;
  }
}

json as_json(const std::string& text) { return json::parse(text); }

json matrix_value(const Matrix& m) { return as_json(matrix_json(m, kPrint)); }

json subspace_value(const Subspace& s) {
  const Matrix b = echelon_basis(s);
  json list = json::array();
  for (Index c = 0; c < b.cols(); ++c) {
    Matrix col = b.col(c).transpose();
    list.push_back(matrix_value(col)[0]);
  }
  return list;
}

json relation_value(const LinearRelation& t) { return subspace_value(t.graph()); }

json complex_value(cplx z) { return matrix_value(Matrix::Constant(1, 1, z))[0][0]; }

void emit(const json& out) { std::cout << pretty_json(out.dump()); }

Document need(const std::string& path, bool relation, bool triple) {
  Document doc = load_document(path);
  if (relation && !doc.relation) throw Error(ErrorKind::input, path + ": no \"relation\" field");
  if (triple && !doc.triple) throw Error(ErrorKind::input, path + ": no \"triple\" field");
  return doc;
}

LinearRelation second_relation(const Document& first, const std::string& path) {
  Document doc = need(path, true, false);
  if (!same_space(first.relation->src(), doc.relation->src())) {
    throw Error(ErrorKind::input, path + ": the relation lives in a different space than the first file");
  }
  return *doc.relation;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("KREINREL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorKind::input, std::string("KREINREL_SEED=\"") + s + "\" is not an unsigned integer");
    }
  }
  return fallback;
}

std::vector<cplx> load_grid(const std::string& spec) {
  if (spec == "default") return default_grid();
  return parse_points(read_file(spec), spec);
}

// ---------------------------------------------------------------- relation

int relation_check(const std::string& path) {
  const LinearRelation t = *need(path, true, false).relation;
  json out;
  out["dim"] = t.src_dim();
  out["graph_dim"] = t.dim();
  out["operator"] = is_operator(t);
  const bool sym = is_symmetric(t);
  out["symmetric"] = sym;
  out["selfadjoint"] = is_selfadjoint(t);
  out["property_p"] = has_property_p(t);
  if (sym) {
    const DefectNumbers dn = defect_numbers(t);
    out["defect_numbers"] = {dn.plus, dn.minus};
    out["simple"] = simple_check(t, default_grid());
  }
  emit(out);
  return sym ? kOk : kRejected;
}

int relation_adjoint(const std::string& path, const std::string& metric) {
  const LinearRelation t = *need(path, true, false).relation;
  const LinearRelation a = adjoint(t, metric == "hilbert" ? Metric::hilbert : Metric::krein);
  std::cout << relation_json(a, kPrint);
  return kOk;
}

int relation_parts(const std::string& path) {
  const RelationParts p = parts(*need(path, true, false).relation);
  json out;
  out["dom"] = subspace_value(p.dom);
  out["ran"] = subspace_value(p.ran);
  out["ker"] = subspace_value(p.ker);
  out["mul"] = subspace_value(p.mul);
  emit(out);
  return kOk;
}

// ---------------------------------------------------------------- ext

int ext_defects(const std::string& path) {
  const DefectNumbers dn = defect_numbers(*need(path, true, false).relation);
  json out;
  out["plus"] = dn.plus;
  out["minus"] = dn.minus;
  out["equal"] = dn.equal();
  emit(out);
  return dn.equal() ? kOk : kRejected;
}

int ext_nclass(const std::string& tpath, const std::string& npath) {
  const Document doc = need(tpath, true, false);
  const NClassCheck c = n_class_check(*doc.relation, second_relation(doc, npath));
  json out;
  out["accepted"] = c.accepted();
  out["in_sigma"] = c.in_sigma;
  out["symmetric"] = c.symmetric;
  out["range_plus"] = c.range_plus;
  out["range_minus"] = c.range_minus;
  out["hyper_maximal"] = c.hyper_maximal;
  if (!c.accepted()) out["failure"] = c.failure();
  emit(out);
  return c.accepted() ? kOk : kRejected;
}

int ext_extend(const std::string& tpath, const std::string& npath) {
  const Document doc = need(tpath, true, false);
  std::cout << relation_json(extend(*doc.relation, second_relation(doc, npath)), kPrint);
  return kOk;
}

int ext_reduce(const std::string& tpath, const std::string& t0path) {
  const Document doc = need(tpath, true, false);
  std::cout << relation_json(reduce(*doc.relation, second_relation(doc, t0path)), kPrint);
  return kOk;
}

int ext_audit(const std::string& tpath, const std::string& npath, std::uint64_t seed) {
  const Document doc = need(tpath, true, false);
  const LinearRelation& t = *doc.relation;
  Rng rng(seed);
  const NWitness w = npath.empty() ? sample_witness(t, rng) : *n_class_check(t, second_relation(doc, npath)).witness;
  const std::vector<cplx> grid = default_grid();
  const PropNAudit a = prop_n_audit(t, w.n);
  const TheoremExReport ex = theorem_ex_check(t, {w}, grid);
  const LemmaOsReport os = lemma_os_check(w, grid);
  const LemmaExNReport exn = lemma_exn_check(t, w.n, grid);
  json out;
  json pn;
  pn["dim_h"] = a.dim_h;
  pn["d"] = a.d;
  pn["n"] = a.n;
  pn["dim_n"] = a.dim_n;
  pn["dim_t"] = a.dim_t;
  pn["tplus_split"] = a.tplus_split;
  pn["sigma_split"] = a.sigma_split;
  pn["sigma_jm"] = a.sigma_jm;
  pn["dom_resolvent_plus"] = a.dom_resolvent_plus;
  pn["dom_resolvent_minus"] = a.dom_resolvent_minus;
  pn["dom_cayley"] = a.dom_cayley;
  pn["dom_hyper_maximal"] = a.dom_hyper_maximal;
  pn["m_direct"] = a.m_direct;
  pn["passed"] = a.passed(1e-8);
  out["proposition_n"] = pn;
  out["n"] = relation_value(w.n);
  out["t0"] = relation_value(w.t0);
  json jex;
  jex["property_p"] = ex.property_p;
  jex["checked"] = ex.checked;
  jex["failures"] = ex.failures;
  out["theorem_ex"] = jex;
  json jos;
  jos["checked"] = os.checked;
  jos["failures"] = os.failures;
  out["lemma_os"] = jos;
  json jexn;
  jexn["property_p"] = exn.property_p;
  jexn["n_operator"] = exn.is_operator;
  jexn["n_standard"] = exn.standard;
  jexn["conclusion_holds"] = exn.conclusion_holds();
  out["lemma_exn"] = jexn;
  emit(out);
  return a.passed(1e-8) && os.failures == 0 ? kOk : kRejected;
}

// ---------------------------------------------------------------- triple

int triple_validate(const std::string& path) {
  const BoundaryTriple tr = *need(path, true, true).triple;
  const InverseBoundaryData inv = inverse_boundary(tr);
  json out;
  out["boundary_dim"] = tr.boundary_dim();
  out["green_residual"] = tr.green_residual() < 1e-12 ? 0.0 : tr.green_residual();
  out["t0"] = relation_value(tr.t0());
  out["t1"] = relation_value(tr.t1());
  out["beta"] = matrix_value(inv.beta);
  emit(out);
  return kOk;
}

int triple_weyl(const std::string& path, const std::string& zs) {
  const BoundaryTriple tr = *need(path, true, true).triple;
  const cplx z = parse_complex(zs);
  const WeylValue w = weyl(tr, z);
  json out;
  out["z"] = complex_value(z);
  out["operator"] = w.operator_form.has_value();
  if (w.operator_form) {
    out["M"] = matrix_value(*w.operator_form);
  } else {
    out["relation"] = relation_value(w.relation);
  }
  emit(out);
  return kOk;
}

int triple_gamma(const std::string& path, const std::string& zs) {
  const BoundaryTriple tr = *need(path, true, true).triple;
  const cplx z = parse_complex(zs);
  json out;
  out["z"] = complex_value(z);
  out["gamma"] = matrix_value(gamma_field(tr, z));
  emit(out);
  return kOk;
}

int triple_inverse(const std::string& path) {
  const BoundaryTriple tr = *need(path, true, true).triple;
  const InverseBoundaryData inv = inverse_boundary(tr);
  json out;
  out["n"] = relation_value(inv.n);
  out["jn"] = subspace_value(inv.jn);
  out["gamma0_inverse"] = matrix_value(inv.g0_inv);
  out["gamma1_inverse"] = matrix_value(inv.g1_inv);
  out["beta"] = matrix_value(inv.beta);
  emit(out);
  return kOk;
}

int triple_transform(const std::string& path, const std::string& kind, double kappa, const std::string& mpath) {
  const BoundaryTriple tr = *need(path, true, true).triple;
  const Index d = tr.boundary_dim();
  BoundaryTriple out;
  if (kind == "beta") {
    out = beta_shift(tr);
  } else if (kind == "transpose") {
    out = transposed(tr);
  } else if (kind == "scale") {
    out = transform(tr, scaling_matrix(d, kappa));
  } else if (kind == "kshift" || kind == "matrix") {
    if (mpath.empty()) throw Error(ErrorKind::input, "--matrix is required for --kind " + kind);
    const Matrix m = parse_matrix(read_file(mpath), mpath);
    out = transform(tr, kind == "kshift" ? k_shift_matrix(m) : m);
  } else {
    throw Error(ErrorKind::input, "unknown transform kind \"" + kind + "\"");
  }
  std::cout << triple_json(out);
  return kOk;
}

// ---------------------------------------------------------------- similarity and suites

int similar(const std::string& apath, const std::string& bpath, const std::string& grid_spec) {
  const BoundaryTriple a = *need(apath, true, true).triple;
  const BoundaryTriple b = *need(bpath, true, true).triple;
  const SimilarityResult r = reconstruct_similarity(a, b, load_grid(grid_spec));
  json out;
  out["similar"] = r.unitary.has_value();
  if (r.witness) {
    out["witness"] = complex_value(*r.witness);
    out["weyl_gap"] = r.witness_gap;
  }
  if (r.unitary) {
    out["U"] = matrix_value(*r.unitary);
    out["final_distance"] = r.final_distance < 1e-12 ? 0.0 : r.final_distance;
    out["w_offdiag"] = r.w_offdiag < 1e-12 ? 0.0 : r.w_offdiag;
    out["omega"] = json::array();
    for (const cplx z : r.omega) out["omega"].push_back(complex_value(z));
  }
  if (!r.notes.empty()) out["notes"] = r.notes;
  emit(out);
  return r.unitary ? kOk : kRejected;
}

int run_report(const std::string& suite, Index trials, std::uint64_t seed, const std::string& format) {
  const std::vector<Report> reports = run_suites(suite, trials, seed);
  std::cout << (format == "json" ? report_json(reports) : report_text(reports));
  for (const Report& r : reports) {
    if (!r.passed()) return kRejected;
  }
  return kOk;
}

int gen_symmetric_cmd(const InstanceSpec& spec) {
  std::cout << relation_json(gen_symmetric(spec));
  return kOk;
}

int gen_triple_cmd(const std::string& path, std::uint64_t seed) {
  const LinearRelation t = *need(path, true, false).relation;
  std::cout << triple_json(gen_triple(t, seed));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear relations, extensions and boundary triples in finite-dimensional Krein spaces"};
  app.require_subcommand(1);
  TolerancePolicy tol;
  app.add_option("--tol-rank-rel", tol.rank_rel, "relative singular value cutoff")->capture_default_str();
  app.add_option("--tol-rank-abs", tol.rank_abs, "absolute singular value floor")->capture_default_str();
  app.add_option("--tol-angle", tol.angle_tol, "largest principal angle counted as equal")->capture_default_str();

  std::function<int()> action;
  std::string file, file2, metric = "krein", zs, kind, mpath, grid = "default", suite = "all", format = "text";
  double kappa = 2.0;
  Index trials = 200;
  std::uint64_t seed = 0;
  bool seed_given = false;
  InstanceSpec spec;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed (default: KREINREL_SEED or 0)")->each([&](const std::string&) {
      seed_given = true;
    });
  };

  CLI::App* rel = app.add_subcommand("relation", "properties of a relation");
  rel->require_subcommand(1);
  CLI::App* rc = rel->add_subcommand("check", "symmetry, defect numbers, simplicity");
  rc->add_option("file", file)->required();
  rc->callback([&] { action = [&] { return relation_check(file); }; });
  CLI::App* ra = rel->add_subcommand("adjoint", "adjoint relation");
  ra->add_option("file", file)->required();
  ra->add_option("--metric", metric)->check(CLI::IsMember({"krein", "hilbert"}))->capture_default_str();
  ra->callback([&] { action = [&] { return relation_adjoint(file, metric); }; });
  CLI::App* rp = rel->add_subcommand("parts", "domain, range, kernel, multivalued part");
  rp->add_option("file", file)->required();
  rp->callback([&] { action = [&] { return relation_parts(file); }; });

  CLI::App* ext = app.add_subcommand("ext", "self-adjoint extensions");
  ext->require_subcommand(1);
  CLI::App* ed = ext->add_subcommand("defects", "defect numbers");
  ed->add_option("file", file)->required();
  ed->callback([&] { action = [&] { return ext_defects(file); }; });
  CLI::App* en = ext->add_subcommand("nclass", "decide N ∈ 𝒩");
  en->add_option("t", file)->required();
  en->add_option("n", file2)->required();
  en->callback([&] { action = [&] { return ext_nclass(file, file2); }; });
  CLI::App* ee = ext->add_subcommand("extend", "T0 = T ⊕ N");
  ee->add_option("t", file)->required();
  ee->add_option("n", file2)->required();
  ee->callback([&] { action = [&] { return ext_extend(file, file2); }; });
  CLI::App* er = ext->add_subcommand("reduce", "N = T0 ∩ T^⊥");
  er->add_option("t", file)->required();
  er->add_option("t0", file2)->required();
  er->callback([&] { action = [&] { return ext_reduce(file, file2); }; });
  CLI::App* eau = ext->add_subcommand("audit", "structure audit of T with a given or sampled N");
  eau->add_option("t", file)->required();
  eau->add_option("n", file2);
  add_seed(eau);
  eau->callback([&] { action = [&] { return ext_audit(file, file2, seed_given ? seed : env_seed(0)); }; });

  CLI::App* tri = app.add_subcommand("triple", "boundary triples");
  tri->require_subcommand(1);
  CLI::App* tv = tri->add_subcommand("validate", "validate and echo T0, T1, β");
  tv->add_option("file", file)->required();
  tv->callback([&] { action = [&] { return triple_validate(file); }; });
  CLI::App* tw = tri->add_subcommand("weyl", "Weyl family M(z)");
  tw->add_option("file", file)->required();
  tw->add_option("--z", zs)->required();
  tw->callback([&] { action = [&] { return triple_weyl(file, zs); }; });
  CLI::App* tg = tri->add_subcommand("gamma", "gamma field γ(z)");
  tg->add_option("file", file)->required();
  tg->add_option("--z", zs)->required();
  tg->callback([&] { action = [&] { return triple_gamma(file, zs); }; });
  CLI::App* ti = tri->add_subcommand("inverse", "Γ0^(-1), Γ1^(-1), β, N and Ĵ(N)");
  ti->add_option("file", file)->required();
  ti->callback([&] { action = [&] { return triple_inverse(file); }; });
  CLI::App* tt = tri->add_subcommand("transform", "apply a boundary unitary");
  tt->add_option("file", file)->required();
  tt->add_option("--kind", kind, "beta, transpose, scale, kshift or matrix")->required();
  tt->add_option("--kappa", kappa)->capture_default_str();
  tt->add_option("--matrix", mpath, "JSON matrix: K for kshift, X for matrix");
  tt->callback([&] { action = [&] { return triple_transform(file, kind, kappa, mpath); }; });

  CLI::App* weyl_cmd = app.add_subcommand("weyl", "same as triple weyl");
  weyl_cmd->add_option("file", file)->required();
  weyl_cmd->add_option("--z", zs)->required();
  weyl_cmd->callback([&] { action = [&] { return triple_weyl(file, zs); }; });

  CLI::App* sim = app.add_subcommand("similar", "reconstruct a similarity or find a witness");
  sim->add_option("a", file)->required();
  sim->add_option("b", file2)->required();
  sim->add_option("--grid", grid, "\"default\" or a JSON list of points")->capture_default_str();
  sim->callback([&] { action = [&] { return similar(file, file2, grid); }; });

  const std::vector<std::string> suites = {"appendix", "extensions", "boundary", "similarity", "all"};
  CLI::App* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite)->check(CLI::IsMember(suites))->capture_default_str();
  ver->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  add_seed(ver);
  ver->callback([&] { action = [&] { return run_report(suite, trials, seed_given ? seed : env_seed(0), "text"); }; });

  CLI::App* rep = app.add_subcommand("report", "run suites and print the full report");
  rep->add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  rep->add_option("--suite", suite)->check(CLI::IsMember(suites))->capture_default_str();
  rep->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  add_seed(rep);
  rep->callback([&] { action = [&] { return run_report(suite, trials, seed_given ? seed : env_seed(0), format); }; });

  CLI::App* gen = app.add_subcommand("gen", "random instances");
  gen->require_subcommand(1);
  CLI::App* gs = gen->add_subcommand("symmetric", "random closed symmetric relation");
  gs->add_option("--dim", spec.dim)->capture_default_str();
  gs->add_option("--p", spec.p)->capture_default_str();
  gs->add_option("--q", spec.q)->capture_default_str();
  gs->add_option("--defect", spec.defect)->capture_default_str();
  gs->add_flag("--simple", spec.require_simple);
  gs->add_flag("--property-p", spec.require_property_p);
  add_seed(gs);
  gs->callback([&] {
    action = [&] {
      spec.seed = seed_given ? seed : env_seed(0);
      return gen_symmetric_cmd(spec);
    };
  });
  CLI::App* gt = gen->add_subcommand("triple", "random boundary triple for the relation in a file");
  gt->add_option("file", file)->required();
  add_seed(gt);
  gt->callback([&] { action = [&] { return gen_triple_cmd(file, seed_given ? seed : env_seed(0)); }; });
  CLI::App* gx = gen->add_subcommand("example", "the four-dimensional example triple");
  gx->callback([&] {
    action = [&] {
      std::cout << triple_json(c4_example_triple(), kPrint);
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    set_tolerance(tol);
  } catch (const Error& e) {
    std::cerr << "kreinrel: " << e.what() << "\n";
    return kInputError;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "kreinrel: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "kreinrel: " << e.what() << "\n";
    return kInputError;
  }
}
