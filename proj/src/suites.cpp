#include <algorithm>
#include <functional>
#include <map>

#include "binfty/driver.hpp"
#include "binfty/hochschild.hpp"
#include "binfty/morphism_complex.hpp"
#include "binfty/representation.hpp"

namespace binfty {

const AlgebraPresentation& Catalog::algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.name == name) return a;
  throw Error(ErrorKind::InvalidInput, "catalog has no algebra '" + name + "'");
}

const AlgebraMorphism& Catalog::morphism(const std::string& name) const {
  for (const auto& f : morphisms)
    if (f.name == name) return f;
  throw Error(ErrorKind::InvalidInput, "catalog has no morphism '" + name + "'");
}

Catalog load_catalog(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::InvalidInput, "no catalog directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Catalog c;
  for (const auto& p : files) {
    if (is_morphism_json(read_json_file(p)))
      c.morphisms.push_back(load_morphism(p));
    else
      c.algebras.push_back(load_algebra(p));
  }
  return c;
}

namespace {

void add_all(Report& r, const std::string& prefix, std::vector<CheckResult> cs) {
  for (auto& c : cs) {
    c.id = prefix + c.id;
    r.add(std::move(c));
  }
}

void add_one(Report& r, const std::string& prefix, CheckResult c) { add_all(r, prefix, {std::move(c)}); }

// A domain error inside body becomes one failed check named id.
void guarded(Report& r, const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    CheckResult c(id, "Error");
    c.note("error", e.what());
    c.fail({id, std::string("raised ") + error_name(e.kind()), "completed", e.what()});
    r.add(std::move(c));
  }
}

// Negative control: passes iff body raises the expected error kind.
CheckResult expect_rejection(const std::string& id, ErrorKind kind, const std::function<void()>& body) {
  CheckResult c(id, error_name(kind));
  c.probes = 1;
  c.note("control", "negative");
  try {
    body();
    c.fail({id, "accepted", std::string("raises ") + error_name(kind), ""});
  } catch (const Error& e) {
    if (e.kind() != kind) c.fail({id, std::string("raised ") + error_name(e.kind()), std::string("raises ") + error_name(kind), e.what()});
  }
  return c;
}

// Negative control on a checker: passes iff some check in cs fails.
CheckResult expect_detected(const std::string& id, const std::string& tag, const std::vector<CheckResult>& cs) {
  CheckResult c(id, tag);
  c.note("control", "negative");
  bool caught = false;
  for (const auto& x : cs) {
    c.probes += x.probes;
    if (!x.passed) {
      if (!caught) c.tag = x.tag;
      caught = true;
      if (x.witness) c.note("caught", x.id + " at " + x.witness->inputs);
    }
  }
  if (!caught) c.fail({id, "all checks passed", "a check fails", ""});
  return c;
}

std::string dims_string(const std::map<int, int>& dims) {
  std::string s;
  for (const auto& [n, d] : dims) s += (s.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(d);
  return s;
}

std::string vec_names(const GradedSpace& S, const Vec& v) { return format_vec(S, v); }

ProbeSet probes_on(const GradedSpace& S, const ProbePlan& plan) { return default_probes(S, plan); }

// Smallest arity cutoff at which Hochschild degree top is computed exactly.
int sound_arity(const AlgebraPresentation& A, int top) { return top + 2 - std::min(0, A.space->min_degree()); }

Vec random_combo(const std::vector<Vec>& pool, ProbeRng& rng) {
  Vec v;
  const int terms = 1 + static_cast<int>(rng.below(3));
  for (int t = 0; t < terms; ++t) {
    long c = static_cast<long>(rng.below(7)) - 3;
    if (c == 0) c = 1;
    v.add(pool[rng.below(pool.size())], c);
  }
  return v;
}

// Random homogeneous element spanned by basis vectors of one degree.
Vec random_homogeneous(const GradedSpace& S, int degree, ProbeRng& rng) {
  std::vector<Vec> pool;
  for (int i = 0; i < S.dim(); ++i)
    if (S.degree(i) == degree) pool.emplace_back(i);
  if (pool.empty()) return {};
  return random_combo(pool, rng);
}

int random_degree(const GradedSpace& S, ProbeRng& rng) { return S.degree(static_cast<int>(rng.below(static_cast<std::size_t>(S.dim())))); }

// b_{1,1} negated, everything else kept.
BInftyPtr flip_b11(const BInftyPtr& B) {
  auto fn = [B](int m, int n, const Word& w) {
    Vec v = B->b(m, n, w);
    if (m == 1 && n == 1) v *= -1;
    return v;
  };
  auto dn = [B](int m, const Word& w) { return B->d(m, w); };
  auto out = std::make_shared<BInfty>(B->name() + "[b11 flipped]", B->carrier_ptr(), B->op_bound(), fn, dn);
  out->set_safety(B->safety());
  return out;
}

AlgebraPresentation non_associative_table() {
  auto s = std::make_shared<GradedSpace>("nonassoc");
  s->add("1", 0);
  s->add("x", 0);
  AlgebraPresentation A;
  A.name = "nonassoc";
  A.space = s;
  A.mult[{1, 1}] = Vec(0);  // x.x = 1, 1.x = x, x.1 = 0
  A.mult[{0, 1}] = Vec(1);
  A.mult[{0, 0}] = Vec(0);
  return A;
}

HomComplexes hom_complexes_of(const AlgebraMorphism& f, const RunConfig& cfg) {
  auto sA = suspend(*f.dom.space, "s" + f.dom.name);
  auto sB = suspend(*f.cod.space, "s" + f.cod.name);
  return make_hom_complexes(sA, sB, cfg.cut.arity, cfg.cut.weight, cfg.cut.filtration);
}

}  // namespace

void hochschild_checks(Report& r, const AlgebraPresentation& A, const RunConfig& cfg, const std::string& prefix) {
  const int N = cfg.cut.arity;
  guarded(r, prefix + "C(" + A.name + ")", [&] {
    auto C = hochschild_binfty(A, N, 0);
    add_all(r, prefix, verify_binfty(*C.structure, probes_on(C.structure->carrier(), cfg.plan(N))));
    const auto [lo, hi] = cfg.degrees;
    CheckResult h("C(" + A.name + ").cohomology", "HochschildCohomology");
    h.note("carrier_dim", std::to_string(C.structure->carrier().dim()));
    try {
      require_sound_window(A, N, hi);
      auto dims = cohomology_dims(hochschild_subcomplex(C), lo, hi);
      h.probes = static_cast<long>(dims.size());
      for (const auto& [n, d] : dims) h.note("HH^" + std::to_string(n), std::to_string(d));
      add_one(r, prefix, h);
      add_all(r, prefix, gerstenhaber_on_cohomology(C, hi));
    } catch (const Error& e) {
      h.note("error", e.what());
      h.fail({"degrees " + std::to_string(lo) + ".." + std::to_string(hi), e.what(),
              "arity " + std::to_string(sound_arity(A, hi)), ""});
      add_one(r, prefix, h);
    }
  });
}

void diagram_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix) {
  const int N = cfg.cut.arity;
  guarded(r, prefix + "D(" + f.name + ")", [&] {
    auto D = diagram_algebra(f);
    add_all(r, prefix, validate_algebra(D.base));
    auto C = hochschild_binfty(D.base, N, 0);
    add_all(r, prefix, verify_binfty(*C.structure, probes_on(C.structure->carrier(), cfg.plan(N))));
    const auto [lo, hi] = cfg.degrees;
    CheckResult h("C(" + D.base.name + ").cohomology", "HochschildCohomology");
    h.note("carrier_dim", std::to_string(C.structure->carrier().dim()));
    try {
      require_sound_window(D.base, N, hi);
      auto dims = cohomology_dims(hochschild_subcomplex(C), lo, hi);
      h.probes = static_cast<long>(dims.size());
      for (const auto& [n, d] : dims) h.note("HH^" + std::to_string(n), std::to_string(d));
    } catch (const Error& e) {
      h.note("error", e.what());
      h.fail({"degrees", e.what(), "arity " + std::to_string(sound_arity(D.base, hi)), ""});
    }
    add_one(r, prefix, h);
  });
}

void tau_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix) {
  const int N = cfg.cut.arity;
  guarded(r, prefix + f.name + ".tau", [&] {
    auto M = morphism_hochschild(f, N);
    auto basis = h_basis(M);
    const GradedSpace& S = *M.carrier.space;
    // H is a subspace: random combinations of its basis stay in it
    CheckResult lin(f.name + ".H.subspace", "SubalgebraH");
    ProbeRng rng(cfg.seed);
    for (const auto& [e, vs] : basis) {
      lin.note("dim H_s" + std::to_string(e), std::to_string(vs.size()));
      for (int k = 0; k < 5 && !vs.empty(); ++k) {
        ++lin.probes;
        Vec v = random_combo(vs, rng);
        if (!h_membership(M, v)) lin.fail(detail::make_witness(*M.psi.space, vec_names(S, v), h_defect(M, v), Vec{}));
      }
    }
    add_one(r, prefix, lin);
    add_all(r, prefix, verify_tau_morphism(M, cfg.plan(N)));
    for (int i = 0; i < S.dim(); ++i)
      if (!h_membership(M, Vec(i))) {
        add_one(r, prefix, expect_rejection(f.name + ".tau.outside-H", ErrorKind::NotInSubalgebraH,
                                            [&] { tau_eval(M, Vec(i)); }));
        break;
      }
  });
}

void mc_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix) {
  const std::string id = "L(" + f.name + ")";
  guarded(r, prefix + id, [&] {
    auto hc = hom_complexes_of(f, cfg);
    auto M = assemble_LAB(hc);
    const BInfty& L = *M.L.total;
    const GradedSpace& S = L.carrier();
    auto t = triple_of(hc, f);
    auto cond = morphism_conditions(hc, t);
    CheckResult ac(id + ".ainfty-data", "AInftyMorphism");
    ac.probes = 3;
    ac.note("Gamma_dim", std::to_string(M.gamma.dim()));
    ac.note("L_dim", std::to_string(S.dim()));
    if (!cond.ok())
      ac.fail({"alpha{alpha}, beta{beta}, psi o alpha^ - beta o psi~", format_vec(*hc.g.hom.space, cond.alpha_square) + " ; " +
                   format_vec(*hc.h.hom.space, cond.beta_square) + " ; " + format_vec(*hc.psi.space, cond.morphism), "0 ; 0 ; 0", ""});
    add_one(r, prefix, ac);
    Vec l0 = ainfty_to_mc(M, t);
    CheckResult mc(id + ".maurer-cartan", "MaurerCartan");
    mc.modulus = "filtration > F";
    mc.probes = 1;
    mc.note("l0", format_vec(S, l0));
    Vec defect = mc_defect(L, l0);
    if (!defect.is_zero()) mc.fail(detail::make_witness(S, "d1(l0) + b11(l0, l0)", defect, Vec{}));
    add_one(r, prefix, mc);
    CheckResult rt(id + ".round-trip", "MCRoundTrip");
    rt.probes = 1;
    auto back = mc_to_ainfty(M, l0);
    if (back.alpha != t.alpha || back.beta != t.beta || back.psi != t.psi)
      rt.fail({"mc_to_ainfty(ainfty_to_mc(t))", format_vec(*hc.psi.space, back.psi), format_vec(*hc.psi.space, t.psi), ""});
    add_one(r, prefix, rt);
    // the Lie differential of l0 squares to zero on the basis of L
    CheckResult sq(id + ".d-l0-squared", "DifferentialSquare");
    sq.modulus = "filtration > F";
    for (int x = 0; x < S.dim(); ++x) {
      ++sq.probes;
      Vec once = lie_differential(L, l0, Vec(x));
      Vec twice = lie_differential(L, l0, once);
      if (!twice.is_zero()) {
        sq.fail(detail::make_witness(S, S.name(x), twice, Vec{}));
        break;
      }
    }
    add_one(r, prefix, sq);
    CheckResult cm(id + ".alpha-beta-commute", "Commutator");
    cm.probes = 1;
    Vec ab = lie_bracket(L, M.L.carrier.embed(1, t.alpha), M.L.carrier.embed(2, t.beta));
    if (!ab.is_zero()) cm.fail(detail::make_witness(S, "[alpha, beta]", ab, Vec{}));
    add_one(r, prefix, cm);
    // planted weight-2 component in Gamma
    const GradedSpace& G = *M.gamma.space;
    for (int g = 0; g < G.dim(); ++g)
      if (G.key(g).size() == 2) {
        Vec planted = l0;
        planted.add(g + M.L.carrier.offsets[0], 1);
        add_one(r, prefix, expect_rejection(id + ".planted-weight-2", ErrorKind::NotAMorphismSolution,
                                            [&] { mc_to_ainfty(M, planted); }));
        break;
      }
  });
}

void extend_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix_) {
  const std::string id = "L(" + f.name + ")";
  const std::string prefix = prefix_ + f.name + "/";
  const int N = cfg.cut.arity;
  guarded(r, prefix + id + ".extensions", [&] {
    auto hc = hom_complexes_of(f, cfg);
    auto M = assemble_LAB(hc);
    ProbeSet ps{M.strata(), cfg.plan(N)};
    auto L = M.L;
    add_all(r, prefix, verify_binfty(*L.total, ps));
    add_one(r, prefix, check_short_exact(L));
    add_all(r, prefix, verify_morphism(L.include, probes_on(L.sub->carrier(), cfg.plan(N))));
    add_all(r, prefix, verify_morphism(L.project, ps));
    add_one(r, prefix, compare_structures(*L.total, *final_structure(M), ps, id + "=explicit-families"));
    // one-sided extensions and the two-step composite
    for (const ActionData* a : {&M.left_gamma, &M.right_gamma}) {
      auto E = extend_by_algebra(*a, M.gamma);
      std::vector<std::vector<int>> strata(2);
      for (int x = 0; x < E.carrier.space->dim(); ++x) strata[static_cast<std::size_t>(E.carrier.tag(x))].push_back(x);
      ProbeSet eps{strata, cfg.plan(N)};
      add_all(r, prefix, verify_binfty(*E.total, eps));
      add_one(r, prefix, check_short_exact(E));
      add_all(r, prefix, verify_morphism(E.include, probes_on(E.sub->carrier(), cfg.plan(N))));
      add_all(r, prefix, verify_morphism(E.project, eps));
    }
    auto two = extend_two_step(M.left_gamma, M.right_gamma, M.gamma);
    add_all(r, prefix, verify_binfty(*two.total, ps));
    add_one(r, prefix, check_short_exact(two));
    add_one(r, prefix, compare_structures(*L.total, *two.total, ps, id + "=two-step"));
  });
}

void cobar_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix_) {
  const std::string prefix = prefix_ + f.name + "/";
  const std::string id = "Gamma(" + f.name + ")";
  const int N = cfg.cut.arity;
  guarded(r, prefix + id, [&] {
    auto hc = hom_complexes_of(f, cfg);
    auto M = assemble_LAB(hc);
    auto plan = cfg.plan(N);
    for (const ActionData* a : {&M.left_tc, &M.right_tc}) add_all(r, prefix, verify_action(*a, default_action_probes(*a, plan)));
    for (const ActionData* a : {&M.left_gamma, &M.right_gamma}) {
      auto ps = default_action_probes(*a, plan);
      add_all(r, prefix, verify_action(*a, ps));
      add_one(r, prefix, check_fd2(*a, *hc.tc, ps));
    }
    add_one(r, prefix, check_commutation(M.left_gamma, M.right_gamma, default_action_probes(M.left_gamma, plan),
                                         {full_pool(M.right_gamma.actor()->carrier())}));
  });
}

void cohomology_compare_checks(Report& r, const AlgebraMorphism& f, const RunConfig& cfg, const std::string& prefix) {
  const int N = cfg.cut.arity;
  guarded(r, prefix + f.name + ".cohomology", [&] {
    auto M = morphism_hochschild(f, N);
    const auto [lo, hi] = cfg.degrees;
    require_sound_window(M.D.base, N, hi);
    auto h = cohomology_dims(h_subcomplex(M), lo, hi);
    auto d = cohomology_dims(hochschild_subcomplex(M.CD), lo, hi);
    for (int n = lo; n <= hi; ++n) {
      CheckResult c(f.name + ".H^" + std::to_string(n), "CohomologyComparison");
      c.probes = 1;
      c.note("H-route", std::to_string(h[n]));
      c.note("HH(D)", std::to_string(d[n]));
      if (h[n] != d[n]) c.fail({"degree " + std::to_string(n), std::to_string(h[n]), std::to_string(d[n]), ""});
      add_one(r, prefix, c);
    }
  });
}

namespace {

// Operator algebras and Hochschild structures of every catalog algebra.
void suite_binfty(Report& r, const Catalog& cat, const RunConfig& cfg) {
  const int N = cfg.cut.arity;
  const std::string pre = "binfty/";
  for (const auto& A : cat.algebras) {
    guarded(r, pre + A.name, [&] {
      auto sA = suspend(*A.space, "s" + A.name);
      auto C = hochschild_binfty(A, N);
      add_all(r, pre, verify_binfty(*C.structure, probes_on(C.structure->carrier(), cfg.plan(N))));
      auto C0 = hochschild_binfty(A, N, 0);
      add_all(r, pre + "with-constants/", verify_binfty(*C0.structure, probes_on(C0.structure->carrier(), cfg.plan(N))));
      for (auto side : {OperatorSide::endo, OperatorSide::coendo}) {
        auto E = build_operator_binfty(sA, side, N);
        add_all(r, pre, verify_binfty(*E.structure, probes_on(E.structure->carrier(), cfg.plan(N))));
      }
      // the commutator of b_{1,1} is a graded Lie bracket of degree 0 on s-level cochains
      const BInfty& B = *C.structure;
      const GradedSpace& S = B.carrier();
      ProbeRng rng(cfg.seed + 17);
      CheckResult anti(C.structure->name() + ".bracket.antisymmetric", "BracketAntisymmetric");
      CheckResult jac(C.structure->name() + ".bracket.jacobi", "Jacobi");
      for (long k = 0; k < std::min<long>(cfg.samples, 50); ++k) {
        const int ex = random_degree(S, rng), ey = random_degree(S, rng), ez = random_degree(S, rng);
        Vec x = random_homogeneous(S, ex, rng), y = random_homogeneous(S, ey, rng), z = random_homogeneous(S, ez, rng);
        const std::string in = "(" + format_vec(S, x) + ", " + format_vec(S, y) + ", " + format_vec(S, z) + ")";
        ++anti.probes;
        Vec a = lie_bracket(B, x, y);
        a.add(lie_bracket(B, y, x), koszul_pair(ex, ey));
        if (!a.is_zero()) anti.fail(detail::make_witness(S, in, a, Vec{}));
        ++jac.probes;
        Vec j = lie_bracket(B, x, lie_bracket(B, y, z));
        j *= koszul_pair(ex, ez);
        j.add(lie_bracket(B, y, lie_bracket(B, z, x)), koszul_pair(ey, ex));
        j.add(lie_bracket(B, z, lie_bracket(B, x, y)), koszul_pair(ez, ey));
        if (!j.is_zero()) jac.fail(detail::make_witness(S, in, j, Vec{}));
      }
      add_one(r, pre, anti);
      add_one(r, pre, jac);
    });
  }
  // flipping the sign of b_{1,1} on a Hochschild structure must be caught
  guarded(r, pre + "control", [&] {
    const auto& A = cat.algebra("dual");
    auto C = hochschild_binfty(A, N, 0);
    auto bad = flip_b11(C.structure);
    add_one(r, pre, expect_detected(bad->name() + ".detected", "Associativity",
                                    verify_binfty(*bad, probes_on(bad->carrier(), cfg.plan(N)))));
  });
}

// Deformation by Maurer-Cartan elements of the undeformed operator algebras.
void suite_deform(Report& r, const Catalog& cat, const RunConfig& cfg) {
  const int N = cfg.cut.arity;
  const std::string pre = "deform/";
  for (const auto& A : cat.algebras) {
    guarded(r, pre + A.name, [&] {
      auto sA = suspend(*A.space, "s" + A.name);
      auto E = build_operator_binfty(sA, OperatorSide::endo, N, std::nullopt, 0);
      Vec mc = s_level_structure(A, E.hom);
      // the MC equation is homogeneous quadratic here (d = 0), so 2 b0 is MC too
      for (int scale : {1, 2}) {
        Vec b0 = mc;
        b0 *= scale;
        const std::string id = E.structure->name() + (scale == 1 ? "+b0" : "+2b0");
        CheckResult c(id + ".maurer-cartan", "MaurerCartan");
        c.probes = 1;
        Vec defect = mc_defect(*E.structure, b0);
        if (!defect.is_zero()) c.fail(detail::make_witness(E.structure->carrier(), format_vec(E.structure->carrier(), b0), defect, Vec{}));
        add_one(r, pre, c);
        auto D = deform_mc(E.structure, b0, id);
        add_all(r, pre, verify_binfty(*D, probes_on(D->carrier(), cfg.plan(N))));
      }
    });
  }
  guarded(r, pre + "control", [&] {
    auto bad = non_associative_table();
    auto sA = suspend(*bad.space, "s" + bad.name);
    auto E = build_operator_binfty(sA, OperatorSide::endo, N, std::nullopt, 0);
    Vec b0 = s_level_structure(bad, E.hom);
    add_one(r, pre, expect_rejection("E(s" + bad.name + ").not-maurer-cartan", ErrorKind::NotMaurerCartan,
                                     [&] { deform_mc(E.structure, b0); }));
  });
}

const std::vector<std::string> kExtensionMorphisms{"id_k", "unit_k_dual", "unit_k_z2", "unit_k_x3", "id_dual"};

// Negative controls on k -> dual numbers, where every sign and product is
// reachable inside the default cutoffs.
MorphismComplexLAB control_complex(const Catalog& cat, const RunConfig& cfg) {
  return assemble_LAB(hom_complexes_of(cat.morphism("unit_k_dual"), cfg));
}

void suite_extensions(Report& r, const Catalog& cat, const RunConfig& cfg) {
  for (const auto& n : kExtensionMorphisms) extend_checks(r, cat.morphism(n), cfg, "extensions/");
  guarded(r, "extensions/control", [&] {
    auto M = control_complex(cat, cfg);
    // doubling single actor letters on products breaks the product rule
    ActionData lg = M.left_gamma;
    SpacePtr G = M.gamma.space;
    ActionData bent(lg.name() + "[scaled]", Side::left, ActionKind::algebra, lg.actor(), lg.target(), lg.max_len(),
                    [lg, G](const Word& bs, int x) {
                      Vec v = lg.apply(bs, x);
                      if (bs.size() == 1 && G->key(x).size() >= 2) v *= 2;
                      return v;
                    });
    auto broken = extend_two_sided(bent, M.right_gamma, M.gamma, nullptr, {}, "L-broken");
    add_one(r, "extensions/", expect_detected("L-broken.detected", "Leibnitz",
                                              verify_binfty(*broken.total, ProbeSet{M.strata(), cfg.plan(cfg.cut.arity)})));
  });
}

void suite_cobar(Report& r, const Catalog& cat, const RunConfig& cfg) {
  for (const auto& n : kExtensionMorphisms) cobar_checks(r, cat.morphism(n), cfg, "cobar/");
  guarded(r, "cobar/control", [&] {
    auto M = control_complex(cat, cfg);
    ActionCheckOptions no_sign;
    no_sign.drop_algebra_sign = true;
    auto dropped = verify_action(M.left_gamma, default_action_probes(M.left_gamma, cfg.plan(cfg.cut.arity)), no_sign);
    add_one(r, "cobar/", expect_detected("Omega(h-left).unsigned-product-rule.detected", "AlgebraAction", dropped));
  });
  // the canonical action of C(A) on T^c(sA), through cobar and back through bar
  const int N = std::min(cfg.cut.arity, 3);
  const std::string pre = "cobar/";
  for (const auto& A : cat.algebras) {
    if (A.dim() > 2) continue;
    guarded(r, pre + A.name, [&] {
      auto C = hochschild_binfty(A, N);
      HomSpace hom = C.endo.hom;
      Vec mc = C.mc;
      auto coder = [hom, mc](const Word& w) {
        Tensor t;
        for (const auto& [e, c] : mc) t.add(endo_action_on_word(hom, Word{e}, w), c);
        return t;
      };
      auto T = tensor_coalgebra_target(C.sA, words_up_to(*C.sA, N), "Tc(s" + A.name + ")", coder);
      OperatorAlgebra Ed{OperatorSide::endo, hom, C.structure};
      auto plan = cfg.plan(N);
      auto act = canonical_action(Ed, T, N);
      add_all(r, pre, verify_action(act, default_action_probes(act, plan)));
      CobarCutoff cc;
      cc.max_weight = 2;
      auto om = cobar_transport(act, cc);
      auto ops = default_action_probes(om, plan);
      add_all(r, pre, verify_action(om, ops));
      add_one(r, pre, check_fd2(om, *T, ops));
      auto bt = bar_transport(om, 2);
      add_all(r, pre, verify_action(bt, default_action_probes(bt, plan)));
    });
  }
}

// Degree-preserving automorphism I + n of a random graded space, n strictly
// upper triangular inside each degree; the inverse is the finite series.
struct RandomAutomorphism {
  SpacePtr W;
  std::vector<std::vector<Rational>> phi, inv;
};

RandomAutomorphism random_automorphism(ProbeRng& rng, const std::string& label) {
  auto W = std::make_shared<GradedSpace>(label);
  const int dim = 2;
  for (int i = 0; i < dim; ++i) W->add("w" + std::to_string(i), static_cast<int>(rng.below(3)) - 1);
  const auto n = static_cast<std::size_t>(dim);
  std::vector<std::vector<Rational>> nil(n, std::vector<Rational>(n, 0)), id(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    id[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j)
      if (W->degree(static_cast<int>(i)) == W->degree(static_cast<int>(j)))
        nil[i][j] = Rational(static_cast<long>(rng.below(5)) - 2, 1 + static_cast<long>(rng.below(2)));
  }
  auto mul = [n](const auto& a, const auto& b) {
    std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  // U = I + nil, U^-1 = sum (-nil)^k; phi = diag(c) U
  auto U = id, Uinv = id, power = id;
  for (std::size_t k = 1; k < n; ++k) {
    power = mul(power, nil);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (k == 1) U[i][j] += nil[i][j];
        Uinv[i][j] += (k % 2 ? -1 : 1) * power[i][j];
      }
  }
  static const Rational scales[] = {Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(-3)};
  std::vector<Rational> c(n);
  for (auto& x : c) x = scales[rng.below(5)];
  RandomAutomorphism out{W, U, Uinv};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.phi[i][j] = c[i] * U[i][j];
      out.inv[i][j] = Uinv[i][j] / c[j];
    }
  return out;
}

// phi o e o (phi^-1)^(x)m for endo keys {out, in..}, and
// (phi)^(x)m o e o phi^-1 for coendo keys {in, out..}.
Vec conjugate(const HomSpace& H, OperatorSide side, const RandomAutomorphism& g, int e) {
  const Key& k = H.space->key(e);
  const auto n = static_cast<std::size_t>(g.W->dim());
  Vec out;
  std::vector<Key> keys{Key{}};
  std::vector<Rational> coeffs{1};
  for (std::size_t pos = 0; pos < k.size(); ++pos) {
    std::vector<Key> nk;
    std::vector<Rational> nc;
    const bool forward = (side == OperatorSide::endo) == (pos == 0);
    for (std::size_t t = 0; t < keys.size(); ++t)
      for (std::size_t i = 0; i < n; ++i) {
        const auto src = static_cast<std::size_t>(k[pos]);
        Rational c = forward ? g.phi[i][src] : g.inv[src][i];
        if (c == 0) continue;
        Key kk = keys[t];
        kk.push_back(static_cast<int>(i));
        nk.push_back(std::move(kk));
        nc.push_back(coeffs[t] * c);
      }
    keys = std::move(nk);
    coeffs = std::move(nc);
  }
  for (std::size_t t = 0; t < keys.size(); ++t)
    if (auto i = H.space->find(keys[t])) out.add(*i, coeffs[t]);
  return out;
}

// Strict B-infinity automorphisms of E(W) and E'(W) by conjugation, as
// actions on T^c(W) and T(W); both round trips are checked on all probes.
void suite_representation(Report& r, const Catalog&, const RunConfig& cfg) {
  const int N = 3;
  const std::string pre = "representation/";
  for (int k = 0; k < 25; ++k) {
    const std::string lab = "W" + std::to_string(k);
    guarded(r, pre + lab, [&] {
      ProbeRng rng(cfg.seed * 7919 + static_cast<std::uint64_t>(k));
      auto g = random_automorphism(rng, lab);
      const OperatorSide side = k % 2 == 0 ? OperatorSide::endo : OperatorSide::coendo;
      auto E = build_operator_binfty(g.W, side, N);
      const HomSpace H = E.hom;
      BInftyMorphism mu{"conj(" + lab + ")", E.structure, E.structure, [H, side, g](const Word& w) {
                          return w.size() == 1 ? conjugate(H, side, g, w[0]) : Vec{};
                        }};
      auto words = words_up_to(*g.W, N);
      auto T = side == OperatorSide::endo ? tensor_coalgebra_target(g.W, words, "Tc(" + lab + ")")
                                          : tensor_algebra_target(g.W, words, "T(" + lab + ")");
      auto plan = cfg.plan(N);
      plan.seed = cfg.seed + static_cast<std::uint64_t>(k);
      auto ps = probes_on(E.structure->carrier(), plan);
      add_all(r, pre, verify_morphism(mu, ps));
      auto act = morphism_to_action(mu, E, T, N);
      auto aps = default_action_probes(act, plan);
      add_all(r, pre, verify_action(act, aps));
      auto back = action_to_morphism(act, E);
      CheckResult m2m(mu.name + ".morphism-round-trip", "RepresentationRoundTrip");
      ProbeRng prng(plan.seed);
      for (int len = 1; len <= N; ++len)
        for (const Word& w : probe_tuples(ps.strata, len, plan, prng)) {
          ++m2m.probes;
          Vec a = mu.component(w), b = back.component(w);
          if (a != b) {
            m2m.fail(detail::make_witness(E.structure->carrier(), witness_inputs(E.structure->carrier(), w, {}), b, a));
            break;
          }
        }
      add_one(r, pre, m2m);
      auto again = morphism_to_action(back, E, T, N);
      CheckResult a2a(mu.name + ".action-round-trip", "RepresentationRoundTrip");
      ProbeRng arng(plan.seed);
      for (int len = 1; len <= N; ++len)
        for (const auto& p : detail::action_probes(aps.actor_strata, aps.targets, len, plan, arng)) {
          ++a2a.probes;
          Vec a = act.apply(p.bs, p.x), b = again.apply(p.bs, p.x);
          if (a != b) {
            a2a.fail(detail::make_witness(*T->space, detail::action_inputs(E.structure->carrier(), p.bs, {}, T->space->name(p.x)), b, a));
            break;
          }
        }
      add_one(r, pre, a2a);
    });
  }
}

void suite_morphism(Report& r, const Catalog& cat, const RunConfig& cfg) {
  for (const auto& f : cat.morphisms) mc_checks(r, f, cfg, "morphism/");
}

void suite_tau(Report& r, const Catalog& cat, const RunConfig& cfg) {
  const std::string pre = "tau/";
  for (const auto& n : {"unit_k_dual", "id_dual"}) tau_checks(r, cat.morphism(n), cfg, pre);
  const auto& f = cat.morphism("x3_to_dual");
  add_one(r, pre, expect_rejection(f.name + ".tau.non-injective", ErrorKind::InjectivityRequired, [&] {
            auto M = morphism_hochschild(f, std::min(cfg.cut.arity, 2));
            verify_tau_morphism(M, cfg.plan(2));
          }));
}

void suite_cohomology(Report& r, const Catalog& cat, const RunConfig& cfg) {
  for (const auto& n : {"unit_k_dual", "id_dual"}) cohomology_compare_checks(r, cat.morphism(n), cfg, "cohomology/");
}

// Degrees 0..2 need arity 4 (5 for algebras with a degree -1 element); the
// cutoff is raised per algebra and echoed in the check info.
void suite_gerstenhaber(Report& r, const Catalog& cat, const RunConfig& cfg) {
  const std::string pre = "gerstenhaber/";
  const int top = cfg.degrees.second;
  for (const auto& A : cat.algebras) {
    guarded(r, pre + A.name, [&] {
      const int N = std::max(cfg.cut.arity, sound_arity(A, top));
      auto C = hochschild_binfty(A, N, 0);
      auto dims = cohomology_dims(hochschild_subcomplex(C), 0, top);
      for (auto c : gerstenhaber_on_cohomology(C, top)) {
        c.note("N", std::to_string(N));
        c.note("HH", dims_string(dims));
        add_one(r, pre, c);
      }
    });
  }
}

using SuiteFn = void (*)(Report&, const Catalog&, const RunConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"binfty", suite_binfty},         {"deform", suite_deform},
      {"extensions", suite_extensions}, {"cobar", suite_cobar},
      {"representation", suite_representation}, {"morphism", suite_morphism},
      {"tau", suite_tau},               {"cohomology", suite_cohomology},
      {"gerstenhaber", suite_gerstenhaber},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, f] : suites()) n.push_back(k);
    return n;
  }();
  return names;
}

void run_suite(Report& r, const std::string& name, const Catalog& cat, const RunConfig& cfg) {
  for (const auto& [k, f] : suites())
    if (name == "all" || name == k) f(r, cat, cfg);
}

}  // namespace binfty
