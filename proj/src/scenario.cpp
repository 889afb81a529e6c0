#include "gmalab/scenario.hpp"

#include <future>

namespace gmalab {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& ctx, const std::string& msg) {
  fail(errc::bad_scenario, ctx + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) schema_fail(ctx, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_of(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) schema_fail(ctx, "expected an integer");
  return j.get<std::int64_t>();
}

std::string string_of(const json& j, const std::string& ctx) {
  if (!j.is_string()) schema_fail(ctx, "expected a string");
  return j.get<std::string>();
}

BaseRing parse_ring(const json& j, const std::string& ctx) {
  long long p = int_of(field(j, "p", ctx), ctx + ".p");
  int e = (int)int_of(field(j, "e", ctx), ctx + ".e");
  return BaseRing::make(p, e);
}

LocalAlgebra parse_algebra(const json& j, const std::string& ctx) {
  BaseRing O = parse_ring(j, ctx);
  std::string type = j.contains("type") ? string_of(j.at("type"), ctx + ".type") : "base";
  if (type == "base") return LocalAlgebra::base(O);
  if (type == "monomial")
    return LocalAlgebra::monomial(O, (int)int_of(field(j, "k", ctx), ctx + ".k"));
  if (type == "quadratic") {
    std::int64_t a = j.contains("a") ? int_of(j.at("a"), ctx + ".a") : 0;
    std::int64_t b = j.contains("b") ? int_of(j.at("b"), ctx + ".b") : 0;
    int xord = j.contains("xord") ? (int)int_of(j.at("xord"), ctx + ".xord") : O.e;
    return LocalAlgebra::quadratic(O, a, b, xord);
  }
  if (type == "square_zero_pair") return LocalAlgebra::square_zero_pair(O);
  schema_fail(ctx, "unknown algebra type " + type);
}

FiniteGroup parse_group(const json& j, const std::string& ctx) {
  if (j.is_string()) return named_group(j.get<std::string>());
  if (j.is_object() && j.contains("name"))
    return named_group(string_of(j.at("name"), ctx + ".name"));
  if (j.is_object() && j.contains("table")) {
    const json& t = j.at("table");
    if (!t.is_array()) schema_fail(ctx, "table must be an array of rows");
    std::vector<std::vector<int>> table;
    for (const json& row : t) {
      std::vector<int> r;
      for (const json& x : row) r.push_back((int)int_of(x, ctx + ".table"));
      table.push_back(std::move(r));
    }
    return FiniteGroup::from_table(std::move(table));
  }
  schema_fail(ctx, "group must be a name or {\"table\": ...}");
}

Vec parse_entry(const json& j, const LocalAlgebra& A, const std::string& ctx) {
  if (j.is_number_integer()) return A.scalar(j.get<std::int64_t>());
  if (j.is_array()) {
    if (j.size() != A.dim()) schema_fail(ctx, "entry has the wrong coordinate count");
    Vec v;
    for (const json& x : j) v.push_back(int_of(x, ctx));
    return A.shape.reduce(v);
  }
  schema_fail(ctx, "entry must be an integer or a coordinate array");
}

AMat parse_amat(const json& j, const LocalAlgebra& A, std::size_t n, const std::string& ctx) {
  if (!j.is_array() || j.size() != n) schema_fail(ctx, "matrix must have n rows");
  AMat M(n, A.dim());
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != n) schema_fail(ctx, "matrix row has the wrong width");
    for (std::size_t c = 0; c < n; ++c) M.at(r, c) = parse_entry(row.at(c), A, ctx);
  }
  return M;
}

struct RepSpec {
  GroupRep rho;
  std::optional<Involution> tau;
};

RepSpec parse_rep(const json& j, const std::string& ctx) {
  if (j.contains("preset")) {
    std::string family = string_of(j.at("preset"), ctx + ".preset");
    if (family == "s3_standard" || family == "q8_standard") {
      BaseRing O = parse_ring(j, ctx);
      GroupRep rho = family[0] == 's' ? s3_standard_rep(O) : q8_standard_rep(O);
      return {std::move(rho), std::nullopt};
    }
    if (family == "triangular") {
      std::string gname = string_of(field(j, "group", ctx), ctx + ".group");
      long long p = int_of(field(j, "p", ctx), ctx + ".p");
      std::size_t ai = (std::size_t)int_of(field(j, "algebra", ctx), ctx + ".algebra");
      std::size_t idx = (std::size_t)int_of(field(j, "index", ctx), ctx + ".index");
      std::vector<LocalAlgebra> algs = algebra_catalog(p);
      if (ai >= algs.size()) schema_fail(ctx, "algebra index out of range");
      std::vector<TriangularInstance> pool = triangular_instances(gname, algs[ai], 3);
      if (idx >= pool.size())
        schema_fail(ctx, "instance index out of range (" + std::to_string(pool.size()) +
                             " available)");
      return {pool[idx].rho, pool[idx].tau};
    }
    schema_fail(ctx, "unknown preset " + family);
  }
  FiniteGroup G = parse_group(field(j, "group", ctx), ctx + ".group");
  LocalAlgebra A = parse_algebra(field(j, "algebra", ctx), ctx + ".algebra");
  const json& mats = field(j, "mats", ctx);
  if (!mats.is_array() || mats.size() != G.n)
    schema_fail(ctx, "need one matrix per group element, in table order");
  if (mats.empty() || !mats.at(0).is_array()) schema_fail(ctx, "matrices must be arrays");
  std::size_t n = mats.at(0).size();
  std::vector<AMat> ms;
  for (std::size_t g = 0; g < G.n; ++g)
    ms.push_back(parse_amat(mats.at(g), A, n, ctx + ".mats[" + std::to_string(g) + "]"));
  return {GroupRep::from_map(std::move(G), std::move(A), std::move(ms)), std::nullopt};
}

std::vector<LocalCondition> parse_conditions(const json& sc, const std::string& ctx) {
  std::vector<LocalCondition> out;
  if (!sc.contains("conditions")) return out;
  const json& arr = sc.at("conditions");
  if (!arr.is_array()) schema_fail(ctx, "conditions must be an array");
  for (const json& c : arr) {
    LocalCondition lc;
    for (const json& g : field(c, "subgroup", ctx + ".conditions"))
      lc.subgroup_gens.push_back((int)int_of(g, ctx + ".conditions.subgroup"));
    std::string mode = string_of(field(c, "mode", ctx + ".conditions"), ctx + ".conditions.mode");
    if (mode == "zero")
      lc.mode = LocalCondition::Mode::zero;
    else if (mode == "full")
      lc.mode = LocalCondition::Mode::full;
    else
      schema_fail(ctx, "condition mode must be zero or full");
    out.push_back(std::move(lc));
  }
  return out;
}

// ---------- report serialization ----------

json inv_json(const ModuleInvariants& m) {
  return {{"factors", m.factors}, {"order", m.order}, {"min_generators", m.min_generators}};
}

json ideal_json(const LocalAlgebra& A, const Ideal& I) {
  return {{"order", I.order()},
          {"is_zero", I.is_zero()},
          {"invariants", inv_json(A.ideal_invariants(I))}};
}

json criterion_json(const CriterionReport& r) {
  return {{"s_free", r.s_free},
          {"phi1_iso", r.phi1_iso},
          {"quotient_cyclic", r.quotient_cyclic},
          {"r_level", r.r_level},
          {"pi_square_iso", r.pi_square_iso},
          {"hypotheses_hold", r.hypotheses_hold},
          {"hypothesis_failure", !r.hypotheses_hold},
          {"phi_bijective", r.phi_bijective},
          {"consistent", r.consistent},
          {"r_orders", r.r_orders},
          {"s_orders", r.s_orders}};
}

json torsion_json(const TorsionReport& t) {
  json j{{"n", t.n},
         {"h0_order", t.h0_w},
         {"h1_torsion_level", inv_json(t.h1_torsion)},
         {"h1_full_level", inv_json(t.h1_level)},
         {"first_term", t.first_term},
         {"pn_torsion_of_h1", t.h1w_pn_torsion},
         {"injective", t.injective},
         {"image_is_pn_torsion", t.image_is_pn_torsion},
         {"exact_order_accounting", t.exact_order_accounting},
         {"first_term_divisible_model", t.first_term_divisible_model},
         {"divisible_limit_formula", t.divisible_limit_formula}};
  if (t.selmer_injective) j["selmer_injective"] = *t.selmer_injective;
  if (t.selmer_image_is_pn_torsion) j["selmer_image_is_pn_torsion"] = *t.selmer_image_is_pn_torsion;
  return j;
}

struct KindResult {
  json result;
  bool pass = true;
};

json gma_result_json(const GroupRep& rho, const GmaRun& run, const RunOptions& opt,
                     bool* pass_out) {
  const LocalAlgebra& A = rho.A;
  json res;
  res["group_order"] = rho.G.order();
  res["degree"] = rho.n;
  res["algebra"] = {{"p", A.O.p}, {"e", A.O.e}, {"dim", A.dim()}};
  res["tau"] = {{"attached", run.tau_attached},
                {"self_dual", run.tau_self_dual},
                {"stable", run.gma.has_value() && run.gma->tau_stable}};
  res["reducibility_ideal"] = ideal_json(A, run.IT);
  bool principal = A.principal_generator(run.IT).has_value();
  res["principal"] = principal;
  json cert{{"present", run.cert.has_value()}};
  if (run.cert) {
    cert["used_involution"] = run.cert->used_involution;
    cert["generator"] = run.cert->generator;
  }
  res["certificate"] = cert;
  res["splits_mod_ideal"] = run.splits_mod_IT ? json(*run.splits_mod_IT) : json(nullptr);
  res["minimal"] = run.minimal ? json(*run.minimal) : json(nullptr);

  bool pass = true;
  bool equipped = run.tau_attached && run.tau_self_dual;
  if (equipped && (!run.cert || !principal)) pass = false;
  if (run.splits_mod_IT && !*run.splits_mod_IT) pass = false;
  if (run.minimal && !*run.minimal) pass = false;
  if (opt.exhaustive && A.size() <= opt.max_order) {
    std::optional<Ideal> brute = brute_smallest_splitting_ideal(run.T, opt.max_order);
    bool match = brute.has_value() && *brute == run.IT;
    res["brute_match"] = match;
    if (!match) pass = false;
  }
  if (pass_out) *pass_out = pass;
  return res;
}

KindResult run_gma_scenario(const json& sc, const RunOptions& opt, const std::string& ctx) {
  RepSpec rs = parse_rep(field(sc, "rep", ctx), ctx + ".rep");
  if (sc.contains("involution")) {
    std::string iv = string_of(sc.at("involution"), ctx + ".involution");
    if (iv == "inverse")
      rs.tau = Involution::inverse(rs.rho.G, rs.rho.A);
    else if (iv == "none")
      rs.tau = std::nullopt;
    else
      schema_fail(ctx, "involution must be inverse or none");
  }
  GmaRun run = run_gma_pipeline(rs.rho, rs.tau);
  KindResult out;
  out.result = gma_result_json(rs.rho, run, opt, &out.pass);
  return out;
}

KindResult run_cohomology_scenario(const json& sc, const RunOptions& opt,
                                   const std::string& ctx) {
  (void)opt;
  FiniteGroup G = parse_group(field(sc, "group", ctx), ctx + ".group");
  const json& mj = field(sc, "module", ctx);
  BaseRing O = parse_ring(field(mj, "ring", ctx + ".module"), ctx + ".module.ring");
  GModule W = [&] {
    if (mj.contains("values")) {
      std::vector<std::int64_t> vals;
      for (const json& v : mj.at("values")) vals.push_back(int_of(v, ctx + ".module.values"));
      if (vals.size() != G.n) schema_fail(ctx, "need one value per group element");
      return GModule::from_character_values(G, O, vals, O.e);
    }
    if (!mj.contains("act")) schema_fail(ctx, "module needs values or act");
    std::vector<int> ord;
    if (mj.contains("ord"))
      for (const json& o : mj.at("ord")) ord.push_back((int)int_of(o, ctx + ".module.ord"));
    const json& act = mj.at("act");
    if (!act.is_array() || act.size() != G.n) schema_fail(ctx, "need one action matrix per element");
    std::size_t d = act.at(0).size();
    if (ord.empty()) ord.assign(d, O.e);
    Shape shape{O, ord};
    std::vector<Mat> mats;
    for (const json& a : act) {
      Mat M(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) M.at(r, c) = int_of(a.at(r).at(c), ctx + ".module.act");
      mats.push_back(std::move(M));
    }
    return GModule::make(G, shape, std::move(mats));
  }();

  std::vector<LocalCondition> conds = parse_conditions(sc, ctx);
  KindResult out;
  out.result["h0"] = inv_json(lattice_invariants(h0(W)));
  CocycleSpace cs = conds.empty() ? h1(W) : selmer(W, conds);
  out.result["h1"] = inv_json(cs.H1);
  if (cs.selmer_h) out.result["selmer"] = inv_json(*cs.selmer_h);
  if (sc.contains("torsion_check")) {
    int n = (int)int_of(sc.at("torsion_check"), ctx + ".torsion_check");
    TorsionReport tr = torsion_functoriality_check(W, n, conds);
    out.result["torsion"] = torsion_json(tr);
    out.pass = out.pass && tr.exact_order_accounting;
    if (tr.h0_w == 1) out.pass = out.pass && tr.injective && tr.image_is_pn_torsion;
  }
  return out;
}

KindResult run_tangent_scenario(const json& sc, const RunOptions& opt, const std::string& ctx) {
  (void)opt;
  RepSpec rs = parse_rep(field(sc, "rep", ctx), ctx + ".rep");
  std::size_t n1 = sc.contains("n1") ? (std::size_t)int_of(sc.at("n1"), ctx + ".n1") : 1;
  std::vector<LocalCondition> conds = parse_conditions(sc, ctx);
  TangentSpace ts = tangent_space(rs.rho, n1, conds);
  KindResult out;
  out.result["h1"] = inv_json(ts.full.H1);
  if (ts.full.selmer_h) out.result["selmer"] = inv_json(*ts.full.selmer_h);
  out.result["upper_triangular"] = inv_json(ts.ut_subfamily);
  return out;
}

KindResult run_criterion_scenario(const json& sc, const RunOptions& opt,
                                  const std::string& ctx) {
  (void)opt;
  LocalAlgebra R = parse_algebra(field(sc, "R", ctx), ctx + ".R");
  Vec pi = parse_entry(field(sc, "pi", ctx), R, ctx + ".pi");
  KindResult out;
  CriterionReport rep = [&] {
    if (sc.contains("quotient_by")) {
      std::vector<Vec> gens;
      for (const json& g : sc.at("quotient_by"))
        gens.push_back(parse_entry(g, R, ctx + ".quotient_by"));
      auto [S, phi] = quotient_algebra(R, R.ideal(gens));
      return check_cri1(phi, pi);
    }
    LocalAlgebra S = parse_algebra(field(sc, "S", ctx), ctx + ".S");
    const json& pj = field(sc, "phi", ctx);
    if (!pj.is_array() || pj.size() != R.dim())
      schema_fail(ctx, "phi needs one image row per domain basis element");
    Mat M(R.dim(), S.dim());
    for (std::size_t r = 0; r < R.dim(); ++r)
      M.set_row(r, parse_entry(pj.at(r), S, ctx + ".phi"));
    return check_cri1(AlgebraHom::make(R, S, M), pi);
  }();
  out.result = criterion_json(rep);
  out.pass = rep.consistent;
  return out;
}

KindResult run_cons1_scenario(const json& sc, const RunOptions& opt, const std::string& ctx) {
  (void)opt;
  LocalAlgebra R = parse_algebra(field(sc, "R", ctx), ctx + ".R");
  std::vector<Vec> gens;
  for (const json& g : field(sc, "ideal", ctx)) gens.push_back(parse_entry(g, R, ctx + ".ideal"));
  Ideal I = R.ideal(gens);
  StructureReport st = structure_surjectivity_check(R, I);
  auto [S, phi] = quotient_algebra(R, I);
  Vec pi = parse_entry(field(sc, "pi", ctx), R, ctx + ".pi");
  CriterionReport cr = check_cri1(phi, pi);
  KindResult out;
  out.result["structure"] = {{"cyclic", st.cyclic}, {"s", st.s}};
  if (st.witness) out.result["structure"]["witness"] = *st.witness;
  out.result["criterion"] = criterion_json(cr);
  out.pass = cr.consistent;
  return out;
}

// dotted-path lookup for expectation blocks
const json* resolve_path(const json& root, const std::string& path) {
  const json* cur = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &cur->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

} // namespace

json run_scenario(const json& sc, const RunOptions& opt) {
  std::string ctx = "scenario";
  if (!sc.is_object()) schema_fail(ctx, "must be an object");
  std::string kind = string_of(field(sc, "kind", ctx), ctx + ".kind");
  if (sc.contains("label")) ctx += "(" + string_of(sc.at("label"), ctx) + ")";

  KindResult kr;
  if (kind == "gma")
    kr = run_gma_scenario(sc, opt, ctx);
  else if (kind == "cohomology")
    kr = run_cohomology_scenario(sc, opt, ctx);
  else if (kind == "tangent")
    kr = run_tangent_scenario(sc, opt, ctx);
  else if (kind == "criterion")
    kr = run_criterion_scenario(sc, opt, ctx);
  else if (kind == "cons1_skeleton")
    kr = run_cons1_scenario(sc, opt, ctx);
  else if (kind == "demo") {
    std::string name = string_of(field(sc, "name", ctx), ctx + ".name");
    json rep = demo_report(name, opt);
    kr.result = rep.at("result");
    kr.pass = rep.at("invariants_pass").get<bool>();
  } else
    schema_fail(ctx, "unknown kind " + kind);

  json out;
  out["schema_version"] = 1;
  out["kind"] = kind;
  if (sc.contains("label")) out["label"] = sc.at("label");
  out["scenario"] = sc;
  out["result"] = kr.result;

  json failures = json::array();
  if (sc.contains("expect")) {
    const json& exp = sc.at("expect");
    if (!exp.is_object()) schema_fail(ctx, "expect must be an object of path: value");
    for (auto it = exp.begin(); it != exp.end(); ++it) {
      const json* got = resolve_path(kr.result, it.key());
      if (!got || *got != it.value())
        failures.push_back({{"path", it.key()},
                            {"expected", it.value()},
                            {"actual", got ? *got : json(nullptr)}});
    }
  }
  out["expect_failures"] = failures;
  out["invariants_pass"] = kr.pass && failures.empty();
  return out;
}

BatchResult run_scenario_text(const std::string& text, const RunOptions& opt) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    return {json{{"error", std::string("parse error at line ") + std::to_string(line) + ": " +
                               err.what()}},
            2};
  }

  auto run_one = [&opt](const json& sc) -> BatchResult {
    try {
      json rep = run_scenario(sc, opt);
      return {rep, rep.at("invariants_pass").get<bool>() ? 0 : 1};
    } catch (const error& e) {
      return {json{{"error", e.what()}}, 2};
    }
  };

  if (!doc.is_array()) return run_one(doc);

  std::vector<std::future<BatchResult>> futs;
  for (const json& sc : doc)
    futs.push_back(std::async(std::launch::async, run_one, sc));
  json reports = json::array();
  int status = 0;
  for (auto& f : futs) {
    BatchResult r = f.get();
    status = std::max(status, r.status);
    reports.push_back(std::move(r.report));
  }
  return {json{{"schema_version", 1}, {"reports", reports}, {"batch_status", status}}, status};
}

namespace {

json demo_s3_p3(const RunOptions& opt) {
  json d;
  BaseRing F3 = BaseRing::make(3, 1);
  BaseRing Z9 = BaseRing::make(3, 2);
  FiniteGroup s3 = named_group("s3");
  LocalAlgebra A1 = LocalAlgebra::base(F3);

  std::vector<Character> chars = all_characters(s3, A1);
  const Character& sign =
      chars[0].val == std::vector<Vec>(6, A1.one) ? chars[1] : chars[0];
  std::vector<std::int64_t> sign_vals, triv_vals;
  for (const Vec& v : sign.val) sign_vals.push_back(v[0]);
  triv_vals.assign(6, 1);

  bool pass = true;
  GModule Wsign = GModule::from_character_values(s3, F3, sign_vals, 1);
  GModule Wtriv = GModule::from_character_values(s3, F3, triv_vals, 1);
  d["h1_sign"] = inv_json(h1(Wsign).H1);
  d["h1_trivial"] = inv_json(h1(Wtriv).H1);
  pass = pass && h1(Wsign).H1.order == 3 && h1(Wtriv).H1.order == 1;

  GroupRep std3 = s3_standard_rep(Z9);
  GmaRun run = run_gma_pipeline(std3, Involution::inverse(std3.G, std3.A));
  bool gpass = true;
  d["standard_gma"] = gma_result_json(std3, run, opt, &gpass);
  pass = pass && gpass;

  std::optional<GroupRep> tri = residually_triangular_form(std3);
  json equiv = json::array();
  bool all_match = tri.has_value();
  if (tri) {
    for (const Ideal& I : tri->A.all_ideals()) {
      if (I == tri->A.unit_ideal()) continue;
      bool bt = block_triangularize(*tri, 1, I).success;
      bool want = I.contains(run.IT);
      if (bt != want) all_match = false;
      equiv.push_back({{"ideal_order", I.order()}, {"triangularizes", bt},
                       {"contains_reducibility_ideal", want}});
    }
  }
  d["triangularization_equivalence"] = {{"cases", equiv}, {"all_match", all_match}};
  pass = pass && all_match;

  // tangent space at a nonsplit triangular base point
  for (const TriangularInstance& t : triangular_instances("s3", A1, 3)) {
    if (t.split) continue;
    TangentSpace ts = tangent_space(t.rho, 1);
    d["tangent_nonsplit"] = {{"label", t.label},
                             {"h1", inv_json(ts.full.H1)},
                             {"upper_triangular", inv_json(ts.ut_subfamily)}};
    break;
  }

  // torsion functoriality for the sign module at level three
  BaseRing Z27 = BaseRing::make(3, 3);
  std::vector<std::int64_t> lifted;
  for (std::int64_t v : sign_vals) lifted.push_back(v == 1 ? 1 : 26);
  GModule Wbig = GModule::from_character_values(s3, Z27, lifted, 3);
  TorsionReport tr = torsion_functoriality_check(Wbig, 1);
  d["torsion_sign"] = torsion_json(tr);
  pass = pass && tr.exact_order_accounting && tr.injective && tr.image_is_pn_torsion;

  return json{{"result", d}, {"invariants_pass", pass}};
}

json demo_m2_full(const RunOptions& opt) {
  json d;
  bool pass = true;
  for (int e : {1, 2}) {
    GroupRep q8r = q8_standard_rep(BaseRing::make(3, e));
    GmaRun run = run_gma_pipeline(q8r, Involution::inverse(q8r.G, q8r.A));
    bool gpass = true;
    json entry = gma_result_json(q8r, run, opt, &gpass);
    entry["absolutely_irreducible"] = is_absolutely_irreducible(q8r);
    KernelComparison kc = compare_kernels(q8r);
    entry["trace_kernel_equals_rep_kernel"] = kc.equal;
    bool full = run.IT == q8r.A.unit_ideal();
    entry["reducibility_ideal_is_unit"] = full;
    d["e" + std::to_string(e)] = entry;
    pass = pass && gpass && is_absolutely_irreducible(q8r) && full;
  }
  return json{{"result", d}, {"invariants_pass", pass}};
}

json demo_cri1_suite(const RunOptions& opt) {
  (void)opt;
  json d;
  bool pass = true;
  json positives = json::array();
  for (const Cri1Fixture& f : cri1_positive_suite()) {
    CriterionReport rep = check_cri1(f.phi, f.pi);
    positives.push_back({{"label", f.label}, {"report", criterion_json(rep)}});
    pass = pass && rep.hypotheses_hold && rep.phi_bijective && rep.consistent;
  }
  json negatives = json::array();
  for (const Cri1Fixture& f : cri1_negative_suite()) {
    CriterionReport rep = check_cri1(f.phi, f.pi);
    negatives.push_back({{"label", f.label},
                         {"expected_violation", f.violated},
                         {"report", criterion_json(rep)}});
    pass = pass && !rep.hypotheses_hold && rep.consistent;
  }
  d["positive"] = positives;
  d["negative"] = negatives;
  return json{{"result", d}, {"invariants_pass", pass}};
}

json demo_wl_suite(const RunOptions& opt) {
  (void)opt;
  json d = json::array();
  bool pass = true;
  for (const WLFixture& f : wiles_lenstra_suite()) {
    WilesLenstraData data = wiles_lenstra_data(f.phi, f.piR, f.piS);
    d.push_back({{"label", f.label},
                 {"phi_R", data.phi_R},
                 {"phi_S", data.phi_S},
                 {"o_mod_eta", data.o_mod_eta},
                 {"principal", data.principal},
                 {"phi_bijective", data.phi_bijective},
                 {"consistent", data.consistent}});
    pass = pass && data.consistent && data.phi_R == f.phi_R && data.o_mod_eta == f.o_mod_eta &&
           data.principal == f.principal;
  }
  return json{{"result", {{"fixtures", d}}}, {"invariants_pass", pass}};
}

} // namespace

json demo_report(const std::string& name, const RunOptions& opt) {
  json rep;
  if (name == "s3_p3")
    rep = demo_s3_p3(opt);
  else if (name == "m2_full")
    rep = demo_m2_full(opt);
  else if (name == "cri1_suite")
    rep = demo_cri1_suite(opt);
  else if (name == "wl_suite")
    rep = demo_wl_suite(opt);
  else
    fail(errc::unknown_demo, "no demo named " + name);
  rep["schema_version"] = 1;
  rep["kind"] = "demo";
  rep["name"] = name;
  return rep;
}

BatchResult fuzz_report(const std::string& kind, std::size_t count, std::uint64_t seed,
                        const RunOptions& opt) {
  require(count >= 1, errc::bad_scenario, "fuzz count must be at least 1");
  std::mt19937_64 rng(seed);
  json summary;
  json violations = json::array();

  if (kind == "gma") {
    std::size_t equipped = 0, certified = 0;
    json labels = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      TriangularInstance t = random_triangular_instance(rng);
      GmaRun run = run_gma_pipeline(t.rho, t.tau);
      labels.push_back(t.label);
      bool ok = true;
      if (run.tau_attached && run.tau_self_dual) {
        ++equipped;
        bool principal = t.rho.A.principal_generator(run.IT).has_value();
        if (run.cert) ++certified;
        ok = ok && run.cert.has_value() && principal;
      }
      if (run.splits_mod_IT && !*run.splits_mod_IT) ok = false;
      if (run.minimal && !*run.minimal) ok = false;
      if (opt.exhaustive && t.rho.A.size() <= opt.max_order) {
        std::optional<Ideal> brute = brute_smallest_splitting_ideal(run.T, opt.max_order);
        if (!brute || !(*brute == run.IT)) ok = false;
      }
      if (!ok)
        violations.push_back({{"index", i}, {"label", t.label}});
    }
    summary = {{"instances", count},
               {"equipped", equipped},
               {"certified", certified},
               {"labels", labels}};
  } else if (kind == "criterion") {
    std::size_t hypotheses_held = 0;
    for (std::size_t i = 0; i < count; ++i) {
      Cri1Fixture f = random_cri1_instance(rng);
      CriterionReport rep = check_cri1(f.phi, f.pi);
      if (rep.hypotheses_hold) ++hypotheses_held;
      if (!rep.consistent)
        violations.push_back({{"index", i}, {"report", criterion_json(rep)}});
    }
    summary = {{"instances", count}, {"hypotheses_held", hypotheses_held}};
  } else {
    fail(errc::bad_scenario, "fuzz kind must be gma or criterion");
  }

  json rep{{"schema_version", 1}, {"kind", "fuzz"},      {"fuzz_kind", kind},
           {"count", count},      {"seed", seed},        {"summary", summary},
           {"violations", violations}, {"invariants_pass", violations.empty()}};
  return {rep, violations.empty() ? 0 : 1};
}

} // namespace gmalab
