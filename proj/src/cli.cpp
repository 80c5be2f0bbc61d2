#include "btstab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "btstab/stab.hpp"

namespace btstab {

namespace {

using nlohmann::json;

int log_level() {
  const char* v = std::getenv("BTSTAB_LOG");
  return v ? std::atoi(v) : 0;
}

struct RunConfig {
  std::string base = "q2";
  std::string ext;
  std::string suite;
  std::string method = "both";
  std::string format = "text";
  std::string config_file;
  int depth = 3;
  int level = 1;
  int max_level = 2;
  int precision = 0;  // 0 = suite default
  unsigned long long seed = 0;
  Budgets budgets;
};

FieldCtx parse_base_spec(const std::string& spec, int precision) {
  if (spec == "q2") return make_base_field(FieldKind::trivial, {}, precision);
  auto parse_poly = [](const std::string& body) {
    std::vector<std::int64_t> coeffs;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(std::stoll(tok));
    return coeffs;
  };
  if (spec.rfind("eis:", 0) == 0)
    return make_base_field(FieldKind::eisenstein, parse_poly(spec.substr(4)), precision);
  if (spec.rfind("unram:", 0) == 0)
    return make_base_field(FieldKind::unramified, parse_poly(spec.substr(6)), precision);
  throw Error("base field spec must be q2, eis:<c0>,<c1> or unram:<c0>,<c1>");
}

json base_to_json(const FieldCtx& base) {
  json j;
  j["kind"] = field_kind_name(base->kind);
  j["poly"] = base->poly_src;
  j["precision"] = base->prec;
  return j;
}

json desc_to_json(const ExtDescriptor& d) {
  json j;
  j["kind"] = d.kind == ExtKind::unramified ? "unramified" : "ramified";
  j["a"] = format_elem(d.a);
  j["b"] = format_elem(d.b);
  if (d.kind == ExtKind::ramified)
    j["d"] = d.d == kTraceZeroD ? json("trace_zero") : json(d.d);
  j["diff_val"] = d.diff_val;
  j["spec"] = format_ext_spec(d);
  return j;
}

json params_to_json(const ClosedFormParams& p) {
  return json{{"m", p.m}, {"t", p.t}, {"eps", p.eps}, {"del", p.del}};
}

json stab_report_to_json(const StabilizerReport& r) {
  json j;
  j["ext"] = r.ext_spec;
  j["point"] = r.point;
  j["n"] = r.n;
  j["N"] = r.N;
  j["level"] = r.level;
  j["torus"] = "compact: determinant 1 at working precision";
  j["params"] = params_to_json(r.params);
  j["parse_choice"] = parse_name(r.parse_choice);
  j["oracle_size"] = r.oracle_size;
  j["orbit_size"] = r.orbit_size;
  j["swap_size"] = r.swap_size;
  j["closed_size"] = r.closed_size;
  j["verdict"] = verdict_name(r.verdict);
  j["tan_ok"] = r.tan_ok;
  j["witnesses"] = r.witnesses;
  return j;
}

std::vector<ExtDescriptor> selected_extensions(const FieldCtx& base, const RunConfig& cfg) {
  if (!cfg.ext.empty()) return {parse_ext_spec(base, cfg.ext)};
  return classify_extensions(base);
}

// suite runners; each returns false when something failed

bool run_extensions(const RunConfig& cfg, std::ostream& out) {
  int prec = cfg.precision ? cfg.precision : 8;
  FieldCtx base = parse_base_spec(cfg.base, std::max(prec, 2 * 2 + 2));
  auto classes = classify_extensions(base);
  json j;
  j["base"] = base_to_json(base);
  j["extensions"] = json::array();
  bool ok = true;
  for (const auto& d : classes) {
    json jd = desc_to_json(d);
    ExtCtx E = make_extension(base, d);
    int recomputed = different_valuation(E);
    bool match = recomputed == d.diff_val;
    ok = ok && match;
    jd["checks"] = json::array(
        {json{{"name", "different_recomputed"}, {"value", recomputed}, {"ok", match}}});
    j["extensions"].push_back(jd);
  }
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << "base " << cfg.base << ": " << classes.size() << " quadratic extension classes\n";
    for (const auto& jd : j["extensions"])
      out << "  " << jd["spec"].get<std::string>() << "  kind=" << jd["kind"].get<std::string>()
          << " diff_val=" << jd["diff_val"] << "\n";
  }
  return ok;
}

bool run_tree(const RunConfig& cfg, std::ostream& out) {
  int prec = cfg.precision ? cfg.precision : cfg.depth + 2;
  FieldCtx base = parse_base_spec(cfg.base, prec);
  if (cfg.ext.empty()) throw Error("tree needs --ext");
  ExtCtx E = make_extension(base, parse_ext_spec(base, cfg.ext));
  if (cfg.format == "dot")
    tree_export_dot(E, cfg.depth, out);
  else
    out << tree_export_json(E, cfg.depth) << "\n";
  return true;
}

bool run_stabilizer(const RunConfig& cfg, std::ostream& out) {
  if (cfg.ext.empty()) throw Error("stabilizer needs --ext");
  int n = cfg.level;
  int N = cfg.precision ? cfg.precision : n + 2;
  FieldCtx proto = parse_base_spec(cfg.base, N + 2);
  ExtDescriptor desc = parse_ext_spec(proto, cfg.ext);
  FieldCtx work = stab_work_base(proto, N);
  ExtCtx E = make_extension(work, rebase_descriptor(desc, work));
  auto reps = quadratic_point_orbit_reps(E, n, cfg.budgets);
  if (reps.empty()) throw Error("no quadratic points at this level");
  const QuadraticPoint& q = reps.front();

  json j;
  j["ext"] = format_ext_spec(desc);
  j["n"] = n;
  j["N"] = N;
  ClosedFormParams params = closed_form_params(E, n);
  j["params"] = params_to_json(params);
  if (cfg.method == "brute" || cfg.method == "both") {
    OracleSets scans = oracle_scan(q, N, cfg.budgets);
    j["oracle_size"] = scans.fixed.mats.size();
    j["orbit_size"] = scans.orbit.mats.size();
    if (cfg.method == "both") {
      CosetSet closed = closed_form_stabilizer(q, N, params);
      j["closed_size"] = closed.mats.size();
      std::vector<std::string> witnesses;
      bool eq = coset_equal(scans.fixed, closed);
      j["verdict"] = eq ? "equal" : "mismatch";
    }
  } else if (cfg.method == "closed") {
    CosetSet closed = closed_form_stabilizer(q, N, params);
    j["closed_size"] = closed.mats.size();
  } else {
    throw Error("method must be brute, closed or both");
  }
  out << j.dump(2) << "\n";
  return !j.contains("verdict") || j["verdict"] == "equal";
}

bool run_suite_theorem(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out,
                       json& results) {
  bool all_ok = true;
  for (const ExtDescriptor& desc : selected_extensions(proto, cfg)) {
    VerifyOptions opt;
    opt.n_max = cfg.max_level;
    opt.precision = cfg.precision;
    opt.budgets = cfg.budgets;
    auto reports = verify_closed_form(proto, desc, opt);
    // conjugation-equivariance spot check, seeded
    std::mt19937_64 rng(cfg.seed);
    for (auto& r : reports) {
      json jr = stab_report_to_json(r);
      bool ok = r.verdict == Verdict::equal && r.tan_ok;
      // re-run the oracle on a conjugated point and compare
      {
        int N = r.N;
        FieldCtx work = stab_work_base(proto, N);
        ExtCtx E = make_extension(work, rebase_descriptor(desc, work));
        auto reps = quadratic_point_orbit_reps(E, r.n, cfg.budgets);
        for (const auto& q : reps) {
          if (vertex_label(q.rep) != r.point) continue;
          std::vector<Mat2> group;
          for_each_sl2(work.get(), N, [&](const Mat2& m) { group.push_back(m); });
          const Mat2& g = group[rng() % group.size()];
          QuadraticPoint qc{act(g, q.rep), act(g, q.conj_rep), q.level};
          OracleSets s0 = oracle_scan(q, N, cfg.budgets);
          OracleSets s1 = oracle_scan(qc, N, cfg.budgets);
          bool equi = coset_equal(s1.orbit, conjugated_set(g, s0.orbit));
          jr["equivariance_ok"] = equi;
          ok = ok && equi;
        }
      }
      all_ok = all_ok && ok;
      results.push_back(jr);
      if (cfg.format != "json")
        out << (ok ? "ok" : "FAIL") << " theorem " << r.ext_spec << " n=" << r.n
            << " N=" << r.N << " point=" << r.point << " oracle=" << r.oracle_size
            << " closed=" << r.closed_size << " verdict=" << verdict_name(r.verdict)
            << " swap=" << r.swap_size << "\n";
    }
  }
  return all_ok;
}

bool run_suite_lf(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out, json& results) {
  bool all_ok = true;
  for (const ExtDescriptor& d0 : selected_extensions(proto, cfg)) {
    // size the working precision from the deepest working level needed
    int diff = d0.diff_val;
    int wl = diff + 2 * cfg.max_level + 2;
    int base_prec = wl + 3;
    FieldCtx base = clone_with_precision(proto, base_prec);
    ExtCtx E = make_extension(base, rebase_descriptor(d0, base));
    for (int n = 1; n <= cfg.max_level; ++n) {
      LFReport r = norm_fiber_check(E, n, wl);
      bool ok = r.holds;
      all_ok = all_ok && ok;
      json jr{{"ext", format_ext_spec(d0)}, {"n", n},           {"t", r.t},
              {"exponent", r.exponent},     {"holds", r.holds}, {"lhs_size", r.lhs_size},
              {"rhs_size", r.rhs_size},     {"witnesses", r.witnesses}};
      results.push_back(jr);
      if (cfg.format != "json")
        out << (ok ? "ok" : "FAIL") << " lf " << format_ext_spec(d0) << " n=" << n
            << " exponent=" << r.exponent << " classes=" << r.lhs_size << "\n";
    }
  }
  return all_ok;
}

bool run_suite_casselman(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out,
                         json& results) {
  bool all_ok = true;
  for (const ExtDescriptor& d0 : selected_extensions(proto, cfg)) {
    if (d0.kind == ExtKind::unramified) continue;
    // deep enough that the kernel-at-precision surrogate is pure across all
    // probed filtration levels
    int wl = std::max(d0.diff_val + 2 * cfg.max_level + 2,
                      2 * (d0.diff_val + cfg.max_level) - 1);
    FieldCtx base = clone_with_precision(proto, wl + 3);
    ExtCtx E = make_extension(base, rebase_descriptor(d0, base));
    KernelReport r = norm_kernel_check(E, cfg.max_level, wl);
    all_ok = all_ok && r.holds;
    json jr{{"ext", format_ext_spec(d0)},
            {"diff_val", r.diff_val},
            {"contained", r.contained},
            {"quotient_order", r.quotient_order},
            {"collapse_ok", r.collapse_ok},
            {"holds", r.holds},
            {"max_n", r.max_n}};
    results.push_back(jr);
    if (cfg.format != "json")
      out << (r.holds ? "ok" : "FAIL") << " casselman " << format_ext_spec(d0)
          << " diff_val=" << r.diff_val << " quotient_order=" << r.quotient_order << "\n";
  }
  return all_ok;
}

bool run_suite_lemma_j(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out,
                       json& results) {
  bool all_ok = true;
  for (const ExtDescriptor& d0 : selected_extensions(proto, cfg)) {
    for (int n = 0; n <= cfg.max_level; ++n) {
      int N = cfg.precision ? cfg.precision : n + 1;
      BallReport r = verify_ball_stabilizers(proto, d0, n, N, cfg.budgets);
      all_ok = all_ok && r.holds;
      json jr{{"ext", format_ext_spec(d0)},
              {"n", n},
              {"N", r.N},
              {"center_ok", r.center_ok},
              {"off_center_ok", r.off_center_ok},
              {"closure_matches_display", r.closure_matches_display},
              {"holds", r.holds},
              {"witnesses", r.witnesses}};
      results.push_back(jr);
      if (cfg.format != "json")
        out << (r.holds ? "ok" : "FAIL") << " lemma-j " << format_ext_spec(d0) << " n=" << n
            << " center=" << r.center_ok << " off_center=" << r.off_center_ok << "\n";
    }
  }
  return all_ok;
}

bool run_suite_trees(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out,
                     json& results) {
  bool all_ok = true;
  // barbs attach one edge off the image and extend e_E further; the survey
  // depth must leave room for at least one complete component
  int barb_depth = std::max(4, 2 * proto->e + 2);
  FieldCtx base = clone_with_precision(proto, std::max(6, barb_depth + 2));
  for (const ExtDescriptor& d0 : selected_extensions(proto, cfg)) {
    ExtCtx E = make_extension(base, rebase_descriptor(d0, base));
    bool dil_ok = true, iso_ok = true, fix_ok = true;

    std::vector<BaseVertex> bverts;
    for (int d = 0; d <= 3; ++d)
      for (const BaseVertex& v : base_vertices_at_depth(base.get(), d)) bverts.push_back(v);
    for (const BaseVertex& u : bverts)
      for (const BaseVertex& v : bverts) {
        if (distance(embed_vertex(u, E.get()), embed_vertex(v, E.get())) !=
            E->e_rel * base_distance(u, v))
          dil_ok = false;
      }
    std::vector<Vertex> everts;
    for (int d = 0; d <= 4; ++d)
      for (const Vertex& v : all_vertices_at_depth(E.get(), d)) everts.push_back(v);
    for (const Vertex& v : everts)
      if (!same_vertex(galois_act_vertex(galois_act_vertex(v)), v)) iso_ok = false;
    for (const Vertex& u : everts)
      for (const Vertex& v : everts)
        if (distance(galois_act_vertex(u), galois_act_vertex(v)) != distance(u, v))
          iso_ok = false;
    for (const BaseVertex& u : bverts)
      if (!same_vertex(galois_act_vertex(embed_vertex(u, E.get())), embed_vertex(u, E.get())))
        fix_ok = false;

    BarbSurvey s = survey_barbs(E, barb_depth);
    bool barb_ok = s.all_match && (d0.kind == ExtKind::unramified || s.component_count > 0);
    bool ok = dil_ok && iso_ok && fix_ok && barb_ok;
    all_ok = all_ok && ok;
    json jr{{"ext", format_ext_spec(d0)},
            {"dilation_ok", dil_ok},
            {"isometry_ok", iso_ok},
            {"embedded_fixed_ok", fix_ok},
            {"barbs",
             json{{"expected", s.expected},
                  {"measured", s.measured},
                  {"all_match", s.all_match},
                  {"components", s.component_count}}},
            {"holds", ok}};
    results.push_back(jr);
    if (cfg.format != "json")
      out << (ok ? "ok" : "FAIL") << " trees " << format_ext_spec(d0)
          << " barb_diameter=" << s.expected << " measured=" << s.measured << "\n";
  }
  return all_ok;
}

bool run_suite_filtrations(const RunConfig& cfg, const FieldCtx& proto, std::ostream& out,
                           json& results) {
  int N = cfg.precision ? cfg.precision : 3;
  FieldCtx base = clone_with_precision(proto, N + 3);
  const Field* f = base.get();
  Budgets budg = cfg.budgets;
  bool all_ok = true;

  for (int n = 1; n <= cfg.max_level; ++n) {
    auto lhs = sl2_filter(f, N, budg,
                          [&](const Mat2& m) { return subgroup_member(m, Subgroup::Jr, 2 * n, N); });
    auto rhs = sl2_filter(f, N, budg, [&](const Mat2& m) {
      if (!subgroup_member(m, Subgroup::J, n, N)) return false;
      if (valuation(m.c) < 1) return false;
      return subgroup_member(conj_by_P(m), Subgroup::J, n, N);
    });
    bool even_ok = lhs.size() == rhs.size();
    if (even_ok)
      for (size_t i = 0; i < lhs.size(); ++i)
        if (!mat_equal_at(lhs[i], rhs[i], N)) even_ok = false;

    auto jn1 = sl2_filter(f, N, budg, [&](const Mat2& m) {
      return subgroup_member(m, Subgroup::J, n + 1, N);
    });
    auto jn1_deep = sl2_filter(f, N + 1, budg, [&](const Mat2& m) {
      return subgroup_member(m, Subgroup::J, n + 1, N + 1);
    });
    auto pjn1 = conj_image_by_P(jn1_deep, N);
    auto closure = generated_closure(jn1, pjn1, N, budg.max_closure);
    auto display = sl2_filter(f, N, budg, [&](const Mat2& m) {
      return subgroup_member(m, Subgroup::Jr, 2 * n + 1, N);
    });
    bool odd_ok = closure.size() == display.size();
    if (odd_ok)
      for (size_t i = 0; i < closure.size(); ++i)
        if (!mat_equal_at(closure[i], display[i], N)) odd_ok = false;

    // strict nesting of K_n inside J_n (witness from the bigger set)
    auto kn = sl2_filter(f, N, budg,
                         [&](const Mat2& m) { return subgroup_member(m, Subgroup::K, n, N); });
    auto jn = sl2_filter(f, N, budg,
                         [&](const Mat2& m) { return subgroup_member(m, Subgroup::J, n, N); });
    bool k_in_j = true;
    for (const Mat2& m : kn)
      if (!set_contains(jn, m, N)) k_in_j = false;
    bool strict = n < 2 ? true : jn.size() > kn.size();
    std::string witness;
    if (n >= 2)
      for (const Mat2& m : jn)
        if (!set_contains(kn, m, N)) {
          witness = format_mat(m);
          break;
        }

    bool ok = even_ok && odd_ok && k_in_j && strict;
    all_ok = all_ok && ok;
    json jr{{"n", n},
            {"even_identity_ok", even_ok},
            {"odd_identity_ok", odd_ok},
            {"nesting", json{{"k_in_j", k_in_j}, {"strict", strict}, {"witness", witness}}},
            {"holds", ok}};
    results.push_back(jr);
    if (cfg.format != "json")
      out << (ok ? "ok" : "FAIL") << " filtrations n=" << n << " even=" << even_ok
          << " odd=" << odd_ok << " strict_nesting=" << strict << "\n";
  }
  return all_ok;
}

bool run_selftest(const RunConfig& cfg, std::ostream& out) {
  FieldCtx base = parse_base_spec(cfg.base, 4);
  bool ok = true;
  auto R = enumerate_residues(base, base->prec);
  for (const auto& a : R)
    for (const auto& b : R) {
      if (!(a + b == b + a) || !(a * b == b * a)) ok = false;
      if (is_unit(a) && !(inv(inv(a)) == a)) ok = false;
      int va = valuation(a), vb = valuation(b);
      if (va != kAbovePrecision && vb != kAbovePrecision && va + vb < base->prec &&
          valuation(a * b) != va + vb)
        ok = false;
    }
  FieldCtx b6 = clone_with_precision(base, 6);
  for (const auto& d : classify_extensions(b6)) {
    ExtCtx E = make_extension(b6, d);
    for (const auto& z : enumerate_E(E.get(), 2)) {
      if (!(conj(conj(z)) == z)) ok = false;
      GaloisData g = galois_data(z);
      if (!(z + g.conj == e_from_base(E.get(), g.trace))) ok = false;
      if (!(z * g.conj == e_from_base(E.get(), g.norm))) ok = false;
    }
  }
  out << (ok ? "ok" : "FAIL") << " selftest base=" << cfg.base << "\n";
  return ok;
}

void apply_config_file(RunConfig& cfg) {
  if (cfg.config_file.empty()) return;
  std::ifstream in(cfg.config_file);
  if (!in) throw Error("cannot open config file " + cfg.config_file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line without '=': " + line);
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "base") cfg.base = v;
    else if (k == "ext") cfg.ext = v;
    else if (k == "suite") cfg.suite = v;
    else if (k == "method") cfg.method = v;
    else if (k == "format") cfg.format = v;
    else if (k == "depth") cfg.depth = std::stoi(v);
    else if (k == "level") cfg.level = std::stoi(v);
    else if (k == "max-level") cfg.max_level = std::stoi(v);
    else if (k == "precision") cfg.precision = std::stoi(v);
    else if (k == "seed") cfg.seed = std::stoull(v);
    else if (k == "jobs") cfg.budgets.jobs = std::stoi(v);
    else if (k == "budget-closure") cfg.budgets.max_closure = std::stoull(v);
    else if (k == "budget-enum") cfg.budgets.max_enum = std::stoull(v);
    else throw Error("unknown config key: " + k);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabilizers of quadratic points over Bruhat-Tits trees"};
  app.name("btstab");
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--base", cfg.base, "base field: q2 | eis:<c0>,<c1> | unram:<c0>,<c1>");
    sub->add_option("--ext", cfg.ext, "extension: unram | eis:<a>,<b>");
    sub->add_option("--precision", cfg.precision, "working precision override");
    sub->add_option("--format", cfg.format, "output format: text | json | dot");
    sub->add_option("--seed", cfg.seed, "seed for randomized spot checks");
    sub->add_option("--jobs", cfg.budgets.jobs, "parallel workers for oracle scans");
    sub->add_option("--budget-closure", cfg.budgets.max_closure, "closure size cap");
    sub->add_option("--budget-enum", cfg.budgets.max_enum, "enumeration size cap");
    sub->add_option("--config", cfg.config_file, "key=value file overriding flags");
  };

  CLI::App* c_ext = app.add_subcommand("extensions", "classify quadratic extensions");
  add_common(c_ext);
  CLI::App* c_tree = app.add_subcommand("tree", "export the tree to DOT or JSON");
  add_common(c_tree);
  c_tree->add_option("--depth", cfg.depth, "tree depth");
  CLI::App* c_stab = app.add_subcommand("stabilizer", "stabilizer of one quadratic point");
  add_common(c_stab);
  c_stab->add_option("--level", cfg.level, "level parameter n");
  c_stab->add_option("--method", cfg.method, "brute | closed | both");
  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
  add_common(c_verify);
  c_verify->add_option("--suite", cfg.suite,
                       "lf | casselman | lemma-j | theorem | trees | filtrations")
      ->required();
  c_verify->add_option("--max-level", cfg.max_level, "largest level parameter");
  CLI::App* c_self = app.add_subcommand("selftest", "ring and extension property suites");
  add_common(c_self);
  app.require_subcommand(1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
    apply_config_file(cfg);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (log_level() >= 1) err << "btstab: dispatching\n";
    if (app.got_subcommand(c_ext)) return run_extensions(cfg, out) ? 0 : 1;
    if (app.got_subcommand(c_tree)) return run_tree(cfg, out) ? 0 : 1;
    if (app.got_subcommand(c_stab)) return run_stabilizer(cfg, out) ? 0 : 1;
    if (app.got_subcommand(c_self)) return run_selftest(cfg, out) ? 0 : 1;
    if (app.got_subcommand(c_verify)) {
      int prec_for_classify = std::max(2 * 4 + 2, 10);
      FieldCtx proto = parse_base_spec(cfg.base, prec_for_classify);
      json results = json::array();
      bool ok = false;
      if (cfg.suite == "theorem") ok = run_suite_theorem(cfg, proto, out, results);
      else if (cfg.suite == "lf") ok = run_suite_lf(cfg, proto, out, results);
      else if (cfg.suite == "casselman") ok = run_suite_casselman(cfg, proto, out, results);
      else if (cfg.suite == "lemma-j") ok = run_suite_lemma_j(cfg, proto, out, results);
      else if (cfg.suite == "trees") ok = run_suite_trees(cfg, proto, out, results);
      else if (cfg.suite == "filtrations") ok = run_suite_filtrations(cfg, proto, out, results);
      else {
        err << "usage error: unknown suite " << cfg.suite << "\n";
        return 2;
      }
      if (cfg.format == "json") out << results.dump(2) << "\n";
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace btstab
