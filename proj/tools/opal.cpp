// Command-line front end: every pipeline of the library behind one binary
// with machine-readable JSON/CSV output. Exit codes: 0 = pass/success,
// 1 = a check failed (witnesses are in the report), 2 = usage or input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "opal/algebra.hpp"
#include "opal/families.hpp"
#include "opal/field.hpp"
#include "opal/functors.hpp"
#include "opal/json_io.hpp"
#include "opal/operad.hpp"
#include "opal/series.hpp"
#include "opal/worked_examples.hpp"

namespace {

using namespace opal;

struct Common {
  std::string field = "Q";
  int horizon = 10;
  std::string format = "json";
  std::string out;
  unsigned long seed = 0;
  int threads = 0;
};

// Adds the shared flags and returns the --horizon option so callers can tell
// whether the user set it (the example pipelines have their own defaults).
CLI::Option* add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--field", c.field,
                  "Field: Q, F<p> with p prime, a descriptor file, or inline JSON "
                  "(ignored when --input carries its own field)")
      ->capture_default_str();
  auto* h = cmd->add_option("--horizon", c.horizon, "Degree / arity bound for the computation")
                ->capture_default_str();
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "Seed recorded in the report (all pipelines are exact)")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Cap worker threads (0 = library default)")
      ->capture_default_str();
  return h;
}

void apply_threads(const Common& c) {
#ifdef _OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#else
  (void)c;
#endif
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + c.out);
  f << text;
}

Json envelope(const std::string& command, const Common& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = c.seed;
  return j;
}

void require_json_format(const Common& c, const std::string& command) {
  if (c.format != "json")
    throw Error(command + " reports are JSON only (csv applies to series output)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

// ------------------------------------------------------------- sources

struct OperadSource {
  std::string family;
  int w = 0;  // 0 = family default
  long b = 2;
  std::string b_kind = "trunc";
  std::string input;
  std::string base_change;
};

void add_operad_source(CLI::App* cmd, OperadSource& s) {
  cmd->add_option("--family", s.family, "Built-in family: com, ope, mas, lin_e, lin_o");
  cmd->add_option("--w", s.w, "Family parameter: support period for com, even period for ope");
  cmd->add_option("--b", s.b, "Nilpotency bound of the lin_e / lin_o source algebra")
      ->capture_default_str();
  cmd->add_option("--b-kind", s.b_kind, "lin source shape: trunc (y^{b+1} = 0) or zero")
      ->check(CLI::IsMember({"trunc", "zero"}))
      ->capture_default_str();
  cmd->add_option("--input", s.input, "Operad dump file (JSON) instead of --family");
  cmd->add_option("--base-change", s.base_change,
                  "Tensor the operad (built over its prime field) with this extension field, "
                  "viewing components over the prime field");
}

BDesc make_bdesc(const FieldPtr& f, long b, const std::string& kind) {
  return kind == "zero" ? BDesc::zero_products(f, b) : BDesc::truncated_poly(f, b);
}

OperadPtr resolve_operad(const OperadSource& s, const FieldPtr& f, int horizon) {
  if (!s.input.empty() && !s.family.empty())
    throw Error("provide either --family or --input, not both");
  if (!s.base_change.empty()) {
    OperadSource plain = s;
    plain.base_change.clear();
    return base_change(resolve_operad(plain, f, horizon), field_from_spec(s.base_change));
  }
  if (!s.input.empty()) return operad_from_json(read_json_file(s.input));
  if (s.family == "com") {
    const int w = s.w == 0 ? 1 : s.w;
    if (w < 1) throw Error("--w must be a positive support period for com");
    return make_com(f, horizon, w);
  }
  if (s.family == "ope") {
    const int w = s.w == 0 ? 2 : s.w;
    if (w < 2 || w % 2 != 0) throw Error("--w must be an even period >= 2 for ope");
    return make_ope(f, horizon, w);
  }
  if (s.family == "mas") {
    if (s.w != 0) throw Error("mas takes no --w parameter");
    return make_mas(f, horizon);
  }
  if (s.family == "lin_e") return make_lin_e(make_bdesc(f, s.b, s.b_kind), horizon);
  if (s.family == "lin_o") return make_lin_o(make_bdesc(f, s.b, s.b_kind), horizon);
  if (s.family.empty()) throw Error("provide an operad via --family or --input");
  throw Error("unknown family \"" + s.family + "\" (use com, ope, mas, lin_e, lin_o)");
}

struct AlgebraSource {
  std::string kind;  // poly | bc | kx
  long deg_t = 1;
  long b = 2;
  std::string b_kind = "trunc";
  std::string bc_type = "even";
  std::string input;
};

void add_algebra_source(CLI::App* cmd, AlgebraSource& s) {
  cmd->add_option("--algebra", s.kind, "Built-in algebra: poly, bc, kx");
  cmd->add_option("--deg-t", s.deg_t, "Generator degree of the poly algebra")
      ->capture_default_str();
  cmd->add_option("--b", s.b, "Grading bound of the bc source")->capture_default_str();
  cmd->add_option("--b-kind", s.b_kind, "bc source shape: trunc or zero")
      ->check(CLI::IsMember({"trunc", "zero"}))
      ->capture_default_str();
  cmd->add_option("--bc-type", s.bc_type, "bc type labels: even or odd")
      ->check(CLI::IsMember({"even", "odd"}))
      ->capture_default_str();
  cmd->add_option("--input", s.input, "Algebra file (dense dump or presentation JSON)");
}

AlgebraPtr resolve_algebra(const AlgebraSource& s, const FieldPtr& f, long horizon) {
  if (!s.input.empty() && !s.kind.empty())
    throw Error("provide either --algebra or --input, not both");
  if (!s.input.empty()) return algebra_from_json(read_json_file(s.input));
  if (s.kind == "poly") return poly_algebra(f, s.deg_t);
  if (s.kind == "bc")
    return build_Bc(make_bdesc(f, s.b, s.b_kind), s.bc_type == "odd" ? BcType::Odd : BcType::Even,
                    horizon);
  if (s.kind == "kx") {
    WordRules rules;
    rules.commutative = true;
    rules.squarefree = true;
    return normal_word_algebra("k+kx", f, {{"x", 1}}, rules);
  }
  if (s.kind.empty()) throw Error("provide an algebra via --algebra or --input");
  throw Error("unknown algebra \"" + s.kind + "\" (use poly, bc, kx)");
}

// A series from an operad family, a built-in algebra, or a file holding an
// operad dump, an algebra, or a series. Returns the series with its index
// name ("arity" or "degree").
struct SeriesSource {
  OperadSource op;
  AlgebraSource alg;
  std::string input;
};

void add_series_source(CLI::App* cmd, SeriesSource& s) {
  add_operad_source(cmd, s.op);
  cmd->add_option("--algebra", s.alg.kind, "Built-in algebra: poly, bc, kx");
  cmd->add_option("--deg-t", s.alg.deg_t, "Generator degree of the poly algebra")
      ->capture_default_str();
  cmd->add_option("--bc-type", s.alg.bc_type, "bc type labels: even or odd")
      ->check(CLI::IsMember({"even", "odd"}))
      ->capture_default_str();
}

std::pair<HilbertSeries, std::string> resolve_series(const SeriesSource& s, const FieldPtr& f,
                                                     long horizon) {
  const int sources = (!s.op.family.empty() ? 1 : 0) + (!s.alg.kind.empty() ? 1 : 0) +
                      (!s.op.input.empty() ? 1 : 0);
  if (sources != 1)
    throw Error("provide exactly one series source: --family, --algebra, or --input");
  if (!s.op.family.empty()) {
    auto P = resolve_operad(s.op, f, static_cast<int>(horizon));
    return {P->hilbert(horizon), "arity"};
  }
  if (!s.alg.kind.empty()) {
    auto A = resolve_algebra(s.alg, f, horizon);
    return {A->hilbert(horizon), "degree"};
  }
  const std::string text = read_file(s.op.input);
  if (s.op.input.size() > 4 && s.op.input.substr(s.op.input.size() - 4) == ".csv") {
    const std::string header = text.substr(0, text.find('\n'));
    const std::string index = header.substr(0, header.find(','));
    return {series_from_csv(text), index.empty() ? "degree" : index};
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("malformed JSON in " + s.op.input + ": " + e.what());
  }
  if (j.contains("coeffs") || j.contains("entries"))
    return {series_from_json(j), j.value("index", std::string("degree"))};
  if (j.value("kind", std::string()) == "operad") {
    auto P = operad_from_json(j);
    return {P->hilbert(horizon), "arity"};
  }
  auto A = algebra_from_json(j);
  return {A->hilbert(horizon), "degree"};
}

void emit_series(const Common& c, const std::string& command, const HilbertSeries& h,
                 const std::string& index) {
  if (c.format == "csv") {
    emit(c, series_to_csv(h, index));
    return;
  }
  Json j = envelope(command, c);
  j["horizon"] = c.horizon;
  j["series"] = series_to_json(h, index);
  emit(c, dump_json(j));
}

// ------------------------------------------------------------ commands

int run_family(const Common& c, const OperadSource& src) {
  apply_threads(c);
  auto f = field_from_spec(c.field);
  auto P = resolve_operad(src, f, c.horizon);
  if (c.format == "csv") {
    emit(c, series_to_csv(P->hilbert(c.horizon), "arity"));
    return 0;
  }
  Json j = envelope("family", c);
  j["operad"] = operad_to_json(*P);
  emit(c, dump_json(j));
  return 0;
}

int run_algebra(const Common& c, const AlgebraSource& src) {
  apply_threads(c);
  auto f = field_from_spec(c.field);
  auto A = resolve_algebra(src, f, c.horizon);
  if (c.format == "csv") {
    emit(c, series_to_csv(A->hilbert(c.horizon), "degree"));
    return 0;
  }
  Json j = envelope("algebra", c);
  j["algebra"] = algebra_to_json(*A, c.horizon);
  emit(c, dump_json(j));
  return 0;
}

int run_functor(const Common& c, const std::string& direction, const std::string& input) {
  apply_threads(c);
  require_json_format(c, "functor");
  Json in = read_json_file(input);
  Json j = envelope("functor", c);
  j["direction"] = direction;
  RoundtripReport rt;
  if (direction == "f") {
    if (in.value("kind", std::string()) != "operad")
      throw Error("functor f expects an operad dump as --input");
    auto P = operad_from_json(in);
    auto A = functor_F(P);
    const bool odd = A->has_type_labels() && P->field()->characteristic() != 2;
    rt = roundtrip_operad(P, odd, P->horizon());
    j["image"] = algebra_to_json(*A, P->horizon() - 1);
  } else {
    auto A = algebra_from_json(in);
    const bool odd = direction == "g-atr";
    auto P = odd ? functor_G_Atr(A, c.horizon) : functor_G_Str(A, c.horizon);
    rt = roundtrip_check(A, odd, c.horizon);
    j["image"] = operad_to_json(*P);
  }
  j["roundtrip"] = roundtrip_to_json(rt);
  emit(c, dump_json(j));
  return rt.pass ? 0 : 1;
}

int run_axioms(const Common& c, const OperadSource& src) {
  apply_threads(c);
  require_json_format(c, "axioms");
  auto f = field_from_spec(c.field);
  auto P = resolve_operad(src, f, c.horizon);
  AxiomReport r = check_axioms(*P, c.horizon);
  Json j = envelope("axioms", c);
  j["horizon"] = c.horizon;
  j["name"] = P->name();
  j["axioms"] = axioms_to_json(r);
  emit(c, dump_json(j));
  return r.pass ? 0 : 1;
}

int run_hilbert(const Common& c, const SeriesSource& src) {
  apply_threads(c);
  auto f = field_from_spec(c.field);
  auto [h, index] = resolve_series(src, f, c.horizon);
  emit_series(c, "hilbert", h, index);
  return 0;
}

int run_gkdim(const Common& c, const SeriesSource& src) {
  apply_threads(c);
  require_json_format(c, "gkdim");
  auto f = field_from_spec(c.field);
  auto [h, index] = resolve_series(src, f, c.horizon);
  GkReport r = gk_estimate(h, std::min<long>(c.horizon, h.horizon()));
  Json j = envelope("gkdim", c);
  j["horizon"] = c.horizon;
  j["index"] = index;
  j["gk"] = gk_to_json(r);
  emit(c, dump_json(j));
  return 0;
}

int run_multiplicity(const Common& c, const SeriesSource& src) {
  apply_threads(c);
  require_json_format(c, "multiplicity");
  auto f = field_from_spec(c.field);
  auto [h, index] = resolve_series(src, f, c.horizon);
  MultiplicityReport r = multiplicity(h);
  Json j = envelope("multiplicity", c);
  j["horizon"] = c.horizon;
  j["index"] = index;
  j["multiplicity"] = multiplicity_to_json(r);
  emit(c, dump_json(j));
  return 0;
}

int run_torsion(const Common& c, const AlgebraSource& src, const std::string& side) {
  apply_threads(c);
  require_json_format(c, "torsion");
  auto f = field_from_spec(c.field);
  auto A = resolve_algebra(src, f, c.horizon);
  TorsionReport r = torsion_elements(*A, side == "left" ? Side::Left : Side::Right, c.horizon);
  Json j = envelope("torsion", c);
  j["name"] = A->name();
  j["torsion"] = torsion_to_json(r);
  emit(c, dump_json(j));
  return r.any() ? 1 : 0;
}

// The alpha tower for the built-in algebras: t^s for poly, the unique top
// basis vector of each degree-(b+1)s component for bc, x itself for kx.
std::vector<GradedVec> alpha_tower(const GradedAlgebra& A, const AlgebraSource& src, long count) {
  std::vector<GradedVec> alphas;
  if (src.kind == "poly") {
    for (long s = 1; s <= count; ++s) alphas.push_back(basis_vec(A, s * src.deg_t, 0));
  } else if (src.kind == "bc") {
    for (long s = 1; s <= count; ++s) alphas.push_back(basis_vec(A, s * (src.b + 1), 0));
  } else if (src.kind == "kx") {
    alphas.push_back(basis_vec(A, 1, 0));
  } else {
    throw Error("saturation needs a built-in --algebra (poly, bc, kx)");
  }
  return alphas;
}

int run_saturation(const Common& c, const AlgebraSource& src, long d) {
  apply_threads(c);
  require_json_format(c, "saturation");
  auto f = field_from_spec(c.field);
  const long central_horizon = std::max<long>(c.horizon, d + 1);
  auto A = resolve_algebra(src, f, central_horizon);
  auto alphas = alpha_tower(*A, src, d + 2);
  SaturationReport r = saturation_condition_check(*A, alphas, d, central_horizon);
  Json j = envelope("saturation", c);
  j["d"] = d;
  j["name"] = A->name();
  j["saturation"] = saturation_to_json(r);
  emit(c, dump_json(j));
  return r.pass ? 0 : 1;
}

int run_prime(const Common& c, const OperadSource& src) {
  apply_threads(c);
  require_json_format(c, "prime");
  auto f = field_from_spec(c.field);
  auto P = resolve_operad(src, f, c.horizon);
  PrimeReport r = prime_at_horizon(*P, c.horizon);
  Json j = envelope("prime", c);
  j["horizon"] = c.horizon;
  j["name"] = P->name();
  j["prime"] = prime_to_json(r);
  emit(c, dump_json(j));
  return r.witness_found ? 1 : 0;
}

int run_central(const Common& c, const OperadSource& src, int arity, long basis,
                const std::string& coords) {
  apply_threads(c);
  require_json_format(c, "central");
  auto f = field_from_spec(c.field);
  auto P = resolve_operad(src, f, c.horizon);
  if (arity < 1 || arity > P->horizon()) throw Error("--arity out of range");
  OperadElement x;
  if (!coords.empty()) {
    x.arity = arity;
    Json cj;
    try {
      cj = Json::parse(coords);
    } catch (const Json::parse_error& e) {
      throw Error(std::string("malformed --coords JSON: ") + e.what());
    }
    for (const auto& e : cj) x.coords.push_back(scalar_from_json(e, P->field()));
    if (static_cast<long>(x.coords.size()) != P->dim(arity))
      throw Error("--coords length must match the component dimension");
  } else {
    if (basis < 0 || basis >= P->dim(arity)) throw Error("--basis out of range");
    x = P->basis_element(arity, basis);
  }
  CentralReport r = is_central(*P, x, c.horizon);
  Json j = envelope("central", c);
  j["arity"] = arity;
  j["element"] = P->render(x);
  j["central"] = central_to_json(r);
  emit(c, dump_json(j));
  return r.central ? 0 : 1;
}

int run_classify(const Common& c, const SeriesSource& src) {
  apply_threads(c);
  require_json_format(c, "classify");
  auto f = field_from_spec(c.field);
  auto [h, index] = resolve_series(src, f, c.horizon);
  GrowthReport r = classify_growth(h);
  Json j = envelope("classify", c);
  j["horizon"] = c.horizon;
  j["index"] = index;
  j["growth"] = growth_to_json(r);
  emit(c, dump_json(j));
  return 0;
}

struct ExampleOpts {
  std::string id;
  std::string mode = "custom";
  std::vector<long> schedule = {1, 5, 40};
  std::vector<long> tower = {2, 4, 8, 16, 32, 64};
  long d1 = 1;
  int smax = 3;
};

int run_example(const Common& c, const ExampleOpts& e, bool horizon_set) {
  apply_threads(c);
  require_json_format(c, "example");
  Json j = envelope("example", c);
  if (e.id == "6.1") {
    Ex61Config cfg;
    cfg.tower_dims = e.tower;
    cfg.horizon = horizon_set ? c.horizon : 10000;
    Ex61Report r = example61_series(cfg);
    j["report"] = ex61_to_json(r);
    emit(c, dump_json(j));
    return r.bound_verdict == Cert::True && r.perdegree_verdict == Cert::True ? 0 : 1;
  }
  if (e.id == "6.2") {
    if (e.mode == "symbolic") {
      Ex62SymbolicReport r = example62_symbolic(e.d1, e.smax);
      j["report"] = ex62_symbolic_to_json(r);
      emit(c, dump_json(j));
      return r.pass ? 0 : 1;
    }
    Ex62CustomReport r = example62_custom(e.schedule, horizon_set ? c.horizon : 60);
    j["report"] = ex62_custom_to_json(r);
    emit(c, dump_json(j));
    bool ok = r.e625_verdict == Cert::True && r.sa_rule_ok;
    for (const auto& w : r.windows)
      ok = ok && w.e623_ok && w.e624_ok && w.dims_match_convolution && w.unique_factorization;
    return ok ? 0 : 1;
  }
  if (e.id == "6.3") {
    Ex63Report r = example63_pipeline(horizon_set ? c.horizon : 512);
    j["report"] = ex63_to_json(r);
    emit(c, dump_json(j));
    bool ok = r.dims_all_one && r.saturation.pass && r.base_torsionfree && r.fit_ok;
    for (const auto& cc : r.cancellations) ok = ok && cc.pass && cc.fail_at_bound;
    for (const auto& [i, sr] : r.quotient_saturations) ok = ok && sr.pass;
    for (const auto& [i, tf] : r.quotient_torsionfree) ok = ok && tf;
    return ok ? 0 : 1;
  }
  throw Error("unknown example \"" + e.id + "\" (use 6.1, 6.2, 6.3)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computer algebra for locally finite operads and graded algebras"};
  app.require_subcommand(1);
  int exit_code = 0;

  Common fam_c;
  OperadSource fam_src;
  auto* fam = app.add_subcommand("family", "Dump a built-in operad family (JSON) or its series (CSV)");
  add_common(fam, fam_c);
  add_operad_source(fam, fam_src);
  fam->callback([&] { exit_code = run_family(fam_c, fam_src); });

  Common alg_c;
  AlgebraSource alg_src;
  auto* alg = app.add_subcommand("algebra", "Dump a graded algebra (JSON) or its series (CSV)");
  add_common(alg, alg_c);
  add_algebra_source(alg, alg_src);
  alg->callback([&] { exit_code = run_algebra(alg_c, alg_src); });

  Common fun_c;
  std::string fun_dir, fun_input;
  auto* fun = app.add_subcommand("functor", "Apply f, g-str, or g-atr to a dumped object");
  add_common(fun, fun_c);
  fun->add_option("direction", fun_dir, "f (operad -> algebra), g-str, g-atr (algebra -> operad)")
      ->required()
      ->check(CLI::IsMember({"f", "g-str", "g-atr"}));
  fun->add_option("--input", fun_input, "Operad or algebra dump file")->required();
  fun->callback([&] { exit_code = run_functor(fun_c, fun_dir, fun_input); });

  Common ax_c;
  OperadSource ax_src;
  auto* ax = app.add_subcommand("axioms", "Check the operad axioms exhaustively at the horizon");
  add_common(ax, ax_c);
  add_operad_source(ax, ax_src);
  ax->callback([&] { exit_code = run_axioms(ax_c, ax_src); });

  Common hi_c;
  SeriesSource hi_src;
  auto* hi = app.add_subcommand("hilbert", "Dimension series of a family, algebra, or file");
  add_common(hi, hi_c);
  add_series_source(hi, hi_src);
  hi->callback([&] { exit_code = run_hilbert(hi_c, hi_src); });

  Common gk_c;
  SeriesSource gk_src;
  auto* gk = app.add_subcommand("gkdim", "GK dimension estimate from the partial sums");
  add_common(gk, gk_c);
  add_series_source(gk, gk_src);
  gk->callback([&] { exit_code = run_gkdim(gk_c, gk_src); });

  Common mu_c;
  SeriesSource mu_src;
  auto* mu = app.add_subcommand("multiplicity", "Multiplicity of an eventually periodic series");
  add_common(mu, mu_c);
  add_series_source(mu, mu_src);
  mu->callback([&] { exit_code = run_multiplicity(mu_c, mu_src); });

  Common to_c;
  AlgebraSource to_src;
  std::string to_side = "right";
  auto* to = app.add_subcommand("torsion", "Scan for one-sided annihilated elements");
  add_common(to, to_c);
  add_algebra_source(to, to_src);
  to->add_option("--side", to_side, "left or right")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  to->callback([&] { exit_code = run_torsion(to_c, to_src, to_side); });

  Common sa_c;
  AlgebraSource sa_src;
  long sa_d = 10;
  auto* sa = app.add_subcommand("saturation", "Saturation condition for the built-in alpha towers");
  add_common(sa, sa_c);
  add_algebra_source(sa, sa_src);
  sa->add_option("--d", sa_d, "Degree block bound")->capture_default_str();
  sa->callback([&] { exit_code = run_saturation(sa_c, sa_src, sa_d); });

  Common pr_c;
  OperadSource pr_src;
  auto* pr = app.add_subcommand("prime", "Search principal ideal pairs for an annihilating product");
  add_common(pr, pr_c);
  add_operad_source(pr, pr_src);
  pr->callback([&] { exit_code = run_prime(pr_c, pr_src); });

  Common ce_c;
  OperadSource ce_src;
  int ce_arity = 1;
  long ce_basis = 0;
  std::string ce_coords;
  auto* ce = app.add_subcommand("central", "Check one element for centrality at the horizon");
  add_common(ce, ce_c);
  add_operad_source(ce, ce_src);
  ce->add_option("--arity", ce_arity, "Arity of the element")->capture_default_str();
  ce->add_option("--basis", ce_basis, "Basis index of the element")->capture_default_str();
  ce->add_option("--coords", ce_coords, "Explicit coordinate JSON overriding --basis");
  ce->callback([&] { exit_code = run_central(ce_c, ce_src, ce_arity, ce_basis, ce_coords); });

  Common cl_c;
  SeriesSource cl_src;
  auto* cl = app.add_subcommand("classify", "Growth class from the dimension series");
  add_common(cl, cl_c);
  add_series_source(cl, cl_src);
  cl->callback([&] { exit_code = run_classify(cl_c, cl_src); });

  Common ex_c;
  ExampleOpts ex_opts;
  auto* ex = app.add_subcommand("example", "Run a worked-example pipeline end to end");
  CLI::Option* ex_h = add_common(ex, ex_c);
  ex->add_option("id", ex_opts.id, "6.1, 6.2, or 6.3")
      ->required()
      ->check(CLI::IsMember({"6.1", "6.2", "6.3"}));
  ex->add_option("--mode", ex_opts.mode, "6.2 mode: custom (materialized) or symbolic (certified enclosures)")
      ->check(CLI::IsMember({"custom", "symbolic"}))
      ->capture_default_str();
  ex->add_option("--schedule", ex_opts.schedule, "6.2 custom generator degrees")
      ->delimiter(',')
      ->capture_default_str();
  ex->add_option("--tower", ex_opts.tower, "6.1 tower dimensions")
      ->delimiter(',')
      ->capture_default_str();
  ex->add_option("--d1", ex_opts.d1, "6.2 symbolic first generator degree")->capture_default_str();
  ex->add_option("--smax", ex_opts.smax, "6.2 symbolic stage count")->capture_default_str();
  ex->callback([&] { exit_code = run_example(ex_c, ex_opts, ex_h->count() > 0); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
