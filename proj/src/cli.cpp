#include "crf/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "crf/case_tables.hpp"
#include "crf/crfields.hpp"
#include "crf/errors.hpp"
#include "crf/flatten.hpp"
#include "crf/quadratic.hpp"

namespace crf {

namespace {

using Json = nlohmann::ordered_json;

// Text lines and the JSON mirror carry the same keys.
struct Report {
  std::ostringstream text;
  Json json = Json::object();

  void kv(const std::string& key, const std::string& value) {
    text << key << ' ' << value << '\n';
    json[key] = value;
  }
  void kv(const std::string& key, bool value) {
    text << key << ' ' << (value ? "true" : "false") << '\n';
    json[key] = value;
  }
  void kv(const std::string& key, long value) {
    text << key << ' ' << value << '\n';
    json[key] = value;
  }
};

struct Options {
  std::string verb;
  std::string input;
  std::string batch;
  bool json = false;
  int order = -1;
  std::string field;
  std::string chi;
  std::string direction;
  int search = -1;
  std::string emit;
  int m = 0;
  std::string case_id;
  std::string params;
  int trunc = -1;
};

std::string vec_text(const std::vector<GaussianRational>& c) {
  std::string s = "(";
  for (size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + format_gaussian(c[k]);
  return s + ")";
}

std::vector<GaussianRational> parse_vector(const std::string& text) {
  std::vector<GaussianRational> out;
  std::string body = text;
  for (char& ch : body)
    if (ch == '(' || ch == ')') ch = ' ';
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_gaussian(item));
  return out;
}

Json terms_json(const Series& s) {
  Json arr = Json::array();
  for (const auto& [e, c] : s.terms())
    arr.push_back({{"exponent", e.raw()}, {"re", format_rational(c.re())}, {"im", format_rational(c.im())}});
  return arr;
}

void verb_classify(const Options&, const std::string& input, Report& rep) {
  Germ g = load_germ(input);
  QuadraticPair p = germ_quadratic(g);
  rep.kv("VARS", static_cast<long>(g.n()));
  rep.text << "A = " << format_matrix(p.A) << "\nB = " << format_matrix(p.B) << '\n';
  rep.json["A"] = format_matrix(p.A);
  rep.json["B"] = format_matrix(p.B);
  FlattenabilityVerdict v = is_hermitianizable(p);
  rep.kv("HERMITIANIZABLE", v.flattenable);
  if (v.lambda) rep.kv("LAMBDA", format_gaussian(*v.lambda));
  if (v.mu_witness) rep.kv("MU_WITNESS", format_gaussian(*v.mu_witness));
  if (v.hermitian_B) rep.kv("HERMITIAN_B", format_matrix(*v.hermitian_B));
  if (g.n() != 2) return;
  CoarseBClass c = coarse_b_class(p);
  rep.kv("B_CLASS", to_string(c.tag));
  if (!c.cosquare_spectrum.empty()) rep.kv("COSQUARE_SPECTRUM", c.cosquare_spectrum);
  auto shape = recognize_b_shape(p.B);
  if (!shape) {
    rep.kv("B_SHAPE", std::string("none"));
  } else {
    rep.kv("B_SHAPE", static_cast<long>(shape->family));
    if (!shape->params.empty()) rep.kv("B_SHAPE_PARAMS", shape->params);
  }
}

void verb_nonminimal(const Options& o, const std::string& input, Report& rep) {
  Germ g = load_germ(input);
  int achievable = g.trunc() + 2;
  int order = o.order < 0 ? achievable : o.order;
  ObstructionReport r = obstruction(g, order);
  rep.kv("ACHIEVABLE_ORDER", static_cast<long>(r.achievable_order));
  rep.kv("ORDER", static_cast<long>(order));
  rep.text << format_terms(r.residual);
  rep.json["residual"] = terms_json(r.residual);
  if (r.first_nonzero) {
    const auto& [e, c] = *r.first_nonzero;
    std::string exps;
    for (size_t k = 0; k < e.raw().size(); ++k) exps += (k ? " " : "") + std::to_string(e.raw()[k]);
    rep.kv("FIRST_OBSTRUCTION", exps + " " + format_gaussian(c));
  } else {
    rep.kv("RESIDUAL_ZERO_TO", static_cast<long>(order));
  }
}

void verb_witness(const Options& o, const std::string& input, Report& rep) {
  Germ g = load_germ(input);
  if (o.field.empty()) throw ParseError("witness requires --field");
  TangentField f = load_field(o.field);
  std::optional<Series> chi;
  if (!o.chi.empty()) chi = load_series(o.chi);
  WitnessCheck w = verify_witness(g, f, chi);
  rep.text << (w.h ? "L(h)=0" : "L(h)!=0") << ' ' << (w.hbar ? "L(conj h)=0" : "L(conj h)!=0");
  rep.json["L(h)=0"] = w.h;
  rep.json["L(conj h)=0"] = w.hbar;
  if (w.chi) {
    rep.text << ' ' << (*w.chi ? "L(chi)=0" : "L(chi)!=0");
    rep.json["L(chi)=0"] = *w.chi;
  }
  rep.text << '\n';
}

void verb_bishop(const Options& o, const std::string& input, Report& rep) {
  Germ g = load_germ(input);
  QuadraticPair p = germ_quadratic(g);
  if (o.direction.empty() && o.search < 0) throw ParseError("bishop requires --c and/or --search");
  if (!o.direction.empty()) {
    auto c = parse_vector(o.direction);
    SliceReport s = bishop_slice(p, c);
    rep.kv("C", vec_text(c));
    rep.kv("ALPHA", format_gaussian(s.alpha));
    rep.kv("GAMMA", format_gaussian(s.gamma));
    rep.kv("LAMBDA_SQ", format_rational(s.lambda_sq));
    rep.kv("ELLIPTIC", s.elliptic);
  }
  if (o.search < 0) return;
  rep.kv("SEARCH_BOUND", static_cast<long>(o.search));
  Json arr = Json::array();
  for (const auto& cand : elliptic_candidates(p, o.search)) {
    Json j = {{"source", cand.source}};
    rep.text << "CANDIDATE " << cand.source;
    if (cand.c.empty()) {
      rep.text << " IRRATIONAL";
      j["direction"] = nullptr;
    } else {
      rep.text << ' ' << vec_text(cand.c);
      j["direction"] = vec_text(cand.c);
    }
    if (cand.slice) {
      rep.text << " ELLIPTIC " << (cand.slice->elliptic ? "true" : "false") << " LAMBDA_SQ "
               << format_rational(cand.slice->lambda_sq);
      j["elliptic"] = cand.slice->elliptic;
      j["lambda_sq"] = format_rational(cand.slice->lambda_sq);
    }
    if (!cand.note.empty()) {
      rep.text << " NOTE " << cand.note;
      j["note"] = cand.note;
    }
    rep.text << '\n';
    arr.push_back(j);
  }
  rep.json["CANDIDATES"] = arr;
}

void verb_jacobian(const Options&, const std::string& input, Report& rep) {
  JacobianReport j = cr_singular_linearization(load_germ(input));
  rep.kv("JACOBIAN", format_matrix(j.J));
  rep.kv("RANK", static_cast<long>(j.rank));
  rep.kv("DIM_BOUND", static_cast<long>(j.dim_bound));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path.string() + "'");
  f << content;
}

void verb_flatten(const Options& o, const std::string& input, Report& rep) {
  Germ g = load_germ(input);
  int order = o.order < 0 ? g.trunc() : o.order;
  FlattenResult res = flatten_to_order(g, order);
  std::filesystem::path dir;
  if (!o.emit.empty()) {
    dir = o.emit;
    std::filesystem::create_directories(dir);
  }
  rep.kv("ORDER", static_cast<long>(order));
  Json steps = Json::array();
  for (const auto& st : res.steps) {
    std::ostringstream kernel_text;
    write_kernel(kernel_text, st.kernel);
    std::string name = "-";
    if (!dir.empty()) {
      name = "kernel_m" + std::to_string(st.m) + ".txt";
      write_file(dir / name, kernel_text.str());
    }
    rep.text << "DEGREE " << st.m << ": KERNEL " << name << ", H_NORMALIZED_ZERO "
             << (st.normalized_zero ? "true" : "false") << '\n';
    for (const auto& [key, c] : st.kernel.coeffs)
      rep.text << "  b " << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << format_rational(c.re()) << ' '
               << format_rational(c.im()) << '\n';
    Json js = {{"degree", st.m}, {"kernel", name}, {"H_NORMALIZED_ZERO", st.normalized_zero}, {"kernel_terms", kernel_text.str()}};
    if (!st.normalized_zero) {
      std::string dump = format_htable(st.remainder, "H'");
      rep.text << dump;
      for (const auto& v : st.violated) rep.text << "VIOLATED " << v << '\n';
      rep.text << "FUNDAMENTAL " << (st.fundamental.holds ? "holds" : "violated") << '\n';
      js["H'"] = dump;
      js["violated"] = st.violated;
      js["fundamental"] = st.fundamental.holds;
      if (!dir.empty()) write_file(dir / ("obstruction_m" + std::to_string(st.m) + ".txt"), dump);
    }
    steps.push_back(js);
  }
  rep.json["steps"] = steps;
  if (res.completed)
    rep.kv("FLATTENED_TO", static_cast<long>(order));
  else
    rep.kv("HALTED_AT", static_cast<long>(res.steps.back().m));
  if (!dir.empty()) {
    std::ostringstream fs;
    write_germ(fs, res.final);
    write_file(dir / "final.germ", fs.str());
    rep.kv("FINAL", (dir / "final.germ").string());
  }
}

void verb_unique(const Options& o, Report& rep) {
  NullspaceResult r = uniqueness_nullspace(o.m, Exec::Parallel);
  rep.kv("M", static_cast<long>(o.m));
  rep.kv("UNKNOWNS", static_cast<long>(r.unknowns));
  rep.kv("ROWS", static_cast<long>(r.rows));
  rep.kv("NULLSPACE_DIM", static_cast<long>(r.dim()));
}

void verb_case(const Options& o, Report& rep) {
  CaseParams p = parse_case_params(o.params);
  int trunc = o.trunc < 0 ? default_trunc() : o.trunc;
  CaseOracle c = case_display_series(o.case_id, p, trunc);
  XYSeries engine = xy_series(c.germ);
  rep.kv("CASE", o.case_id);
  rep.kv("TRUNC", static_cast<long>(trunc));
  const std::pair<const char*, std::pair<const Series*, const Series*>> rows[] = {
      {"X1", {&c.printed.X1, &engine.X1}},
      {"X2", {&c.printed.X2, &engine.X2}},
      {"Y1", {&c.printed.Y1, &engine.Y1}},
      {"Y2", {&c.printed.Y2, &engine.Y2}}};
  bool all = true;
  for (const auto& [name, pr] : rows) {
    Series diff = pr.second->homogeneous_part(2).truncated(2) - *pr.first;
    bool ok = diff.is_zero();
    all = all && ok;
    rep.kv(name, std::string(ok ? "MATCH" : "MISMATCH"));
    for (const auto& [e, v] : diff.terms())
      rep.text << name << " DIFF " << e.str() << ' ' << format_gaussian(v) << '\n';
  }
  if (!all) throw ConsistencyError("engine disagrees with the printed display for case " + o.case_id);
}

struct Outcome {
  int code = 0;
  std::string text;
  Json json;
  std::string error;
};

Outcome run_one(const Options& o, const std::string& input) {
  Outcome out;
  Report rep;
  try {
    if (o.verb == "classify") verb_classify(o, input, rep);
    else if (o.verb == "nonminimal-check") verb_nonminimal(o, input, rep);
    else if (o.verb == "witness") verb_witness(o, input, rep);
    else if (o.verb == "bishop") verb_bishop(o, input, rep);
    else if (o.verb == "jacobian") verb_jacobian(o, input, rep);
    else if (o.verb == "flatten") verb_flatten(o, input, rep);
    else if (o.verb == "unique-check") verb_unique(o, rep);
    else if (o.verb == "case-oracle") verb_case(o, rep);
  } catch (const ParseError& e) {
    out.code = 2;
    out.error = e.what();
  } catch (const PreconditionError& e) {
    out.code = 3;
    out.error = e.what();
  } catch (const ConsistencyError& e) {
    out.code = 4;
    out.error = e.what();
  }
  out.text = rep.text.str();
  out.json = rep.json;
  if (out.code) out.json["error"] = out.error;
  return out;
}

bool takes_germ(const std::string& verb) { return verb != "unique-check" && verb != "case-oracle"; }

// Batch lines: "<germ> [field [chi]]"; relative paths resolve against the list's directory.
std::vector<Options> batch_jobs(const Options& base) {
  std::ifstream in(base.batch);
  if (!in) throw ParseError("cannot open batch list '" + base.batch + "'");
  std::filesystem::path root = std::filesystem::path(base.batch).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return (q.is_absolute() || root.empty()) ? q.string() : (root / q).string();
  };
  std::vector<Options> jobs;
  for (const auto& line : content_lines(in)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    Options j = base;
    j.input = resolve(tok[0]);
    if (tok.size() > 1) j.field = resolve(tok[1]);
    if (tok.size() > 2) j.chi = resolve(tok[2]);
    if (tok.size() > 3) throw ParseError("batch line has too many fields: '" + line + "'");
    jobs.push_back(j);
  }
  return jobs;
}

}  // namespace

int default_trunc() {
  const char* env = std::getenv("CRF_TRUNC_DEFAULT");
  if (!env || !*env) return 8;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 2 || v > 64) throw ParseError("CRF_TRUNC_DEFAULT must be an integer in [2, 64]");
  return static_cast<int>(v);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of CR singular codimension-two germs"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit the report as JSON");

  auto germ_verb = [&](const std::string& name, const std::string& help) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->add_option("germ", o.input, "Germ file");
    sc->add_option("--batch", o.batch, "File listing one input per line; reports follow the listed order");
    sc->add_flag("--json", o.json, "Emit the report as JSON");
    return sc;
  };
  germ_verb("classify", "Quadratic pair, flattenability and coarse class");
  germ_verb("nonminimal-check", "Non-minimality obstruction residual")->add_option("--order", o.order, "Residual order");
  CLI::App* w = germ_verb("witness", "Check a non-minimality witness field");
  w->add_option("--field", o.field, "Field file");
  w->add_option("--chi", o.chi, "Series file for chi");
  CLI::App* b = germ_verb("bishop", "Bishop slice invariants along a direction");
  b->add_option("--c", o.direction, "Direction, e.g. \"1, -4/3\"");
  b->add_option("--search", o.search, "Run the recipe candidates and a grid search with this bound")
      ->expected(0, 1)
      ->default_str("6");
  germ_verb("jacobian", "Linearization of the CR singular locus");
  CLI::App* f = germ_verb("flatten", "Order-by-order formal flattening over the parabolic quadric");
  f->add_option("--order", o.order, "Target order (default: germ truncation)");
  f->add_option("--emit", o.emit, "Directory for kernel, obstruction and final germ files");
  CLI::App* u = app.add_subcommand("unique-check", "Nullspace of the uniqueness system at degree m");
  u->add_option("--m", o.m, "Degree")->required()->check(CLI::Range(3, 64));
  u->add_flag("--json", o.json, "Emit the report as JSON");
  CLI::App* c = app.add_subcommand("case-oracle", "Compare the engine with a printed case display");
  c->add_option("--case", o.case_id, "Case id")->required();
  c->add_option("--params", o.params, "Parameters, e.g. \"a=1, b=1, d=1, u=3/5+4/5 i\"")->required();
  c->add_option("--trunc", o.trunc, "Quadric truncation (default: CRF_TRUNC_DEFAULT or 8)");
  c->add_flag("--json", o.json, "Emit the report as JSON");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  o.verb = app.get_subcommands().front()->get_name();
  if (o.verb == "bishop" && app.get_subcommands().front()->count("--search") && o.search < 0) o.search = 6;

  std::vector<Options> jobs;
  try {
    if (!o.batch.empty()) {
      if (!takes_germ(o.verb)) throw ParseError("--batch applies to verbs that read a germ file");
      jobs = batch_jobs(o);
    } else {
      if (takes_germ(o.verb) && o.input.empty()) throw ParseError("missing germ file");
      jobs.push_back(o);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::vector<Outcome> results(jobs.size());
#pragma omp parallel for schedule(dynamic) if (jobs.size() > 1)
  for (long k = 0; k < static_cast<long>(jobs.size()); ++k) results[k] = run_one(jobs[k], jobs[k].input);

  int code = 0;
  bool batch = !o.batch.empty();
  Json docs = Json::array();
  for (size_t k = 0; k < results.size(); ++k) {
    const Outcome& r = results[k];
    code = std::max(code, r.code);
    if (!r.error.empty()) err << "error" << (batch ? " (" + jobs[k].input + ")" : "") << ": " << r.error << '\n';
    if (o.json) {
      if (batch)
        docs.push_back({{"input", jobs[k].input}, {"exit", r.code}, {"report", r.json}});
      else
        out << r.json.dump(2) << '\n';
    } else {
      if (batch) out << "== " << jobs[k].input << '\n';
      out << r.text;
    }
  }
  if (o.json && batch) out << docs.dump(2) << '\n';
  return code;
}

}  // namespace crf
