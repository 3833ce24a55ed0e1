#include "novikov/cli.hpp"

#include "novikov/classify.hpp"
#include "novikov/nvk.hpp"
#include "novikov/reps.hpp"
#include "novikov/structure.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <sstream>

namespace novikov {

namespace {

using nlohmann::json;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Result {
  Report report;
  std::optional<NvkDocument> document;
  bool document_only = false;  // catalog LABEL prints just the document
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

NvkDocument load(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) {
    const auto& e = catalog_entry(arg.substr(8));
    if (e.family) return nvk_from_algebra(e.algebra, e.family->matrix, e.family->constraints);
    return nvk_from_algebra(e.algebra);
  }
  return parse_nvk(read_file(arg));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

Assignment parse_set(const std::string& text) {
  Assignment at;
  if (strip(text).empty()) return at;
  for (const auto& part : split(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("--set expects name=value, got '" + part + "'");
    std::string name = strip(part.substr(0, eq));
    try {
      at[name] = Rational::parse(strip(part.substr(eq + 1)));
    } catch (const std::exception&) {
      throw InputError("--set: bad value for '" + name + "'");
    }
  }
  return at;
}

void require_declared(const Assignment& at, const std::vector<const NvkDocument*>& docs) {
  for (const auto& [name, value] : at) {
    bool found = false;
    for (const auto* d : docs)
      for (const auto& p : d->params) found = found || p == name;
    if (!found) throw InputError("--set: unknown parameter '" + name + "'");
  }
}

const NvkAlgebra& pick(const NvkDocument& doc, const std::string& name) {
  if (doc.algebras.empty()) throw InputError("document declares no algebra");
  return name.empty() ? doc.algebras.front() : doc.algebra(name);
}

std::string span_text(const Subspace& s, const std::vector<std::string>& basis) {
  std::string out = "span{";
  for (Eigen::Index j = 0; j < s.dim(); ++j) out += (j ? ", " : "") + format_vector(PVector(s.basis().col(j)), basis);
  return out + "}";
}

template <typename M>
std::string matrix_text(const M& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

QMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(text, ';')) {
    rows.emplace_back();
    for (const auto& x : split(row, ',')) {
      try {
        rows.back().push_back(Rational::parse(strip(x)));
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + strip(x) + "'");
      }
    }
  }
  if (rows.empty() || rows[0].empty()) throw InputError("empty matrix");
  QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InputError("matrix rows have different lengths");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

Subspace parse_span(const std::string& text, const std::vector<std::string>& basis) {
  std::vector<PVector> cols;
  for (const auto& v : split(text, ';'))
    if (!strip(v).empty()) cols.push_back(parse_linear(strip(v), basis));
  PMatrix m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  try {
    return Subspace(m);
  } catch (const std::invalid_argument&) {
    throw InputError("vectors are linearly dependent");
  }
}

void append_prefixed(Report& into, const Report& from, const std::string& prefix) {
  for (auto c : from.checks) {
    c.id = prefix + c.id;
    into.checks.push_back(std::move(c));
  }
}

// The first form of the block as a quadratic algebra. On failure the check_quadratic
// report goes into r and nothing is returned.
std::optional<QuadraticNovikov> quadratic(const NvkDocument& doc, const NvkAlgebra& b, const Assignment& at, Report& r,
                                          const std::string& prefix = {}) {
  if (b.forms.empty()) throw InputError("algebra '" + b.algebra.name() + "' declares no form");
  auto qc = check_quadratic(b.algebra.substitute(at), evaluate(b.forms.front().matrix, at), nvk_constraints(doc, at));
  if (!qc.quadratic) append_prefixed(r, qc.report, prefix);
  return qc.quadratic;
}

std::optional<QuadraticNovikov> concrete(const NvkDocument& doc, const NvkAlgebra& b, const Assignment& at, Report& r) {
  auto q = quadratic(doc, b, at, r);
  if (q && !q->is_concrete()) throw InputError("parameters left free; instantiate them with --set");
  return q;
}

struct Options {
  Assignment at;
  std::string algebra;
};

Result cmd_check(const std::string& file, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  const auto& b = pick(doc, o.algebra);
  NovikovAlgebra a = b.algebra.substitute(o.at);
  res.report = check_novikov(a);
  for (const auto& f : b.forms) {
    auto qc = check_quadratic(a, evaluate(f.matrix, o.at), nvk_constraints(doc, o.at));
    std::string prefix = b.forms.size() > 1 ? f.name + ":" : "";
    for (const auto& c : qc.report.checks)
      if (c.id != "novikov" && !res.report.find(prefix + c.id)) {
        auto copy = c;
        copy.id = prefix + c.id;
        res.report.checks.push_back(copy);
      }
  }
  if (doc.dext && o.algebra.empty()) {
    if (!doc.dext->a1.empty()) quadratic(doc, doc.algebra(doc.dext->a1), o.at, res.report, "A1:");
    if (res.report.passed()) res.report.append(validate_dext(nvk_dext_data(doc, o.at)));
  }
  return res;
}

Result cmd_forms(const std::string& file, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  const auto& b = pick(doc, o.algebra);
  NovikovAlgebra a = b.algebra.substitute(o.at);
  auto& r = res.report;
  auto basis = invariant_form_space(a);
  r.add("form-space", Status::Info, "dimension " + std::to_string(basis.size()));
  if (!basis.empty()) {
    auto fam = make_family(basis);
    r.add("family", Status::Info, matrix_text(fam.matrix));
    auto nd = nondegeneracy_condition(fam);
    // a nondegenerate member exists iff det is not the zero polynomial
    if (nd.det.is_zero())
      r.add("nondegenerate", Status::Info, "det = 0: no nondegenerate member");
    else
      r.add("nondegenerate", Status::Pass, "det = " + nd.det.str());
  } else {
    r.add("nondegenerate", Status::Info, "no invariant form");
  }
  for (const auto& f : b.forms) {
    PMatrix m = evaluate(f.matrix, o.at);
    std::set<std::string> vars;
    for (Eigen::Index i = 0; i < m.size(); ++i)
      for (const auto& v : m.data()[i].variables()) vars.insert(v);
    auto match = compare_families(m, std::vector<std::string>(vars.begin(), vars.end()), basis);
    r.add("stated-form:" + f.name, match.matches ? Status::Pass : Status::Fail, match.detail);
  }
  return res;
}

Result cmd_perp(const std::string& file, const std::string& vectors, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  const auto& b = pick(doc, o.algebra);
  auto q = concrete(doc, b, o.at, res.report);
  if (!q) return res;
  const auto& names = q->algebra.basis();
  Subspace w = parse_span(vectors, names);
  Subspace p = perp(*q, w);
  auto& r = res.report;
  r.add("W", Status::Info, span_text(w, names));
  r.add("perp", Status::Info, span_text(p, names));
  r.add("dimension", w.dim() + p.dim() == q->n() ? Status::Pass : Status::Fail,
        std::to_string(w.dim()) + " + " + std::to_string(p.dim()) + " = " + std::to_string(q->n()));
  r.add("double-perp", same_subspace(perp(*q, p), w) ? Status::Pass : Status::Fail);
  if (subspace_kind(q->algebra, w).kind == SubspaceKind::Ideal)
    r.add("perp-ideal", subspace_kind(q->algebra, p).kind == SubspaceKind::Ideal ? Status::Pass : Status::Fail);
  return res;
}

Result cmd_decompose(const std::string& file, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  auto q = concrete(doc, pick(doc, o.algebra), o.at, res.report);
  if (!q) return res;
  auto d = decompose(*q);
  res.report = d.report;
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    res.report.add("factor-" + std::to_string(i + 1), Status::Info, span_text(d.factors[i], q->algebra.basis()));
  return res;
}

Result cmd_ideals(const std::string& file, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  auto q = concrete(doc, pick(doc, o.algebra), o.at, res.report);
  if (!q) return res;
  auto lines = isotropic_ideal_lines(*q);
  const auto& names = q->algebra.basis();
  auto& r = res.report;
  for (std::size_t i = 0; i < lines.lines.size(); ++i) r.add("line-" + std::to_string(i + 1), Status::Info, span_text(lines.lines[i], names));
  for (std::size_t i = 0; i < lines.cones.size(); ++i)
    r.add("cone-" + std::to_string(i + 1), Status::Info,
          span_text(lines.cones[i].space, names) + ", isotropic where " + lines.cones[i].form.str() + " = 0");
  if (lines.lines.empty() && lines.cones.empty()) r.add("lines", Status::Info, "no isotropic ideal line");
  return res;
}

Result cmd_rep(const std::string& file, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  const auto& b = pick(doc, o.algebra);
  NovikovAlgebra a = b.algebra.substitute(o.at);
  append_prefixed(res.report, check_representation(a, adjoint_rep(a)), "adjoint:");
  append_prefixed(res.report, check_representation(a, dual_star_rep(a)), "dual-star:");
  if (!b.forms.empty()) {
    auto q = quadratic(doc, b, o.at, res.report);
    if (q) {
      auto t = theta_isomorphism(*q);
      append_prefixed(res.report, t.report, "theta:");
      res.report.add("theta", Status::Info, matrix_text(t.theta));
    }
  }
  return res;
}

Result cmd_qf(const std::string& file, const std::string& dtext, bool half, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  auto q = concrete(doc, pick(doc, o.algebra), o.at, res.report);
  if (!q) return res;
  QMatrix d = parse_matrix(dtext);
  if (d.rows() != q->n() || d.cols() != q->n()) throw InputError("--d must be " + std::to_string(q->n()) + " x " + std::to_string(q->n()));
  try {
    auto qf = quasi_frobenius_from_derivation(*q, to_poly(d), half ? QFMode::HalfTwisted : QFMode::Derivation);
    res.report = qf.report;
    res.report.add("omega", Status::Info, matrix_text(qf.omega));
  } catch (const std::domain_error& e) {
    res.report.add(half ? "half-twisted" : "derivation", Status::Fail, e.what());
  }
  return res;
}

Result cmd_dext(const std::string& mode, const std::string& file, const std::string& ideal, const Options& o) {
  Result res;
  auto doc = load(file);
  require_declared(o.at, {&doc});
  auto& r = res.report;
  if (mode == "extract") {
    auto q = concrete(doc, pick(doc, o.algebra), o.at, r);
    if (!q) return res;
    auto ex = extract_dext(*q, parse_span(ideal, q->algebra.basis()));
    r = ex.report;
    r.add("W", Status::Info, "dimension " + std::to_string(ex.data.q()) + (ex.data.A1.algebra.is_trivial() ? ", trivial" : ""));
    r.add("Sperp", Status::Info, span_text(ex.split.Sperp, q->algebra.basis()));
    r.add("sigma", Status::Info, matrix_text(ex.sigma));
    res.document = nvk_from_dext(ex.data);
    return res;
  }
  if (!doc.dext) throw InputError("document has no extend section");
  if (mode == "tstar" && !doc.dext->a1.empty()) throw InputError("tstar expects 'extend by <A2>' without A1");
  if (mode != "tstar" && doc.dext->a1.empty()) throw InputError(mode + " expects 'extend <A1> by <A2>'");
  if (!doc.dext->a1.empty() && !quadratic(doc, doc.algebra(doc.dext->a1), o.at, r, "A1:")) return res;
  DextData data = nvk_dext_data(doc, o.at);
  std::optional<DextBuild> built;
  if (mode == "build1") {
    auto d1 = nvk_dim1_data(data);
    r = check_dim1(data.A1, d1);
    if (r.passed()) {
      auto b = build_dext_dim1(data.A1, d1);
      r.add("matches-general", b.matches_general ? Status::Pass : Status::Fail);
      built = b.build;
    }
  } else {
    r = validate_dext(data);
    if (r.passed()) built = mode == "tstar" ? build_tstar(data.A2, data.tau, data.gamma) : build_dext(data);
  }
  if (built) {
    append_prefixed(r, built->crosscheck, "assembled:");
    ConstraintSet cs = built->quadratic ? built->quadratic->constraints : ConstraintSet{};
    res.document = nvk_from_algebra(built->algebra, built->metric, cs);
  }
  return res;
}

Result cmd_iso(const std::string& f1, const std::string& f2, const std::string& mtext, const Options& o) {
  Result res;
  auto d1 = load(f1), d2 = load(f2);
  require_declared(o.at, {&d1, &d2});
  Assignment a1, a2;
  for (const auto& [k, v] : o.at) {
    if (std::find(d1.params.begin(), d1.params.end(), k) != d1.params.end()) a1[k] = v;
    if (std::find(d2.params.begin(), d2.params.end(), k) != d2.params.end()) a2[k] = v;
  }
  auto q1 = quadratic(d1, pick(d1, o.algebra), a1, res.report, "first:");
  auto q2 = quadratic(d2, pick(d2, o.algebra), a2, res.report, "second:");
  if (!q1 || !q2) return res;
  QMatrix m = parse_matrix(mtext);
  res.report = check_iso_quadratic(*q1, *q2, m).report;
  return res;
}

Result cmd_audit(const std::string& file, const Options& o) {
  Result res;
  auto one = [&](const NovikovAlgebra& a, const std::string& prefix) {
    auto au = degenerate_case_audit(a);
    append_prefixed(res.report, au.report, prefix);
    for (const auto& m : au.matches)
      res.report.add(prefix + "match:" + m.hypothesis, m.degenerate_confirmed ? Status::Pass : Status::Fail, m.detail);
  };
  if (!file.empty()) {
    auto doc = load(file);
    require_declared(o.at, {&doc});
    one(pick(doc, o.algebra).algebra.substitute(o.at), "");
    return res;
  }
  for (const auto& e : catalog())
    if (e.algebra.is_concrete()) one(e.algebra, e.label + ":");
  return res;
}

Result cmd_catalog(const std::string& label) {
  Result res;
  if (label.empty()) {
    for (const auto& e : catalog()) res.report.add(e.label, Status::Info, e.description);
    return res;
  }
  res.document = load("catalog:" + label);
  res.document_only = true;
  res.report.add(label, Status::Info, catalog_entry(label).description);
  return res;
}

json to_json(const Check& c) {
  json j = {{"id", c.id}, {"status", to_string(c.status)}, {"value", c.value}};
  if (!c.witnesses.empty()) {
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back({{"at", w.at}, {"text", w.text}});
    j["witness"] = ws;
    j["violations"] = c.violations;
  }
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Novikov algebras and quadratic Novikov algebras", "nvk"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string set_text, algebra_name, output;
  app.add_flag("--json", as_json, "structured report on stdout");
  app.add_option("--set", set_text, "parameter values, e.g. k=1,t=0");
  app.add_option("--algebra", algebra_name, "algebra block to use (default: the first)");

  std::string file, file2, vectors, dtext, mtext, ideal, label;
  bool half = false;
  auto* check = app.add_subcommand("check", "Novikov axioms, and quadratic validation for each form");
  check->add_option("file", file)->required();
  auto* forms = app.add_subcommand("forms", "invariant symmetric forms and their nondegeneracy condition");
  forms->add_option("file", file)->required();
  auto* perp_cmd = app.add_subcommand("perp", "orthogonal complement of a span");
  perp_cmd->add_option("file", file)->required();
  perp_cmd->add_option("--vectors", vectors, "vectors separated by ';', e.g. \"e1;e2+e3\"")->required();
  auto* dec = app.add_subcommand("decompose", "orthogonal decomposition into nondegenerate ideals");
  dec->add_option("file", file)->required();
  auto* ideals = app.add_subcommand("ideals", "isotropic ideal lines");
  ideals->add_option("file", file)->required();
  auto* rep = app.add_subcommand("rep-check", "adjoint and dual-star representations, theta");
  rep->add_option("file", file)->required();
  auto* qf = app.add_subcommand("qf", "quasi-Frobenius form from a derivation");
  qf->add_option("file", file)->required();
  qf->add_option("--d", dtext, "rows separated by ';', entries by ','")->required();
  qf->add_flag("--half-twisted", half);
  auto* dext = app.add_subcommand("dext", "double extensions");
  dext->require_subcommand(1);
  std::string mode;
  for (const char* m : {"build", "build1", "tstar", "extract"}) {
    auto* sub = dext->add_subcommand(m);
    sub->add_option("file", file)->required();
    sub->add_option("-o,--output", output, "write the resulting document here");
    if (std::string(m) == "extract") sub->add_option("--ideal", ideal, "isotropic ideal, vectors separated by ';'")->required();
    sub->callback([&mode, m] { mode = m; });
  }
  auto* iso = app.add_subcommand("iso", "check a proposed isomorphism of quadratic algebras");
  iso->add_option("file1", file)->required();
  iso->add_option("file2", file2)->required();
  iso->add_option("--matrix", mtext, "coordinates of file1 to coordinates of file2")->required();
  auto* tables = app.add_subcommand("verify-tables", "the 2- and 3-dimensional classification tables");
  auto* audit = app.add_subcommand("audit", "elimination-pattern audit (whole catalog without a file)");
  audit->add_option("file", file);
  auto* cat = app.add_subcommand("catalog", "list catalog entries, or print one as a document");
  cat->add_option("label", label);
  cat->add_option("-o,--output", output);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "dext") command += " " + mode;
  json inputs = json::object();
  if (!file.empty()) inputs["file"] = file;
  if (!file2.empty()) inputs["file2"] = file2;
  if (!set_text.empty()) inputs["set"] = set_text;
  if (!algebra_name.empty()) inputs["algebra"] = algebra_name;
  if (!vectors.empty()) inputs["vectors"] = vectors;
  if (!dtext.empty()) inputs["d"] = dtext;
  if (half) inputs["half_twisted"] = true;
  if (!ideal.empty()) inputs["ideal"] = ideal;
  if (!mtext.empty()) inputs["matrix"] = mtext;
  if (!label.empty()) inputs["label"] = label;
  if (!output.empty()) inputs["output"] = output;

  auto input_error = [&](const std::string& what) {
    if (as_json)
      out << json{{"command", command}, {"inputs", inputs}, {"checks", json::array()}, {"exit", 2}, {"error", what}}.dump(2) << "\n";
    err << "error: " << what << "\n";
    return 2;
  };

  Result res;
  try {
    Options o{parse_set(set_text), algebra_name};
    if (check->parsed()) res = cmd_check(file, o);
    else if (forms->parsed()) res = cmd_forms(file, o);
    else if (perp_cmd->parsed()) res = cmd_perp(file, vectors, o);
    else if (dec->parsed()) res = cmd_decompose(file, o);
    else if (ideals->parsed()) res = cmd_ideals(file, o);
    else if (rep->parsed()) res = cmd_rep(file, o);
    else if (qf->parsed()) res = cmd_qf(file, dtext, half, o);
    else if (dext->parsed()) res = cmd_dext(mode, file, ideal, o);
    else if (iso->parsed()) res = cmd_iso(file, file2, mtext, o);
    else if (tables->parsed()) {
      res.report = verify_theorem_2dim();
      res.report.append(verify_table2());
    } else if (audit->parsed()) res = cmd_audit(file, o);
    else if (cat->parsed()) res = cmd_catalog(label);
  } catch (const std::domain_error& e) {
    res.report.add("error", Status::Fail, e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  }

  if (res.document && !output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) return input_error("cannot write '" + output + "'");
    f << print_nvk(*res.document);
    res.report.add("output", Status::Info, output);
  }
  const int code = res.report.passed() ? 0 : 1;
  if (as_json) {
    json checks = json::array();
    for (const auto& c : res.report.checks) checks.push_back(to_json(c));
    json j = {{"command", command}, {"inputs", inputs}, {"checks", checks}, {"exit", code}};
    if (res.document && output.empty()) j["document"] = print_nvk(*res.document);
    out << j.dump(2) << "\n";
  } else if (res.document_only && output.empty()) {
    out << print_nvk(*res.document);
  } else {
    out << res.report.str();
    if (res.document && output.empty()) out << "\n" << print_nvk(*res.document);
  }
  return code;
}

}  // namespace novikov
