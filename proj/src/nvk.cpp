#include "novikov/nvk.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace novikov {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

std::vector<Token> split_ws(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    out.push_back({s.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

// trimmed [b, e) of s
std::pair<std::size_t, std::size_t> trim(const std::string& s, std::size_t b, std::size_t e) {
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {b, e};
}

// throws std::invalid_argument unless p is a linear form in `basis`
PVector linear_part(const Poly& p, const std::vector<std::string>& basis) {
  std::set<std::string> names(basis.begin(), basis.end());
  PVector v = PVector::Zero(static_cast<Eigen::Index>(basis.size()));
  Poly rest = p;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (p.degree_in(basis[k]) > 1) throw std::invalid_argument("expression is not linear in the basis");
    auto cs = p.coefficients_in(basis[k]);
    if (cs.size() < 2) continue;
    for (const auto& var : cs[1].variables())
      if (names.count(var)) throw std::invalid_argument("expression is not linear in the basis");
    v(static_cast<Eigen::Index>(k)) = cs[1];
    rest -= cs[1] * Poly::variable(basis[k]);
  }
  if (!rest.is_zero()) throw std::invalid_argument("linear expression has a term without a basis vector");
  return v;
}

enum class Section { None, Product, Form, Map, Tau };
enum class Target { Scalar, A1, Dual, Own };

struct Pending {
  Target target;
  std::size_t block;  // algebra block for products and forms
  PVector* vec = nullptr;
  Poly* scalar = nullptr;
  Poly* mirror = nullptr;  // symmetric partner
  std::size_t form = SIZE_MAX, fi = 0, fj = 0;  // form entries by index; blocks may reallocate
  std::string rhs;
  std::size_t line, col;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NvkDocument run() {
    std::size_t line_no = 0, pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      std::string line(text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      handle(line, line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    finish();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what) { throw NvkError(line, col, what); }

  NvkAlgebra& block(std::size_t line, std::size_t col) {
    if (doc_.algebras.empty()) fail(line, col, "no algebra declared yet");
    return doc_.algebras.back();
  }

  void handle(const std::string& line, std::size_t no) {
    auto toks = split_ws(line);
    if (toks.empty()) return;
    const std::string& head = toks[0].text;
    if (head == "algebra") return declare_algebra(toks, no);
    if (head == "basis") return declare_basis(toks, no);
    if (head == "params:" || (head == "params" && toks.size() > 1 && toks[1].text == ":")) return declare_params(line, toks, no);
    if (head == "constraints:" || head == "constraints") return declare_constraints(line, toks, no);
    if (head == "product:") {
      auto& b = block(no, toks[0].col);
      if (!basis_set_) fail(no, toks[0].col, "product section before basis");
      section_ = Section::Product;
      (void)b;
      return;
    }
    if (head == "form") return open_form(toks, no);
    if (head == "map") return open_map(toks, no);
    if (head == "tau:") {
      if (!doc_.dext) fail(no, toks[0].col, "tau section before extend");
      section_ = Section::Tau;
      return;
    }
    if (head == "extend") return declare_extend(toks, no);
    switch (section_) {
      case Section::Product: return product_line(line, no);
      case Section::Form:
      case Section::Map:
      case Section::Tau: return keyed_line(line, no);
      case Section::None: break;
    }
    fail(no, toks[0].col, "unexpected '" + head + "'");
  }

  void declare_algebra(const std::vector<Token>& t, std::size_t no) {
    if (t.size() != 4 || t[2].text != "dim") fail(no, t[0].col, "expected 'algebra <name> dim <n>'");
    if (doc_.dext) fail(no, t[0].col, "algebra declared after extend");
    for (const auto& a : doc_.algebras)
      if (a.algebra.name() == t[1].text) fail(no, t[1].col, "duplicate algebra name '" + t[1].text + "'");
    std::size_t n = 0;
    for (char c : t[3].text)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(no, t[3].col, "dimension must be a nonnegative integer");
    n = std::stoul(t[3].text);
    pending_dim_ = n;
    doc_.algebras.push_back({NovikovAlgebra(t[1].text, {}), {}});
    basis_set_ = false;
    section_ = Section::None;
  }

  void declare_basis(const std::vector<Token>& t, std::size_t no) {
    auto& b = block(no, t[0].col);
    if (basis_set_) fail(no, t[0].col, "basis declared twice");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!is_identifier(t[i].text)) fail(no, t[i].col, "invalid basis name '" + t[i].text + "'");
      if (!seen.insert(t[i].text).second) fail(no, t[i].col, "duplicate basis name '" + t[i].text + "'");
      names.push_back(t[i].text);
    }
    if (names.size() != pending_dim_)
      fail(no, t[0].col, "dimension mismatch: dim " + std::to_string(pending_dim_) + " but " + std::to_string(names.size()) + " basis names");
    std::string name = b.algebra.name();
    b.algebra = NovikovAlgebra(name, names);
    basis_set_ = true;
    seen_products_.clear();
    section_ = Section::None;
  }

  void declare_params(const std::string& line, const std::vector<Token>& t, std::size_t no) {
    std::size_t first = t[0].text == "params:" ? 1 : 2;
    (void)line;
    for (std::size_t i = first; i < t.size(); ++i) {
      if (!is_identifier(t[i].text)) fail(no, t[i].col, "invalid parameter name '" + t[i].text + "'");
      for (const auto& p : doc_.params)
        if (p == t[i].text) fail(no, t[i].col, "duplicate parameter '" + p + "'");
      doc_.params.push_back(t[i].text);
      param_pos_[t[i].text] = {no, t[i].col};
    }
    section_ = Section::None;
  }

  void declare_constraints(const std::string& line, const std::vector<Token>& t, std::size_t no) {
    std::size_t start = line.find(':', t[0].col - 1);
    if (start == std::string::npos) fail(no, t[0].col, "expected 'constraints:'");
    ++start;
    while (start < line.size()) {
      std::size_t comma = line.find(',', start);
      std::size_t end = comma == std::string::npos ? line.size() : comma;
      auto [b, e] = trim(line, start, end);
      if (b < e) {
        std::size_t ne = line.find("!=", b);
        if (ne == std::string::npos || ne >= e) fail(no, b + 1, "expected '<poly> != 0'");
        auto [zb, ze] = trim(line, ne + 2, e);
        if (line.substr(zb, ze - zb) != "0") fail(no, zb + 1, "expected '!= 0'");
        auto [pb, pe] = trim(line, b, ne);
        constraint_text_.push_back({line.substr(pb, pe - pb), no, pb + 1});
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    section_ = Section::None;
  }

  void open_form(const std::vector<Token>& t, std::size_t no) {
    auto& b = block(no, t[0].col);
    if (!basis_set_) fail(no, t[0].col, "form before basis");
    if (t.size() != 2 || t[1].text.size() < 2 || t[1].text.back() != ':') fail(no, t[0].col, "expected 'form <name>:'");
    std::string name = t[1].text.substr(0, t[1].text.size() - 1);
    if (!is_identifier(name)) fail(no, t[1].col, "invalid form name '" + name + "'");
    for (const auto& f : b.forms)
      if (f.name == name) fail(no, t[1].col, "duplicate form '" + name + "'");
    b.forms.push_back({name, PMatrix::Zero(b.algebra.n(), b.algebra.n())});
    seen_keys_.clear();
    key_name_ = name;
    section_ = Section::Form;
  }

  void declare_extend(const std::vector<Token>& t, std::size_t no) {
    if (doc_.dext) fail(no, t[0].col, "second extend");
    std::string a1, a2;
    std::size_t c1 = 0, c2 = 0;
    if (t.size() == 4 && t[2].text == "by") {
      a1 = t[1].text, c1 = t[1].col, a2 = t[3].text, c2 = t[3].col;
    } else if (t.size() == 3 && t[1].text == "by") {
      a2 = t[2].text, c2 = t[2].col;
    } else {
      fail(no, t[0].col, "expected 'extend [<A1>] by <A2>'");
    }
    auto find = [&](const std::string& name, std::size_t col) -> const NvkAlgebra& {
      for (const auto& a : doc_.algebras)
        if (a.algebra.name() == name) return a;
      fail(no, col, "unknown algebra '" + name + "'");
    };
    if (a1 == a2) fail(no, c2, "A1 and A2 must be different algebras");
    const auto& A2 = find(a2, c2);
    std::size_t q = 0;
    if (!a1.empty()) {
      const auto& A1 = find(a1, c1);
      if (A1.forms.empty()) fail(no, c1, "A1 needs a form");
      q = A1.algebra.dim();
      a1_names_ = A1.algebra.basis();
    }
    const std::size_t p = A2.algebra.dim();
    a2_names_ = A2.algebra.basis();
    dual_names_.clear();
    for (const auto& n : a2_names_) dual_names_.push_back(n + "star");
    NvkDext d;
    d.a1 = a1;
    d.a2 = a2;
    const auto pi = static_cast<Eigen::Index>(p), qi = static_cast<Eigen::Index>(q);
    d.tau = PMatrix::Zero(pi, pi);
    d.mu.assign(p, PMatrix::Zero(qi, qi));
    d.muP.assign(p, PMatrix::Zero(qi, qi));
    d.phi = BilinearTable(q, q, pi);
    d.v = BilinearTable(p, q, pi);
    d.vP = BilinearTable(q, p, pi);
    d.lambda = BilinearTable(p, p, qi);
    d.gamma = BilinearTable(p, p, pi);
    doc_.dext = std::move(d);
    section_ = Section::None;
  }

  void open_map(const std::vector<Token>& t, std::size_t no) {
    if (!doc_.dext) fail(no, t[0].col, "map section before extend");
    static const std::set<std::string> known = {"mu", "muP", "phi", "v", "vP", "lambda", "gamma"};
    if (t.size() != 2 || t[1].text.size() < 2 || t[1].text.back() != ':') fail(no, t[0].col, "expected 'map <name>:'");
    std::string name = t[1].text.substr(0, t[1].text.size() - 1);
    if (!known.count(name)) fail(no, t[1].col, "unknown map '" + name + "'");
    if (!opened_maps_.insert(name).second) fail(no, t[1].col, "map '" + name + "' given twice");
    seen_keys_.clear();
    key_name_ = name;
    section_ = Section::Map;
  }

  std::size_t index_in(const std::vector<std::string>& names, const std::string& id, std::size_t no, std::size_t col) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == id) return i;
    fail(no, col, "unknown identifier '" + id + "'");
  }

  void product_line(const std::string& line, std::size_t no) {
    auto& b = block(no, 1);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(no, 1, "expected '<id> * <id> = <linexpr>'");
    std::size_t star = line.find('*');
    if (star == std::string::npos || star > eq) fail(no, 1, "expected '<id> * <id> = <linexpr>'");
    auto [lb, le] = trim(line, 0, star);
    auto [rb, re] = trim(line, star + 1, eq);
    std::string x = line.substr(lb, le - lb), y = line.substr(rb, re - rb);
    std::size_t i = index_in(b.algebra.basis(), x, no, lb + 1), j = index_in(b.algebra.basis(), y, no, rb + 1);
    if (!seen_products_.insert({i, j}).second) fail(no, lb + 1, "duplicate product rule " + x + " * " + y);
    auto [vb, ve] = trim(line, eq + 1, line.size());
    b.algebra.set_product(i, j, PVector::Zero(b.algebra.n()));
    products_.push_back({doc_.algebras.size() - 1, i, j, line.substr(vb, ve - vb), no, vb + 1});
  }

  void keyed_line(const std::string& line, std::size_t no) {
    std::size_t eq = line.find('=');
    std::size_t open = line.find('('), comma = line.find(','), close = line.find(')');
    if (eq == std::string::npos || open == std::string::npos || comma == std::string::npos || close == std::string::npos ||
        !(open < comma && comma < close && close < eq))
      fail(no, 1, "expected '" + key_name_ + "(<id>,<id>) = <value>'");
    auto [nb, ne] = trim(line, 0, open);
    std::string name = line.substr(nb, ne - nb);
    std::string want = section_ == Section::Tau ? "tau" : key_name_;
    if (section_ == Section::Form && name == "B") name = want;
    if (name != want) fail(no, nb + 1, "expected '" + want + "(', got '" + name + "('");
    auto [xb, xe] = trim(line, open + 1, comma);
    auto [yb, ye] = trim(line, comma + 1, close);
    auto [tb, te] = trim(line, close + 1, eq);
    if (tb != te) fail(no, tb + 1, "unexpected text before '='");
    std::string x = line.substr(xb, xe - xb), y = line.substr(yb, ye - yb);
    auto [vb, ve] = trim(line, eq + 1, line.size());
    std::string rhs = line.substr(vb, ve - vb);
    const std::size_t col = vb + 1;
    if (section_ == Section::Form) {
      auto& b = doc_.algebras.back();
      std::size_t i = index_in(b.algebra.basis(), x, no, xb + 1), j = index_in(b.algebra.basis(), y, no, yb + 1);
      key(std::min(i, j), std::max(i, j), no, nb + 1);
      pending_.push_back({Target::Scalar, doc_.algebras.size() - 1, nullptr, nullptr, nullptr, b.forms.size() - 1, i, j, rhs, no, col});
      return;
    }
    auto& d = *doc_.dext;
    if (section_ == Section::Tau) {
      std::size_t i = index_in(a2_names_, x, no, xb + 1), j = index_in(a2_names_, y, no, yb + 1);
      key(std::min(i, j), std::max(i, j), no, nb + 1);
      pending_.push_back({Target::Scalar, 0, nullptr, &d.tau(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                          &d.tau(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)), SIZE_MAX, 0, 0, rhs, no, col});
      return;
    }
    if (key_name_ == "mu" || key_name_ == "muP") {
      std::size_t a = index_in(a2_names_, x, no, xb + 1), i = index_in(a1_names_, y, no, yb + 1);
      key(a, i, no, nb + 1);
      auto& m = (key_name_ == "mu" ? d.mu : d.muP)[a];
      // column i holds the image of the i-th A1 basis vector
      mu_targets_.push_back({&m, i, rhs, no, col});
      return;
    }
    BilinearTable* t = nullptr;
    const std::vector<std::string>*rows = nullptr, *cols = nullptr;
    Target target = Target::Dual;
    if (key_name_ == "phi") t = &d.phi, rows = &a1_names_, cols = &a1_names_;
    if (key_name_ == "v") t = &d.v, rows = &a2_names_, cols = &a1_names_;
    if (key_name_ == "vP") t = &d.vP, rows = &a1_names_, cols = &a2_names_;
    if (key_name_ == "lambda") t = &d.lambda, rows = &a2_names_, cols = &a2_names_, target = Target::A1;
    if (key_name_ == "gamma") t = &d.gamma, rows = &a2_names_, cols = &a2_names_;
    std::size_t i = index_in(*rows, x, no, xb + 1), j = index_in(*cols, y, no, yb + 1);
    key(i, j, no, nb + 1);
    pending_.push_back({target, 0, &(*t)(i, j), nullptr, nullptr, SIZE_MAX, 0, 0, rhs, no, col});
  }

  void key(std::size_t i, std::size_t j, std::size_t no, std::size_t col) {
    if (!seen_keys_.insert({i, j}).second) fail(no, col, "duplicate entry in '" + key_name_ + "'");
  }

  Poly scalar(const std::string& rhs, std::size_t no, std::size_t col, const std::set<std::string>& extra = {}) {
    ParsedPoly p;
    try {
      p = parse_poly(rhs);
    } catch (const SyntaxError& e) {
      fail(no, col + e.offset(), e.what());
    }
    for (const auto& [id, off] : p.identifiers)
      if (!params_.count(id) && !extra.count(id)) fail(no, col + off, "unknown identifier '" + id + "'");
    return p.value;
  }

  PVector linear(const std::string& rhs, const std::vector<std::string>& basis, std::size_t no, std::size_t col) {
    std::set<std::string> names(basis.begin(), basis.end());
    Poly p = scalar(rhs, no, col, names);
    try {
      return linear_part(p, basis);
    } catch (const std::invalid_argument& e) {
      fail(no, col, e.what());
    }
  }

  void finish() {
    if (!doc_.algebras.empty() && !basis_set_ && pending_dim_ > 0)
      throw NvkError(1, 1, "algebra '" + doc_.algebras.back().algebra.name() + "' has no basis line");
    params_ = std::set<std::string>(doc_.params.begin(), doc_.params.end());
    for (const auto& a : doc_.algebras)
      for (const auto& n : a.algebra.basis())
        if (params_.count(n)) {
          auto [l, c] = param_pos_[n];
          throw NvkError(l, c, "parameter '" + n + "' collides with a basis name");
        }
    for (const auto& [text, no, col] : constraint_text_) {
      Poly p = scalar(text, no, col);
      if (p.is_zero()) fail(no, col, "constraint is identically zero");
      doc_.constraints.add(p);
    }
    for (const auto& pr : products_) {
      auto& a = doc_.algebras[pr.block].algebra;
      a.set_product(pr.i, pr.j, linear(pr.rhs, a.basis(), pr.line, pr.col));
    }
    for (auto& pd : pending_) {
      if (pd.target == Target::Scalar) {
        Poly v = scalar(pd.rhs, pd.line, pd.col);
        if (pd.form != SIZE_MAX) {
          auto& m = doc_.algebras[pd.block].forms[pd.form].matrix;
          pd.scalar = &m(static_cast<Eigen::Index>(pd.fi), static_cast<Eigen::Index>(pd.fj));
          pd.mirror = &m(static_cast<Eigen::Index>(pd.fj), static_cast<Eigen::Index>(pd.fi));
        }
        *pd.scalar = v;
        *pd.mirror = v;
      } else {
        *pd.vec = linear(pd.rhs, pd.target == Target::A1 ? a1_names_ : dual_names_, pd.line, pd.col);
      }
    }
    for (auto& m : mu_targets_) m.matrix->col(static_cast<Eigen::Index>(m.column)) = linear(m.rhs, a1_names_, m.line, m.col);
    for (auto& b : doc_.algebras) {
      std::set<std::string> used;
      for (std::size_t i = 0; i < b.algebra.dim(); ++i)
        for (std::size_t j = 0; j < b.algebra.dim(); ++j)
          for (Eigen::Index k = 0; k < b.algebra.n(); ++k)
            for (const auto& v : b.algebra.product(i, j)(k).variables()) used.insert(v);
      b.algebra.params.clear();
      for (const auto& p : doc_.params)
        if (used.count(p)) b.algebra.params.push_back(p);
      ConstraintSet cs;
      for (const auto& p : doc_.constraints.polys()) {
        bool inside = true;
        for (const auto& v : p.variables()) inside = inside && used.count(v);
        if (inside) cs.add(p);
      }
      b.algebra.constraints = cs;
    }
  }

  struct ProductPending {
    std::size_t block, i, j;
    std::string rhs;
    std::size_t line, col;
  };
  struct MuPending {
    PMatrix* matrix;
    std::size_t column;
    std::string rhs;
    std::size_t line, col;
  };
  struct ConstraintText {
    std::string text;
    std::size_t line, col;
  };

  std::string_view text_;
  NvkDocument doc_;
  Section section_ = Section::None;
  std::size_t pending_dim_ = 0;
  bool basis_set_ = false;
  std::set<std::pair<std::size_t, std::size_t>> seen_products_, seen_keys_;
  std::set<std::string> opened_maps_;
  std::string key_name_;
  std::vector<std::string> a1_names_, a2_names_, dual_names_;
  std::vector<ProductPending> products_;
  std::vector<Pending> pending_;
  std::vector<MuPending> mu_targets_;
  std::vector<ConstraintText> constraint_text_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> param_pos_;
  std::set<std::string> params_;
};

void print_table(std::ostringstream& os, const char* name, const BilinearTable& t, const std::vector<std::string>& rows,
                 const std::vector<std::string>& cols, const std::vector<std::string>& target) {
  if (t.is_zero()) return;
  os << "map " << name << ":\n";
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j)
      if (!is_zero(t(i, j))) os << name << "(" << rows[i] << "," << cols[j] << ") = " << format_vector(t(i, j), target) << "\n";
}

}  // namespace

const NvkAlgebra& NvkDocument::algebra(const std::string& name) const {
  for (const auto& a : algebras)
    if (a.algebra.name() == name) return a;
  throw std::invalid_argument("no algebra named '" + name + "'");
}

NvkDocument parse_nvk(std::string_view text) {
  return Parser(text).run();
}

std::string print_nvk(const NvkDocument& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& b : doc.algebras) {
    if (!first) os << "\n";
    first = false;
    const auto& a = b.algebra;
    os << "algebra " << a.name() << " dim " << a.dim() << "\n";
    os << "basis";
    for (const auto& n : a.basis()) os << " " << n;
    os << "\n";
    bool any = false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (is_zero(a.product(i, j))) continue;
        if (!any) os << "product:\n";
        any = true;
        os << a.basis()[i] << " * " << a.basis()[j] << " = " << format_vector(a.product(i, j), a.basis()) << "\n";
      }
    for (const auto& f : b.forms) {
      os << "form " << f.name << ":\n";
      for (Eigen::Index i = 0; i < f.matrix.rows(); ++i)
        for (Eigen::Index j = i; j < f.matrix.cols(); ++j)
          if (!f.matrix(i, j).is_zero())
            os << f.name << "(" << a.basis()[static_cast<std::size_t>(i)] << "," << a.basis()[static_cast<std::size_t>(j)]
               << ") = " << f.matrix(i, j).str() << "\n";
    }
  }
  if (!doc.params.empty()) {
    os << "\nparams:";
    for (const auto& p : doc.params) os << " " << p;
    os << "\n";
  }
  if (!doc.constraints.empty()) {
    os << "constraints: ";
    const auto& ps = doc.constraints.polys();
    for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << ps[i].str() << " != 0";
    os << "\n";
  }
  if (doc.dext) {
    const auto& d = *doc.dext;
    const auto& a2 = doc.algebra(d.a2).algebra.basis();
    std::vector<std::string> a1, dual;
    if (!d.a1.empty()) a1 = doc.algebra(d.a1).algebra.basis();
    for (const auto& n : a2) dual.push_back(n + "star");
    os << "\nextend " << (d.a1.empty() ? "" : d.a1 + " ") << "by " << d.a2 << "\n";
    if (!is_zero(d.tau)) {
      os << "tau:\n";
      for (Eigen::Index i = 0; i < d.tau.rows(); ++i)
        for (Eigen::Index j = i; j < d.tau.cols(); ++j)
          if (!d.tau(i, j).is_zero())
            os << "tau(" << a2[static_cast<std::size_t>(i)] << "," << a2[static_cast<std::size_t>(j)] << ") = " << d.tau(i, j).str() << "\n";
    }
    for (const auto& [name, ms] : {std::pair{"mu", &d.mu}, std::pair{"muP", &d.muP}}) {
      bool any = false;
      for (std::size_t a = 0; a < ms->size(); ++a)
        for (Eigen::Index i = 0; i < (*ms)[a].cols(); ++i) {
          PVector col = (*ms)[a].col(i);
          if (is_zero(col)) continue;
          if (!any) os << "map " << name << ":\n";
          any = true;
          os << name << "(" << a2[a] << "," << a1[static_cast<std::size_t>(i)] << ") = " << format_vector(col, a1) << "\n";
        }
    }
    print_table(os, "phi", d.phi, a1, a1, dual);
    print_table(os, "v", d.v, a2, a1, dual);
    print_table(os, "vP", d.vP, a1, a2, dual);
    print_table(os, "lambda", d.lambda, a2, a2, a1);
    print_table(os, "gamma", d.gamma, a2, a2, dual);
  }
  return os.str();
}

NvkDocument nvk_from_algebra(const NovikovAlgebra& a, const std::optional<PMatrix>& metric, const ConstraintSet& constraints) {
  NvkDocument doc;
  NvkAlgebra b{a, {}};
  std::set<std::string> params(a.params.begin(), a.params.end());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (Eigen::Index k = 0; k < a.n(); ++k)
        for (const auto& v : a.product(i, j)(k).variables()) params.insert(v);
  if (metric) {
    b.forms.push_back({"B", *metric});
    for (Eigen::Index i = 0; i < metric->size(); ++i)
      for (const auto& v : metric->data()[i].variables()) params.insert(v);
  }
  for (const auto& v : a.constraints.variables()) params.insert(v);
  for (const auto& v : constraints.variables()) params.insert(v);
  doc.algebras.push_back(std::move(b));
  doc.params.assign(params.begin(), params.end());
  doc.constraints = a.constraints;
  doc.constraints.merge(constraints);
  return parse_nvk(print_nvk(doc));
}

ConstraintSet nvk_constraints(const NvkDocument& doc, const Assignment& at) {
  ConstraintSet cs;
  for (const auto& p : doc.constraints.polys()) {
    Poly v = p.substitute(at);
    if (v.is_zero()) throw std::invalid_argument("--set violates " + p.str() + " != 0");
    if (!v.is_constant()) cs.add(v);
  }
  return cs;
}

PVector parse_linear(std::string_view text, const std::vector<std::string>& basis) {
  ParsedPoly p;
  try {
    p = parse_poly(text);
  } catch (const SyntaxError& e) {
    throw NvkError(1, e.offset() + 1, e.what());
  }
  std::set<std::string> names(basis.begin(), basis.end());
  for (const auto& [id, off] : p.identifiers)
    if (!names.count(id)) throw NvkError(1, off + 1, "unknown identifier '" + id + "'");
  try {
    return linear_part(p.value, basis);
  } catch (const std::invalid_argument& e) {
    throw NvkError(1, 1, e.what());
  }
}

QuadraticNovikov nvk_quadratic(const NvkDocument& doc, const NvkAlgebra& block, const Assignment& at, const std::string& form) {
  if (block.forms.empty()) throw std::invalid_argument("algebra '" + block.algebra.name() + "' declares no form");
  const NvkForm* f = &block.forms.front();
  if (!form.empty()) {
    f = nullptr;
    for (const auto& x : block.forms)
      if (x.name == form) f = &x;
    if (!f) throw std::invalid_argument("no form named '" + form + "'");
  }
  ConstraintSet cs = nvk_constraints(doc, at);
  auto q = check_quadratic(block.algebra.substitute(at), evaluate(f->matrix, at), cs);
  if (!q.quadratic) {
    // keep the structure so callers can report; check_quadratic's report explains the failure
    return QuadraticNovikov{block.algebra.substitute(at), evaluate(f->matrix, at), cs, {}};
  }
  return *q.quadratic;
}

namespace {

PVector eval_vec(const PVector& v, const Assignment& at) {
  return v.unaryExpr([&](const Poly& p) { return p.substitute(at); });
}

BilinearTable eval_table(BilinearTable t, const Assignment& at) {
  for (auto& v : t.at) v = eval_vec(v, at);
  return t;
}

}  // namespace

DextData nvk_dext_data(const NvkDocument& doc, const Assignment& at) {
  if (!doc.dext) throw std::invalid_argument("document has no extend section");
  const auto& x = *doc.dext;
  QuadraticNovikov a1{NovikovAlgebra("0", {}), PMatrix(0, 0), {}, {}};
  if (!x.a1.empty()) a1 = nvk_quadratic(doc, doc.algebra(x.a1), at);
  DextData d = DextData::zero(a1, doc.algebra(x.a2).algebra.substitute(at));
  d.tau = evaluate(x.tau, at);
  for (std::size_t a = 0; a < d.p(); ++a) {
    d.mu[a] = evaluate(x.mu[a], at);
    d.muP[a] = evaluate(x.muP[a], at);
  }
  d.phi = eval_table(x.phi, at);
  d.v = eval_table(x.v, at);
  d.vP = eval_table(x.vP, at);
  d.lambda = eval_table(x.lambda, at);
  d.gamma = eval_table(x.gamma, at);
  return d;
}

Dim1DextData nvk_dim1_data(const DextData& d) {
  if (d.p() != 1) throw std::invalid_argument("build1 needs a 1-dimensional A2");
  Dim1DextData o;
  const std::size_t q = d.q();
  const auto qi = static_cast<Eigen::Index>(q);
  o.name = d.A2.basis()[0];
  o.k = d.A2.product(0, 0)(0);
  o.alpha = d.lambda(0, 0);
  o.Q1 = d.mu[0];
  o.Q2 = d.muP[0];
  o.h = PMatrix::Zero(qi, qi);
  o.f = PVector::Zero(qi);
  o.g = PVector::Zero(qi);
  for (std::size_t i = 0; i < q; ++i) {
    o.f(static_cast<Eigen::Index>(i)) = d.v(0, i)(0);
    o.g(static_cast<Eigen::Index>(i)) = d.vP(i, 0)(0);
    for (std::size_t j = 0; j < q; ++j) o.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d.phi(i, j)(0);
  }
  o.t = d.tau(0, 0);
  o.s = d.gamma(0, 0)(0);
  return o;
}

NvkDocument nvk_from_dext(const DextData& d) {
  NvkDocument doc;
  std::set<std::string> params;
  auto collect = [&](const Poly& p) {
    for (const auto& v : p.variables()) params.insert(v);
  };
  NvkDext x;
  NovikovAlgebra a2 = d.A2;
  if (d.q() > 0) {
    doc.algebras.push_back({d.A1.algebra, {{"B", d.A1.metric}}});
    x.a1 = d.A1.algebra.name();
    if (a2.name() == x.a1) a2.set_name(a2.name() + "2");
  }
  doc.algebras.push_back({a2, {}});
  x.a2 = a2.name();
  x.tau = d.tau;
  x.mu = d.mu;
  x.muP = d.muP;
  x.phi = d.phi;
  x.v = d.v;
  x.vP = d.vP;
  x.lambda = d.lambda;
  x.gamma = d.gamma;
  for (const auto& b : doc.algebras) {
    for (const auto& p : b.algebra.params) params.insert(p);
    for (std::size_t i = 0; i < b.algebra.dim(); ++i)
      for (std::size_t j = 0; j < b.algebra.dim(); ++j)
        for (Eigen::Index k = 0; k < b.algebra.n(); ++k) collect(b.algebra.product(i, j)(k));
    for (const auto& f : b.forms)
      for (Eigen::Index i = 0; i < f.matrix.size(); ++i) collect(f.matrix.data()[i]);
  }
  for (Eigen::Index i = 0; i < x.tau.size(); ++i) collect(x.tau.data()[i]);
  for (const auto* t : {&x.phi, &x.v, &x.vP, &x.lambda, &x.gamma})
    for (const auto& v : t->at)
      for (Eigen::Index i = 0; i < v.size(); ++i) collect(v(i));
  for (const auto* ms : {&x.mu, &x.muP})
    for (const auto& m : *ms)
      for (Eigen::Index i = 0; i < m.size(); ++i) collect(m.data()[i]);
  doc.dext = std::move(x);
  doc.params.assign(params.begin(), params.end());
  doc.constraints = d.A1.constraints;
  doc.constraints.merge(d.A2.constraints);
  return parse_nvk(print_nvk(doc));
}

}  // namespace novikov
