#include "aic/surface.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace aic {

namespace {

enum class Tok {
  Ident,
  KwRegion, KwVar, KwProgram, KwVolatile, KwPersistent, KwFamily,
  KwAff, KwWo, KwExp, KwLet, KwIn, KwNu, KwGet, KwSet, KwPset, KwReg,
  KwInf, KwB,
  One,        // the literal 1
  Star, Bang, Pipe, Backslash, Dot, Comma, Colon, Semi, Equals,
  LParen, RParen, LBrack, RBrack,
  Lolli,      // -o
  EffOpen,    // -{
  EffClose,   // }>
  ArrowVol,   // <-
  ArrowPer,   // <=
  End,
};

struct Token {
  Tok type;
  std::string text;
  int line, col;
};

const std::unordered_map<std::string, Tok> kKeywords = {
    {"region", Tok::KwRegion},   {"var", Tok::KwVar},
    {"program", Tok::KwProgram}, {"volatile", Tok::KwVolatile},
    {"persistent", Tok::KwPersistent}, {"family", Tok::KwFamily},
    {"aff", Tok::KwAff},         {"wo", Tok::KwWo},
    {"exp", Tok::KwExp},         {"let", Tok::KwLet},
    {"in", Tok::KwIn},           {"nu", Tok::KwNu},
    {"get", Tok::KwGet},         {"set", Tok::KwSet},
    {"pset", Tok::KwPset},       {"Reg", Tok::KwReg},
    {"inf", Tok::KwInf},         {"B", Tok::KwB},
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok t, std::string s, int l, int c) {
    out.push_back({t, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, co = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      advance(j - i);
      auto kw = kKeywords.find(word);
      if (kw != kKeywords.end())
        push(kw->second, word, l, co);
      else
        push(Tok::Ident, word, l, co);
      continue;
    }
    if (c == '1' &&
        (i + 1 >= text.size() ||
         !(std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_'))) {
      advance(1);
      push(Tok::One, "1", l, co);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', 'o')) { advance(2); push(Tok::Lolli, "-o", l, co); continue; }
    if (two('-', '{')) { advance(2); push(Tok::EffOpen, "-{", l, co); continue; }
    if (two('}', '>')) { advance(2); push(Tok::EffClose, "}>", l, co); continue; }
    if (two('<', '-')) { advance(2); push(Tok::ArrowVol, "<-", l, co); continue; }
    if (two('<', '=')) { advance(2); push(Tok::ArrowPer, "<=", l, co); continue; }
    switch (c) {
      case '*': advance(1); push(Tok::Star, "*", l, co); continue;
      case '!': advance(1); push(Tok::Bang, "!", l, co); continue;
      case '|': advance(1); push(Tok::Pipe, "|", l, co); continue;
      case '\\': advance(1); push(Tok::Backslash, "\\", l, co); continue;
      case '.': advance(1); push(Tok::Dot, ".", l, co); continue;
      case ',': advance(1); push(Tok::Comma, ",", l, co); continue;
      case ':': advance(1); push(Tok::Colon, ":", l, co); continue;
      case ';': advance(1); push(Tok::Semi, ";", l, co); continue;
      case '=': advance(1); push(Tok::Equals, "=", l, co); continue;
      case '(': advance(1); push(Tok::LParen, "(", l, co); continue;
      case ')': advance(1); push(Tok::RParen, ")", l, co); continue;
      case '[': advance(1); push(Tok::LBrack, "[", l, co); continue;
      case ']': advance(1); push(Tok::RBrack, "]", l, co); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, co);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Pos {
  int line = 0, col = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SourceFile file() {
    SourceFile f;
    while (true) {
      if (at(Tok::KwRegion)) {
        f.regions.push_back(region_decl());
      } else if (at(Tok::KwVar)) {
        f.vars.push_back(var_decl(f));
      } else {
        break;
      }
    }
    expect(Tok::KwProgram, "expected 'program'");
    f.program = par();
    expect(Tok::End, "trailing input after program");
    validate_decls(f);
    check_static(f.program, true);
    resolve(f);
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<const Term*, Pos> positions_;
  int sugar_counter_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok t) const { return cur().type == t; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }
  [[noreturn]] void fail_at(const std::string& msg, Pos p) const {
    throw ParseError(msg, p.line, p.col);
  }
  Token expect(Tok t, const std::string& msg) {
    if (!at(t)) fail(msg + " (got '" + cur().text + "')");
    return take();
  }
  Pos here() const { return {cur().line, cur().col}; }
  TermPtr remember(TermPtr t, Pos p) {
    positions_[t.get()] = p;
    return t;
  }
  Pos pos_of(const TermPtr& t) const {
    auto it = positions_.find(t.get());
    return it == positions_.end() ? Pos{} : it->second;
  }

  // --- declarations -------------------------------------------------------

  RegionDecl region_decl() {
    take();  // region
    RegionDecl d;
    d.name = expect(Tok::Ident, "expected region name").text;
    if (at(Tok::KwVolatile)) {
      take();
      d.persistent = false;
    } else if (at(Tok::KwPersistent)) {
      take();
      d.persistent = true;
    } else {
      fail("expected 'volatile' or 'persistent'");
    }
    expect(Tok::Colon, "expected ':'");
    Pos p = here();
    d.content = type();
    if (!well_shaped(d.content) || !is_value_type(d.content))
      fail_at("region content must be a value type", p);
    if (d.persistent && d.content->kind != TypeKind::Bang)
      fail_at("persistent region must hold a type of shape !A", p);
    expect(Tok::KwFamily, "expected 'family'");
    if (at(Tok::KwAff)) d.family = Family::Aff;
    else if (at(Tok::KwWo)) d.family = Family::Wo;
    else if (at(Tok::KwExp)) d.family = Family::Exp;
    else fail("expected family aff, wo or exp");
    take();
    return d;
  }

  VarDecl var_decl(const SourceFile&) {
    take();  // var
    VarDecl d;
    d.name = expect(Tok::Ident, "expected variable name").text;
    expect(Tok::Colon, "expected ':'");
    expect(Tok::LParen, "expected '('");
    if (at(Tok::One)) d.mult = Mult::One;
    else if (at(Tok::KwInf)) d.mult = Mult::Many;
    else fail("expected multiplicity 1 or inf");
    take();
    expect(Tok::Comma, "expected ','");
    Pos p = here();
    d.type = type();
    if (!well_shaped(d.type) || !is_value_type(d.type))
      fail_at("variable type must be a value type", p);
    expect(Tok::RParen, "expected ')'");
    return d;
  }

  void validate_decls(const SourceFile& f) {
    std::set<std::string> regions, vars;
    for (const auto& r : f.regions)
      if (!regions.insert(r.name).second)
        throw ParseError("duplicate region declaration '" + r.name + "'", 1, 1);
    for (const auto& v : f.vars)
      if (!vars.insert(v.name).second)
        throw ParseError("duplicate variable declaration '" + v.name + "'", 1, 1);
  }

  // --- types ---------------------------------------------------------------

  TypePtr type() {
    TypePtr lhs = atom_type();
    if (at(Tok::Lolli)) {
      take();
      return Type::arrow(value_dom(lhs), {}, type());
    }
    if (at(Tok::EffOpen)) {
      take();
      Effect e;
      if (!at(Tok::EffClose)) {
        e.insert(expect(Tok::Ident, "expected region name in effect").text);
        while (at(Tok::Comma)) {
          take();
          e.insert(expect(Tok::Ident, "expected region name in effect").text);
        }
      }
      expect(Tok::EffClose, "expected '}>'");
      return Type::arrow(value_dom(lhs), std::move(e), type());
    }
    return lhs;
  }

  TypePtr value_dom(TypePtr t) {
    if (!is_value_type(t)) fail("arrow domain must be a value type");
    return t;
  }

  TypePtr atom_type() {
    if (at(Tok::One)) { take(); return Type::unit(); }
    if (at(Tok::KwB)) { take(); return Type::behaviour(); }
    if (at(Tok::Bang)) {
      take();
      TypePtr inner = atom_type();
      if (!is_value_type(inner)) fail("'!' needs a value type");
      return Type::bang(inner);
    }
    if (at(Tok::KwReg)) {
      take();
      std::string r = expect(Tok::Ident, "expected region name").text;
      TypePtr inner = atom_type();
      if (!is_value_type(inner)) fail("region content must be a value type");
      return Type::region_ref(r, inner);
    }
    if (at(Tok::LParen)) {
      take();
      TypePtr t = type();
      expect(Tok::RParen, "expected ')'");
      return t;
    }
    fail("expected a type");
  }

  // --- terms ---------------------------------------------------------------

  TermPtr par() {
    TermPtr left = seq();
    if (at(Tok::Pipe)) {
      take();
      return Term::par(left, par());
    }
    return left;
  }

  TermPtr seq() {
    TermPtr left = lamish();
    if (at(Tok::Semi)) {
      Pos p = here();
      take();
      TermPtr right = seq();
      // M ; N  desugars to  (\z:1. N) M  with z fresh.
      std::string z = "_seq" + std::to_string(sugar_counter_++);
      return remember(Term::app(Term::lam(z, Type::unit(), right), left), p);
    }
    return left;
  }

  TermPtr lamish() {
    Pos p = here();
    if (at(Tok::Backslash)) {
      take();
      std::string x = expect(Tok::Ident, "expected binder name").text;
      expect(Tok::Colon, "expected ':'");
      TypePtr dom = type();
      if (!well_shaped(dom) || !is_value_type(dom))
        fail_at("lambda domain must be a value type", p);
      expect(Tok::Dot, "expected '.'");
      return remember(Term::lam(x, dom, seq()), p);
    }
    if (at(Tok::KwLet)) {
      take();
      expect(Tok::Bang, "expected '!' after let");
      std::string x = expect(Tok::Ident, "expected binder name").text;
      expect(Tok::Equals, "expected '='");
      TermPtr bound = seq();
      expect(Tok::KwIn, "expected 'in'");
      return remember(Term::let_bang(x, bound, seq()), p);
    }
    if (at(Tok::KwNu)) {
      take();
      std::string x = expect(Tok::Ident, "expected binder name").text;
      expect(Tok::Colon, "expected ':'");
      Pos tp = here();
      TypePtr ann = type();
      if (ann->kind != TypeKind::Region)
        fail_at("nu binder needs an annotation of shape Reg r A", tp);
      if (!well_shaped(ann)) fail_at("malformed type", tp);
      expect(Tok::Dot, "expected '.'");
      return remember(Term::nu(x, ann->region, ann->inner, seq()), p);
    }
    return app();
  }

  bool atom_ahead() const {
    switch (cur().type) {
      case Tok::Star:
      case Tok::Ident:
      case Tok::KwGet:
      case Tok::KwSet:
      case Tok::KwPset:
      case Tok::LBrack:
      case Tok::LParen:
      case Tok::Bang:
        return true;
      default:
        return false;
    }
  }

  TermPtr app() {
    Pos p = here();
    TermPtr t = prefix();
    while (atom_ahead()) {
      t = remember(Term::app(t, prefix()), p);
    }
    return t;
  }

  TermPtr prefix() {
    if (at(Tok::Bang)) {
      Pos p = here();
      take();
      return remember(Term::bang(prefix()), p);
    }
    return atom();
  }

  TermPtr value_payload(Pos where) {
    TermPtr v = par();
    if (!is_value(v)) fail_at("store payload must be a value", where);
    return v;
  }

  TermPtr atom() {
    Pos p = here();
    if (at(Tok::Star)) {
      take();
      return remember(Term::unit(), p);
    }
    if (at(Tok::Ident)) {
      return remember(Term::var(take().text), p);
    }
    if (at(Tok::KwGet)) {
      take();
      expect(Tok::LParen, "expected '('");
      std::string x = expect(Tok::Ident, "expected address").text;
      expect(Tok::RParen, "expected ')'");
      return remember(Term::get(x), p);
    }
    if (at(Tok::KwSet) || at(Tok::KwPset)) {
      bool per = at(Tok::KwPset);
      take();
      expect(Tok::LParen, "expected '('");
      std::string x = expect(Tok::Ident, "expected address").text;
      expect(Tok::Comma, "expected ','");
      Pos vp = here();
      TermPtr v = value_payload(vp);
      expect(Tok::RParen, "expected ')'");
      return remember(per ? Term::set_per(x, v) : Term::set_vol(x, v), p);
    }
    if (at(Tok::LBrack)) {
      take();
      std::string x = expect(Tok::Ident, "expected address").text;
      bool per;
      if (at(Tok::ArrowVol)) per = false;
      else if (at(Tok::ArrowPer)) per = true;
      else fail("expected '<-' or '<='");
      take();
      Pos vp = here();
      TermPtr v = value_payload(vp);
      expect(Tok::RBrack, "expected ']'");
      return remember(per ? Term::store_per(x, v) : Term::store_vol(x, v), p);
    }
    if (at(Tok::LParen)) {
      take();
      TermPtr t = par();
      expect(Tok::RParen, "expected ')'");
      return t;
    }
    fail("expected a term");
  }

  // --- static positions ----------------------------------------------------

  // Stores may only appear in static contexts: at the top level, under
  // parallel composition and under nu.
  void check_static(const TermPtr& t, bool is_static) {
    if (!t) return;
    switch (t->kind) {
      case TermKind::StoreVol:
      case TermKind::StorePer:
        if (!is_static)
          fail_at("store in non-static position", pos_of(t));
        check_static(t->t0, false);
        return;
      case TermKind::Par:
        check_static(t->t0, is_static);
        check_static(t->t1, is_static);
        return;
      case TermKind::Nu:
        check_static(t->t0, is_static);
        return;
      default:
        check_static(t->t0, false);
        check_static(t->t1, false);
        return;
    }
  }

  // --- resolution and binder uniquification --------------------------------

  void resolve(SourceFile& f) {
    std::set<std::string> used;
    for (const auto& r : f.regions) used.insert(r.name);
    for (const auto& v : f.vars) used.insert(v.name);
    std::map<std::string, std::vector<std::string>> scope;
    for (const auto& v : f.vars) scope[v.name].push_back(v.name);
    f.program = resolve_rec(f.program, scope, used);
  }

  TermPtr resolve_rec(const TermPtr& t,
                      std::map<std::string, std::vector<std::string>>& scope,
                      std::set<std::string>& used) {
    if (!t) return t;
    auto lookup = [&](const std::string& n) -> std::string {
      auto it = scope.find(n);
      if (it == scope.end() || it->second.empty())
        fail_at("unresolved identifier '" + n + "'", pos_of(t));
      return it->second.back();
    };
    auto with_binder = [&](const std::string& n, auto body_fn) {
      std::string uniq = fresh_name(n, used);
      used.insert(uniq);
      scope[n].push_back(uniq);
      auto r = body_fn(uniq);
      scope[n].pop_back();
      return r;
    };
    switch (t->kind) {
      case TermKind::Unit:
        return t;
      case TermKind::Var:
        return Term::var(lookup(t->name), t->region);
      case TermKind::Get:
        return Term::get(lookup(t->name), t->region);
      case TermKind::SetVol:
      case TermKind::SetPer:
      case TermKind::StoreVol:
      case TermKind::StorePer: {
        std::string a = lookup(t->name);
        TermPtr v = resolve_rec(t->t0, scope, used);
        switch (t->kind) {
          case TermKind::SetVol: return Term::set_vol(a, v, t->region);
          case TermKind::SetPer: return Term::set_per(a, v, t->region);
          case TermKind::StoreVol: return Term::store_vol(a, v, t->region);
          default: return Term::store_per(a, v, t->region);
        }
      }
      case TermKind::Lam:
        return with_binder(t->name, [&](const std::string& uniq) {
          return Term::lam(uniq, t->annot, resolve_rec(t->t0, scope, used));
        });
      case TermKind::Nu:
        return with_binder(t->name, [&](const std::string& uniq) {
          return Term::nu(uniq, t->region, t->annot,
                          resolve_rec(t->t0, scope, used));
        });
      case TermKind::LetBang: {
        TermPtr bound = resolve_rec(t->t0, scope, used);
        return with_binder(t->name, [&](const std::string& uniq) {
          return Term::let_bang(uniq, bound, resolve_rec(t->t1, scope, used));
        });
      }
      case TermKind::App:
        return Term::app(resolve_rec(t->t0, scope, used),
                         resolve_rec(t->t1, scope, used));
      case TermKind::Bang:
        return Term::bang(resolve_rec(t->t0, scope, used));
      case TermKind::Par: {
        TermPtr a = resolve_rec(t->t0, scope, used);
        return Term::par(a, resolve_rec(t->t1, scope, used));
      }
    }
    return t;
  }
};

}  // namespace

SourceFile parse(std::string_view text) { return Parser(text).file(); }

std::string print_source(const SourceFile& f) {
  std::ostringstream os;
  for (const auto& r : f.regions) {
    os << "region " << r.name << " " << (r.persistent ? "persistent" : "volatile")
       << " : " << type_to_string(r.content) << " family "
       << family_to_string(r.family) << "\n";
  }
  for (const auto& v : f.vars) {
    os << "var " << v.name << " : (" << mult_to_string(v.mult) << ", "
       << type_to_string(v.type) << ")\n";
  }
  os << "program " << term_to_string(f.program) << "\n";
  return os.str();
}

}  // namespace aic
