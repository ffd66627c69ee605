#include "aic/term.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace aic {

namespace {

TermPtr node(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

bool has_address(TermKind k) {
  switch (k) {
    case TermKind::Get:
    case TermKind::SetVol:
    case TermKind::SetPer:
    case TermKind::StoreVol:
    case TermKind::StorePer:
      return true;
    default:
      return false;
  }
}

}  // namespace

TermPtr Term::unit() {
  static const TermPtr t = node(TermKind::Unit);
  return t;
}

TermPtr Term::var(std::string name, std::string region) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  t->region = std::move(region);
  return t;
}

TermPtr Term::lam(std::string binder, TypePtr dom, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Lam;
  t->name = std::move(binder);
  t->annot = std::move(dom);
  t->t0 = std::move(body);
  return t;
}

TermPtr Term::app(TermPtr fn, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->t0 = std::move(fn);
  t->t1 = std::move(arg);
  return t;
}

TermPtr Term::bang(TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Bang;
  t->t0 = std::move(body);
  return t;
}

TermPtr Term::let_bang(std::string binder, TermPtr bound, TermPtr body,
                       TypePtr content) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::LetBang;
  t->name = std::move(binder);
  t->t0 = std::move(bound);
  t->t1 = std::move(body);
  t->annot = std::move(content);
  return t;
}

TermPtr Term::nu(std::string binder, std::string region, TypePtr content,
                 TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Nu;
  t->name = std::move(binder);
  t->region = std::move(region);
  t->annot = std::move(content);
  t->t0 = std::move(body);
  return t;
}

TermPtr Term::get(std::string addr, std::string region) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Get;
  t->name = std::move(addr);
  t->region = std::move(region);
  return t;
}

namespace {
TermPtr addr_value_node(TermKind k, std::string addr, TermPtr value,
                        std::string region) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(addr);
  t->region = std::move(region);
  t->t0 = std::move(value);
  return t;
}
}  // namespace

TermPtr Term::set_vol(std::string addr, TermPtr value, std::string region) {
  return addr_value_node(TermKind::SetVol, std::move(addr), std::move(value),
                         std::move(region));
}

TermPtr Term::set_per(std::string addr, TermPtr value, std::string region) {
  return addr_value_node(TermKind::SetPer, std::move(addr), std::move(value),
                         std::move(region));
}

TermPtr Term::store_vol(std::string addr, TermPtr value, std::string region) {
  return addr_value_node(TermKind::StoreVol, std::move(addr), std::move(value),
                         std::move(region));
}

TermPtr Term::store_per(std::string addr, TermPtr value, std::string region) {
  return addr_value_node(TermKind::StorePer, std::move(addr), std::move(value),
                         std::move(region));
}

TermPtr Term::par(TermPtr left, TermPtr right) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Par;
  t->t0 = std::move(left);
  t->t1 = std::move(right);
  return t;
}

bool is_value(const TermPtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case TermKind::Unit:
    case TermKind::Var:
    case TermKind::Lam:
      return true;
    case TermKind::Bang:
      return is_value(t->t0);
    default:
      return false;
  }
}

bool is_store_term(const TermPtr& t) {
  if (!t) return false;
  if (t->kind == TermKind::StoreVol || t->kind == TermKind::StorePer) return true;
  if (t->kind == TermKind::Par) return is_store_term(t->t0) && is_store_term(t->t1);
  return false;
}

bool contains_store(const TermPtr& t) {
  if (!t) return false;
  if (t->kind == TermKind::StoreVol || t->kind == TermKind::StorePer) return true;
  return contains_store(t->t0) || contains_store(t->t1);
}

namespace {

void free_vars_rec(const TermPtr& t, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case TermKind::Unit:
      return;
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::Lam:
    case TermKind::Nu: {
      bool fresh = bound.insert(t->name).second;
      free_vars_rec(t->t0, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case TermKind::LetBang: {
      free_vars_rec(t->t0, bound, out);
      bool fresh = bound.insert(t->name).second;
      free_vars_rec(t->t1, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case TermKind::Get:
    case TermKind::SetVol:
    case TermKind::SetPer:
    case TermKind::StoreVol:
    case TermKind::StorePer:
      if (!bound.count(t->name)) out.insert(t->name);
      free_vars_rec(t->t0, bound, out);
      return;
    case TermKind::App:
    case TermKind::Bang:
    case TermKind::Par:
      free_vars_rec(t->t0, bound, out);
      free_vars_rec(t->t1, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  free_vars_rec(t, bound, out);
  return out;
}

bool occurs_free(const std::string& name, const TermPtr& t) {
  return free_vars(t).count(name) != 0;
}

std::size_t count_free_occurrences(const std::string& name, const TermPtr& t) {
  if (!t) return 0;
  bool binds = (t->kind == TermKind::Lam || t->kind == TermKind::Nu ||
                t->kind == TermKind::LetBang) &&
               t->name == name;
  std::size_t n = 0;
  if ((t->kind == TermKind::Var || has_address(t->kind)) && t->name == name) n += 1;
  if (t->kind == TermKind::LetBang) {
    n += count_free_occurrences(name, t->t0);
    if (!binds) n += count_free_occurrences(name, t->t1);
    return n;
  }
  if (binds) return n;  // Lam / Nu shadowing
  n += count_free_occurrences(name, t->t0);
  n += count_free_occurrences(name, t->t1);
  return n;
}

bool occurs_under_bang(const std::string& name, const TermPtr& t) {
  if (!t) return false;
  bool binds = (t->kind == TermKind::Lam || t->kind == TermKind::Nu ||
                t->kind == TermKind::LetBang) &&
               t->name == name;
  if (t->kind == TermKind::Bang) return occurs_free(name, t->t0);
  if (t->kind == TermKind::LetBang) {
    if (occurs_under_bang(name, t->t0)) return true;
    return !binds && occurs_under_bang(name, t->t1);
  }
  if (binds) return false;
  return occurs_under_bang(name, t->t0) || occurs_under_bang(name, t->t1);
}

void collect_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (!t->name.empty()) out.insert(t->name);
  collect_names(t->t0, out);
  collect_names(t->t1, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to) {
  if (!t) return t;
  bool binds = (t->kind == TermKind::Lam || t->kind == TermKind::Nu ||
                t->kind == TermKind::LetBang) &&
               t->name == from;
  auto copy = [&](TermPtr c0, TermPtr c1, std::string nm) {
    auto n = std::make_shared<Term>(*t);
    n->t0 = std::move(c0);
    n->t1 = std::move(c1);
    n->name = std::move(nm);
    return TermPtr(n);
  };
  switch (t->kind) {
    case TermKind::Unit:
      return t;
    case TermKind::Var:
      return t->name == from ? copy(nullptr, nullptr, to) : t;
    case TermKind::Get:
    case TermKind::SetVol:
    case TermKind::SetPer:
    case TermKind::StoreVol:
    case TermKind::StorePer: {
      auto v = rename_free(t->t0, from, to);
      std::string nm = t->name == from ? to : t->name;
      if (v == t->t0 && nm == t->name) return t;
      return copy(v, nullptr, nm);
    }
    case TermKind::Lam:
    case TermKind::Nu: {
      if (binds) return t;
      auto b = rename_free(t->t0, from, to);
      return b == t->t0 ? t : copy(b, t->t1, t->name);
    }
    case TermKind::LetBang: {
      auto bd = rename_free(t->t0, from, to);
      auto body = binds ? t->t1 : rename_free(t->t1, from, to);
      if (bd == t->t0 && body == t->t1) return t;
      return copy(bd, body, t->name);
    }
    case TermKind::App:
    case TermKind::Bang:
    case TermKind::Par: {
      auto a = rename_free(t->t0, from, to);
      auto b = rename_free(t->t1, from, to);
      if (a == t->t0 && b == t->t1) return t;
      return copy(a, b, t->name);
    }
  }
  return t;
}

namespace {

TermPtr subst_rec(const TermPtr& value, const std::string& var,
                  const std::set<std::string>& value_fv, const TermPtr& t) {
  if (!t) return t;
  switch (t->kind) {
    case TermKind::Unit:
      return t;
    case TermKind::Var:
      return t->name == var ? value : t;
    case TermKind::Get:
    case TermKind::SetVol:
    case TermKind::SetPer:
    case TermKind::StoreVol:
    case TermKind::StorePer: {
      auto payload = subst_rec(value, var, value_fv, t->t0);
      std::string addr = t->name;
      std::string dec = t->region;
      if (t->name == var) {
        // An address position only accepts a variable.
        if (value->kind != TermKind::Var)
          throw std::invalid_argument(
              "subst: non-variable value substituted for address " + var);
        addr = value->name;
        if (!value->region.empty()) dec = value->region;
      }
      if (payload == t->t0 && addr == t->name && dec == t->region) return t;
      auto n = std::make_shared<Term>(*t);
      n->t0 = payload;
      n->name = addr;
      n->region = dec;
      return n;
    }
    case TermKind::Lam:
    case TermKind::Nu: {
      if (t->name == var) return t;  // shadowed
      TermPtr body = t->t0;
      std::string binder = t->name;
      if (value_fv.count(binder) && occurs_free(var, body)) {
        std::set<std::string> avoid = value_fv;
        collect_names(body, avoid);
        avoid.insert(var);
        binder = fresh_name(binder, avoid);
        body = rename_free(body, t->name, binder);
      }
      auto nb = subst_rec(value, var, value_fv, body);
      if (nb == t->t0 && binder == t->name) return t;
      auto n = std::make_shared<Term>(*t);
      n->name = binder;
      n->t0 = nb;
      return n;
    }
    case TermKind::LetBang: {
      auto bound = subst_rec(value, var, value_fv, t->t0);
      TermPtr body = t->t1;
      std::string binder = t->name;
      if (binder != var) {
        if (value_fv.count(binder) && occurs_free(var, body)) {
          std::set<std::string> avoid = value_fv;
          collect_names(body, avoid);
          avoid.insert(var);
          binder = fresh_name(binder, avoid);
          body = rename_free(body, t->name, binder);
        }
        body = subst_rec(value, var, value_fv, body);
      }
      if (bound == t->t0 && body == t->t1 && binder == t->name) return t;
      auto n = std::make_shared<Term>(*t);
      n->name = binder;
      n->t0 = bound;
      n->t1 = body;
      return n;
    }
    case TermKind::App:
    case TermKind::Bang:
    case TermKind::Par: {
      auto a = subst_rec(value, var, value_fv, t->t0);
      auto b = subst_rec(value, var, value_fv, t->t1);
      if (a == t->t0 && b == t->t1) return t;
      auto n = std::make_shared<Term>(*t);
      n->t0 = a;
      n->t1 = b;
      return n;
    }
  }
  return t;
}

}  // namespace

TermPtr subst(const TermPtr& value, const std::string& var, const TermPtr& target) {
  if (!is_value(value))
    throw std::invalid_argument("subst: first argument must be a value");
  return subst_rec(value, var, free_vars(value), target);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: par(0) < binder bodies(1) < app components(2) <
// prefix operands(3). Nested parallel compositions always carry explicit
// parentheses.
struct Printer {
  std::ostringstream os;
  const FreeNameHook* free_hook = nullptr;
  bool alpha = false;
  std::map<std::string, std::vector<std::string>> bound;
  std::size_t next_index = 0;

  void occ(const std::string& name, const std::string& dec) {
    auto it = bound.find(name);
    if (it != bound.end() && !it->second.empty()) {
      os << it->second.back();
    } else if (free_hook) {
      os << (*free_hook)(name);
    } else {
      os << name;
    }
    if (!dec.empty()) os << "^" << dec;
  }

  std::string alloc(const std::string& name) {
    return alpha ? "%" + std::to_string(next_index++) : name;
  }
  void push(const std::string& name, const std::string& printed) {
    bound[name].push_back(printed);
  }
  void pop(const std::string& name) { bound[name].pop_back(); }

  // level: 0 par, 1 binder body, 2 app component, 3 prefix operand
  void print(const TermPtr& t, int level) {
    switch (t->kind) {
      case TermKind::Unit:
        os << "*";
        return;
      case TermKind::Var:
        occ(t->name, t->region);
        return;
      case TermKind::Get:
        os << "get(";
        occ(t->name, t->region);
        os << ")";
        return;
      case TermKind::SetVol:
      case TermKind::SetPer:
        os << (t->kind == TermKind::SetVol ? "set(" : "pset(");
        occ(t->name, t->region);
        os << ", ";
        print(t->t0, 0);
        os << ")";
        return;
      case TermKind::StoreVol:
      case TermKind::StorePer:
        os << "[";
        occ(t->name, t->region);
        os << (t->kind == TermKind::StoreVol ? " <- " : " <= ");
        print(t->t0, 0);
        os << "]";
        return;
      case TermKind::Par: {
        bool parens = level > 0;
        if (parens) os << "(";
        print(t->t0, t->t0->kind == TermKind::Par ? 1 : 0);
        os << " | ";
        print(t->t1, t->t1->kind == TermKind::Par ? 1 : 0);
        if (parens) os << ")";
        return;
      }
      case TermKind::Lam: {
        bool parens = level > 1;
        if (parens) os << "(";
        std::string printed = alloc(t->name);
        os << "\\" << printed << ":" << type_to_string(t->annot) << ". ";
        push(t->name, printed);
        print(t->t0, 1);
        pop(t->name);
        if (parens) os << ")";
        return;
      }
      case TermKind::LetBang: {
        bool parens = level > 1;
        if (parens) os << "(";
        // The bound term sits outside the binder's scope.
        std::string printed = alloc(t->name);
        os << "let !" << printed << " = ";
        print(t->t0, 1);
        os << " in ";
        push(t->name, printed);
        print(t->t1, 1);
        pop(t->name);
        if (parens) os << ")";
        return;
      }
      case TermKind::Nu: {
        bool parens = level > 1;
        if (parens) os << "(";
        std::string printed = alloc(t->name);
        os << "nu " << printed << " : Reg " << t->region << " "
           << atom_type(t->annot) << ". ";
        push(t->name, printed);
        print(t->t0, 1);
        pop(t->name);
        if (parens) os << ")";
        return;
      }
      case TermKind::App: {
        bool parens = level > 2;
        if (parens) os << "(";
        print(t->t0, t->t0->kind == TermKind::App ? 2 : 3);
        os << " ";
        print(t->t1, 3);
        if (parens) os << ")";
        return;
      }
      case TermKind::Bang: {
        os << "!";
        // ! binds tighter than application: operands other than atoms and
        // nested bangs get parentheses.
        switch (t->t0->kind) {
          case TermKind::Unit:
          case TermKind::Var:
          case TermKind::Get:
          case TermKind::SetVol:
          case TermKind::SetPer:
          case TermKind::StoreVol:
          case TermKind::StorePer:
          case TermKind::Bang:
            print(t->t0, 3);
            break;
          default:
            os << "(";
            print(t->t0, 0);
            os << ")";
            break;
        }
        return;
      }
    }
  }

  static std::string atom_type(const TypePtr& ty) {
    std::string s = type_to_string(ty);
    if (ty->kind == TypeKind::Arrow || ty->kind == TypeKind::Region ||
        ty->kind == TypeKind::Bang) {
      // Reg takes an atom; wrap anything that does not reparse as one.
      if (ty->kind == TypeKind::Arrow) return "(" + s + ")";
    }
    return s;
  }
};

}  // namespace

std::string term_to_string(const TermPtr& t) {
  Printer p;
  p.print(t, 0);
  return p.os.str();
}

std::string alpha_print(const TermPtr& t, const FreeNameHook* free_hook) {
  Printer p;
  p.alpha = true;
  p.free_hook = free_hook;
  p.print(t, 0);
  return p.os.str();
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  return alpha_print(a) == alpha_print(b);
}

}  // namespace aic
