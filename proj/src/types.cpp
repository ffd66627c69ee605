#include "aic/types.hpp"

#include <sstream>
#include <utility>

namespace aic {

namespace {

TypePtr make(TypeKind k) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  return t;
}

}  // namespace

TypePtr Type::unit() {
  static const TypePtr t = make(TypeKind::Unit);
  return t;
}

TypePtr Type::behaviour() {
  static const TypePtr t = make(TypeKind::Behaviour);
  return t;
}

TypePtr Type::bang(TypePtr payload) {
  auto t = std::make_shared<Type>();
  t->kind = TypeKind::Bang;
  t->inner = std::move(payload);
  return t;
}

TypePtr Type::region_ref(std::string region, TypePtr content) {
  auto t = std::make_shared<Type>();
  t->kind = TypeKind::Region;
  t->region = std::move(region);
  t->inner = std::move(content);
  return t;
}

TypePtr Type::arrow(TypePtr dom, Effect effect, TypePtr cod) {
  auto t = std::make_shared<Type>();
  t->kind = TypeKind::Arrow;
  t->dom = std::move(dom);
  t->effect = std::move(effect);
  t->cod = std::move(cod);
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Unit:
    case TypeKind::Behaviour:
      return true;
    case TypeKind::Bang:
      return type_equal(a->inner, b->inner);
    case TypeKind::Region:
      return a->region == b->region && type_equal(a->inner, b->inner);
    case TypeKind::Arrow:
      return a->effect == b->effect && type_equal(a->dom, b->dom) &&
             type_equal(a->cod, b->cod);
  }
  return false;
}

bool is_value_type(const TypePtr& t) {
  return t && t->kind != TypeKind::Behaviour;
}

bool well_shaped(const TypePtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Behaviour:
      return true;
    case TypeKind::Bang:
    case TypeKind::Region:
      return is_value_type(t->inner) && well_shaped(t->inner);
    case TypeKind::Arrow:
      return is_value_type(t->dom) && well_shaped(t->dom) && well_shaped(t->cod);
  }
  return false;
}

bool has_effect_annotations(const TypePtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Behaviour:
      return false;
    case TypeKind::Bang:
    case TypeKind::Region:
      return has_effect_annotations(t->inner);
    case TypeKind::Arrow:
      return !t->effect.empty() || has_effect_annotations(t->dom) ||
             has_effect_annotations(t->cod);
  }
  return false;
}

void collect_regions(const TypePtr& t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Behaviour:
      return;
    case TypeKind::Bang:
      collect_regions(t->inner, out);
      return;
    case TypeKind::Region:
      out.insert(t->region);
      collect_regions(t->inner, out);
      return;
    case TypeKind::Arrow:
      out.insert(t->effect.begin(), t->effect.end());
      collect_regions(t->dom, out);
      collect_regions(t->cod, out);
      return;
  }
}

namespace {

// atom := 1 | B | !atom | Reg r atom | (type); arrows need parens in atom
// positions.
void print_atom(std::ostream& os, const TypePtr& t);

void print_type(std::ostream& os, const TypePtr& t) {
  if (t->kind == TypeKind::Arrow) {
    print_atom(os, t->dom);
    if (t->effect.empty()) {
      os << " -o ";
    } else {
      os << " -{";
      bool first = true;
      for (const auto& r : t->effect) {
        if (!first) os << ",";
        os << r;
        first = false;
      }
      os << "}> ";
    }
    print_type(os, t->cod);  // right-associative
    return;
  }
  print_atom(os, t);
}

void print_atom(std::ostream& os, const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Unit:
      os << "1";
      return;
    case TypeKind::Behaviour:
      os << "B";
      return;
    case TypeKind::Bang:
      os << "!";
      print_atom(os, t->inner);
      return;
    case TypeKind::Region:
      os << "Reg " << t->region << " ";
      print_atom(os, t->inner);
      return;
    case TypeKind::Arrow:
      os << "(";
      print_type(os, t);
      os << ")";
      return;
  }
}

}  // namespace

std::string type_to_string(const TypePtr& t) {
  std::ostringstream os;
  print_type(os, t);
  return os.str();
}

}  // namespace aic
