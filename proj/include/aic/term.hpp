#ifndef AIC_TERM_HPP
#define AIC_TERM_HPP

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "aic/types.hpp"

namespace aic {

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind {
  Unit,      // *
  Var,       // x
  Lam,       // \x:T. M
  App,       // M N
  Bang,      // !M
  LetBang,   // let !x = M in N
  Nu,        // nu x : Reg r T. M
  Get,       // get(x)
  SetVol,    // set(x, V)
  SetPer,    // pset(x, V)
  StoreVol,  // [x <- V]
  StorePer,  // [x <= V]
  Par,       // M | N
};

// One node per production of the grammar. `name` is the variable, binder or
// address; `region` holds the region decoration of an occurrence (empty until
// the decoration pass) or, for Nu, the region of the bound address. `annot`
// is the Lam domain, the Nu content type, or (set by the typechecker) the
// content type eliminated by a LetBang.
class Term {
 public:
  TermKind kind = TermKind::Unit;
  std::string name;
  std::string region;
  TypePtr annot;
  TermPtr t0, t1;

  static TermPtr unit();
  static TermPtr var(std::string name, std::string region = "");
  static TermPtr lam(std::string binder, TypePtr dom, TermPtr body);
  static TermPtr app(TermPtr fn, TermPtr arg);
  static TermPtr bang(TermPtr body);
  static TermPtr let_bang(std::string binder, TermPtr bound, TermPtr body,
                          TypePtr content = nullptr);
  static TermPtr nu(std::string binder, std::string region, TypePtr content,
                    TermPtr body);
  static TermPtr get(std::string addr, std::string region = "");
  static TermPtr set_vol(std::string addr, TermPtr value, std::string region = "");
  static TermPtr set_per(std::string addr, TermPtr value, std::string region = "");
  static TermPtr store_vol(std::string addr, TermPtr value, std::string region = "");
  static TermPtr store_per(std::string addr, TermPtr value, std::string region = "");
  static TermPtr par(TermPtr left, TermPtr right);
};

// V ::= * | x | \x.M | !V
bool is_value(const TermPtr& t);

// Store literal or parallel composition of stores.
bool is_store_term(const TermPtr& t);

// True if a store literal occurs anywhere in t.
bool contains_store(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
bool occurs_free(const std::string& name, const TermPtr& t);
std::size_t count_free_occurrences(const std::string& name, const TermPtr& t);
bool occurs_under_bang(const std::string& name, const TermPtr& t);

// Every name appearing in t, binders included.
void collect_names(const TermPtr& t, std::set<std::string>& out);

// base, base_1, base_2, ... first candidate not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Renames free occurrences of `from` (variable and address positions alike).
TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to);

// Capture-avoiding substitution of a value for a variable. Throws
// std::invalid_argument if `value` is not a value, and MalformedProgram from
// canon if a non-variable lands in an address position.
TermPtr subst(const TermPtr& value, const std::string& var, const TermPtr& target);

// Surface syntax, decorations printed as x^r when present.
std::string term_to_string(const TermPtr& t);

// Alpha-normal print: bound occurrences rendered %0, %1, ... in binding
// order. Free names print through `free_hook` when present (used by the
// canonical state printer, which also observes occurrence order through it),
// literally otherwise.
using FreeNameHook = std::function<std::string(const std::string&)>;
std::string alpha_print(const TermPtr& t, const FreeNameHook* free_hook = nullptr);

bool alpha_equal(const TermPtr& a, const TermPtr& b);

}  // namespace aic

#endif
