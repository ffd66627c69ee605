#ifndef AIC_CANON_HPP
#define AIC_CANON_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aic/term.hpp"

namespace aic {

class MalformedProgram : public std::runtime_error {
 public:
  explicit MalformedProgram(const std::string& msg) : std::runtime_error(msg) {}
};

struct BinderInfo {
  std::string name;
  std::string region;
  TypePtr content;
};

struct StoreEntry {
  std::string addr;
  std::string decoration;  // region label on the address occurrence, if any
  bool persistent = false;
  TermPtr value;
};

// Prenex form: nu binders, a multiset of threads (no top-level Par, no nu in
// evaluation position, no stores), and a multiset of stores. Threads and
// stores are kept in canonical (sorted) order; `fingerprint` is the canonical
// print, stable under alpha-renaming and multiset permutation.
struct CanonicalProgram {
  std::vector<BinderInfo> binders;
  std::vector<TermPtr> threads;
  std::vector<StoreEntry> stores;
  std::string fingerprint;
};

// Scope extrusion plus Par flattening. Fresh names for extruded binders are
// drawn from `fresh_counter`, which callers thread through successive calls.
// Throws MalformedProgram for stores outside static positions.
CanonicalProgram canonicalize(const TermPtr& program, std::uint64_t& fresh_counter);
CanonicalProgram canonicalize(const TermPtr& program);

// Rebuilds a term nu x1... (T1 | ... | Tn | S1 | ... | Sp) from the parts.
TermPtr state_to_term(const CanonicalProgram& p);

// Canonical forms agree up to alpha-renaming of binders and multiset equality
// of threads and stores.
bool struct_equiv(const TermPtr& p, const TermPtr& q);

// Smallest fresh-suffix counter safe for a term: 1 + the largest _n suffix.
std::uint64_t fresh_counter_for(const TermPtr& t);

enum class HoleKind {
  Value,     // the thread is a value
  Beta,      // (\x.M) V
  LetBang,   // let !x = V in M
  SetVol,    // set(x, V)
  SetPer,    // pset(x, V)
  Read,      // get(x): pairing with a store is the machine's business
  Malformed, // no production applies (untypable input)
};

struct Decomposition {
  HoleKind kind = HoleKind::Malformed;
  TermPtr redex;                                 // hole content
  std::string read_addr;                         // Read
  std::function<TermPtr(const TermPtr&)> plug;   // E[ . ]
  std::string error;                             // Malformed
};

// Unique evaluation-context decomposition of a store-free thread.
Decomposition decompose(const TermPtr& thread);

}  // namespace aic

#endif
