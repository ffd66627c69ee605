#ifndef AIC_TYPES_HPP
#define AIC_TYPES_HPP

#include <memory>
#include <set>
#include <string>

namespace aic {

class Type;
using TypePtr = std::shared_ptr<const Type>;

// Effects are finite sets of region names.
using Effect = std::set<std::string>;

enum class TypeKind { Unit, Behaviour, Bang, Region, Arrow };

// Value types: 1, A -o a, !A, Reg r A. The behaviour type B is reserved for
// entities that do not return a value (stores, parallel compositions); it may
// appear only as an arrow codomain or as a whole type. Arrows carry a latent
// effect set, empty in the base system.
class Type {
public:
  TypeKind kind = TypeKind::Unit;
  TypePtr inner;       // Bang payload, Region content
  std::string region;  // Region name
  TypePtr dom, cod;    // Arrow
  Effect effect;       // Arrow latent effect

  static TypePtr unit();
  static TypePtr behaviour();
  static TypePtr bang(TypePtr payload);
  static TypePtr region_ref(std::string region, TypePtr content);
  static TypePtr arrow(TypePtr dom, Effect effect, TypePtr cod);
};

bool type_equal(const TypePtr& a, const TypePtr& b);

// Anything except the behaviour type.
bool is_value_type(const TypePtr& t);

// Behaviour nowhere except codomain / top positions.
bool well_shaped(const TypePtr& t);

// True if some arrow in t carries a nonempty latent effect.
bool has_effect_annotations(const TypePtr& t);

// All region names mentioned in t, both in Reg types and latent effects.
void collect_regions(const TypePtr& t, std::set<std::string>& out);

std::string type_to_string(const TypePtr& t);

}  // namespace aic

#endif
