#ifndef AIC_USAGE_HPP
#define AIC_USAGE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace aic {

// Variable multiplicities: 0, 1, inf. The partial sum has x+0 = x and
// inf+inf = inf; 1+1 and 1+inf are undefined.
enum class Mult : std::uint8_t { Zero, One, Many };

std::optional<Mult> mult_sum(Mult a, Mult b);
std::string mult_to_string(Mult m);

// The three closed families of region usages:
//   exp = {<inf,inf>}
//   wo  = {<1,inf>, <0,inf>}   (write once, read many)
//   aff = {<0,0>, <1,0>, <0,1>, <1,1>}
enum class Family : std::uint8_t { Aff, Wo, Exp };

// <out, in>: first component is the output (write) usage, second the input
// (read) usage.
struct RegionUsage {
  Mult out = Mult::Zero;
  Mult in = Mult::Zero;
  Family family = Family::Aff;
  bool operator==(const RegionUsage&) const = default;
};

RegionUsage neutral_usage(Family f);
bool in_family(const RegionUsage& u);

// Smallest family member covering one read / one write. These are the
// per-occurrence contributions synthesized by the typechecker.
RegionUsage read_usage(Family f);
RegionUsage write_usage(Family f);

std::string usage_to_string(const RegionUsage& u);
std::string family_to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

enum class ClashKind { FamilyMismatch, ComponentClash };
std::string clash_to_string(ClashKind k);

struct UsumResult {
  bool ok = false;
  RegionUsage value;
  ClashKind reason = ClashKind::ComponentClash;
};

UsumResult usum(const RegionUsage& a, const RegionUsage& b);

// Usage of the hypotheses a derivation actually consumed. Absent variables
// stand for multiplicity 0, absent regions for the neutral usage of their
// family; hypotheses that were weakened away never enter the map.
struct UsageMap {
  std::map<std::string, Mult> vars;
  std::map<std::string, RegionUsage> regions;
  bool operator==(const UsageMap&) const = default;
};

struct MsumResult {
  bool ok = false;
  UsageMap value;
  std::string key;  // clashing variable or region
  ClashKind reason = ClashKind::ComponentClash;
};

MsumResult msum(const UsageMap& a, const UsageMap& b);

// aff(x:(u,A)) iff u = 1; aff(r:(<v,v'>,A)) iff 1 in {v,v'}, or r is volatile
// and v' != 0.
bool is_aff_hyp(Mult var_usage);
bool is_aff_hyp(const RegionUsage& u, bool volatile_region);

// Promotion guard: first hypothesis in the map that is affine, if any.
// `volatile_of` gives the declared volatility per region.
std::optional<std::string> find_affine_hypothesis(
    const UsageMap& m, const std::map<std::string, bool>& volatile_of);

}  // namespace aic

#endif
