#include "aic/usage.hpp"

namespace aic {

std::optional<Mult> mult_sum(Mult a, Mult b) {
  if (a == Mult::Zero) return b;
  if (b == Mult::Zero) return a;
  if (a == Mult::Many && b == Mult::Many) return Mult::Many;
  return std::nullopt;  // 1+1, 1+inf
}

std::string mult_to_string(Mult m) {
  switch (m) {
    case Mult::Zero: return "0";
    case Mult::One: return "1";
    case Mult::Many: return "inf";
  }
  return "?";
}

RegionUsage neutral_usage(Family f) {
  switch (f) {
    case Family::Aff: return {Mult::Zero, Mult::Zero, f};
    case Family::Wo: return {Mult::Zero, Mult::Many, f};
    case Family::Exp: return {Mult::Many, Mult::Many, f};
  }
  return {};
}

bool in_family(const RegionUsage& u) {
  switch (u.family) {
    case Family::Aff:
      return u.out != Mult::Many && u.in != Mult::Many;
    case Family::Wo:
      return u.in == Mult::Many && u.out != Mult::Many;
    case Family::Exp:
      return u.out == Mult::Many && u.in == Mult::Many;
  }
  return false;
}

RegionUsage read_usage(Family f) {
  switch (f) {
    case Family::Aff: return {Mult::Zero, Mult::One, f};
    case Family::Wo: return {Mult::Zero, Mult::Many, f};
    case Family::Exp: return {Mult::Many, Mult::Many, f};
  }
  return {};
}

RegionUsage write_usage(Family f) {
  switch (f) {
    case Family::Aff: return {Mult::One, Mult::Zero, f};
    case Family::Wo: return {Mult::One, Mult::Many, f};
    case Family::Exp: return {Mult::Many, Mult::Many, f};
  }
  return {};
}

std::string usage_to_string(const RegionUsage& u) {
  return "<" + mult_to_string(u.out) + "," + mult_to_string(u.in) + ">";
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::Aff: return "aff";
    case Family::Wo: return "wo";
    case Family::Exp: return "exp";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
  if (s == "aff") return Family::Aff;
  if (s == "wo") return Family::Wo;
  if (s == "exp") return Family::Exp;
  return std::nullopt;
}

std::string clash_to_string(ClashKind k) {
  switch (k) {
    case ClashKind::FamilyMismatch: return "family-mismatch";
    case ClashKind::ComponentClash: return "component-clash";
  }
  return "?";
}

UsumResult usum(const RegionUsage& a, const RegionUsage& b) {
  if (a.family != b.family) return {false, {}, ClashKind::FamilyMismatch};
  auto out = mult_sum(a.out, b.out);
  auto in = mult_sum(a.in, b.in);
  if (!out || !in) return {false, {}, ClashKind::ComponentClash};
  RegionUsage r{*out, *in, a.family};
  if (!in_family(r)) return {false, {}, ClashKind::ComponentClash};
  return {true, r, ClashKind::ComponentClash};
}

MsumResult msum(const UsageMap& a, const UsageMap& b) {
  MsumResult res;
  res.value = a;
  for (const auto& [x, m] : b.vars) {
    auto it = res.value.vars.find(x);
    if (it == res.value.vars.end()) {
      res.value.vars.emplace(x, m);
      continue;
    }
    auto s = mult_sum(it->second, m);
    if (!s) {
      res.key = x;
      res.reason = ClashKind::ComponentClash;
      return res;
    }
    it->second = *s;
  }
  for (const auto& [r, u] : b.regions) {
    auto it = res.value.regions.find(r);
    if (it == res.value.regions.end()) {
      res.value.regions.emplace(r, u);
      continue;
    }
    auto s = usum(it->second, u);
    if (!s.ok) {
      res.key = r;
      res.reason = s.reason;
      return res;
    }
    it->second = s.value;
  }
  res.ok = true;
  return res;
}

bool is_aff_hyp(Mult var_usage) { return var_usage == Mult::One; }

bool is_aff_hyp(const RegionUsage& u, bool volatile_region) {
  if (u.out == Mult::One || u.in == Mult::One) return true;
  return volatile_region && u.in != Mult::Zero;
}

std::optional<std::string> find_affine_hypothesis(
    const UsageMap& m, const std::map<std::string, bool>& volatile_of) {
  for (const auto& [x, u] : m.vars) {
    if (is_aff_hyp(u)) return x;
  }
  for (const auto& [r, u] : m.regions) {
    auto it = volatile_of.find(r);
    bool vlt = it != volatile_of.end() && it->second;
    if (is_aff_hyp(u, vlt)) return r;
  }
  return std::nullopt;
}

}  // namespace aic
