#include "aic/canon.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <tuple>

namespace aic {

namespace {

// --- spine walk ------------------------------------------------------------

struct Walk {
  enum Kind { Value, Beta, LetBang, SetVol, SetPer, Read, NuAtHole, Malformed };
  Kind kind = Malformed;
  TermPtr hole;
  std::function<TermPtr(const TermPtr&)> plug;
  std::string read_addr;
  std::string error;
};

Walk wrapped(Walk inner, std::function<TermPtr(const TermPtr&)> outer) {
  if (inner.kind == Walk::Value || inner.kind == Walk::Malformed) return inner;
  auto inner_plug = inner.plug;
  inner.plug = [inner_plug, outer](const TermPtr& r) { return outer(inner_plug(r)); };
  return inner;
}

std::function<TermPtr(const TermPtr&)> identity_plug() {
  return [](const TermPtr& r) { return r; };
}

// Walks the unique evaluation-context spine E ::= [] | EM | VE | !E |
// let !x = E in M and classifies the hole.
Walk walk_spine(const TermPtr& t) {
  if (is_value(t)) return {Walk::Value, t, identity_plug(), "", ""};
  switch (t->kind) {
    case TermKind::App: {
      TermPtr fn = t->t0, arg = t->t1;
      if (!is_value(fn)) {
        return wrapped(walk_spine(fn),
                       [arg](const TermPtr& r) { return Term::app(r, arg); });
      }
      if (!is_value(arg)) {
        return wrapped(walk_spine(arg),
                       [fn](const TermPtr& r) { return Term::app(fn, r); });
      }
      if (fn->kind == TermKind::Lam)
        return {Walk::Beta, t, identity_plug(), "", ""};
      return {Walk::Malformed, t, identity_plug(), "",
              "application of a non-function value"};
    }
    case TermKind::Bang:
      // t itself is not a value, so the payload is still evaluating.
      return wrapped(walk_spine(t->t0),
                     [](const TermPtr& r) { return Term::bang(r); });
    case TermKind::LetBang: {
      if (!is_value(t->t0)) {
        TermPtr node = t;
        return wrapped(walk_spine(t->t0), [node](const TermPtr& r) {
          return Term::let_bang(node->name, r, node->t1, node->annot);
        });
      }
      return {Walk::LetBang, t, identity_plug(), "", ""};
    }
    case TermKind::Get:
      return {Walk::Read, t, identity_plug(), t->name, ""};
    case TermKind::SetVol:
      return {Walk::SetVol, t, identity_plug(), "", ""};
    case TermKind::SetPer:
      return {Walk::SetPer, t, identity_plug(), "", ""};
    case TermKind::Nu:
      return {Walk::NuAtHole, t, identity_plug(), "", ""};
    case TermKind::StoreVol:
    case TermKind::StorePer:
      return {Walk::Malformed, t, identity_plug(), "",
              "store in non-static position"};
    case TermKind::Par:
      return {Walk::Malformed, t, identity_plug(), "",
              "parallel composition in evaluation position"};
    default:
      return {Walk::Malformed, t, identity_plug(), "", "stuck term"};
  }
}

std::string base_of(const std::string& name) {
  auto pos = name.find_last_of('_');
  if (pos == std::string::npos || pos + 1 >= name.size()) return name;
  for (std::size_t i = pos + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  return name.substr(0, pos);
}

// --- fingerprinting --------------------------------------------------------

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Item {
  bool is_store = false;
  TermPtr thread;
  const StoreEntry* store = nullptr;
};

// Renders one item; nu-bound addresses go through `display`, and every
// occurrence of one is appended to `log`.
std::string render_item(const Item& it,
                        const std::map<std::string, std::string>& display,
                        std::vector<std::string>* log) {
  FreeNameHook hook = [&](const std::string& n) -> std::string {
    auto d = display.find(n);
    if (d == display.end()) return n;
    if (log) log->push_back(n);
    return d->second;
  };
  if (!it.is_store) return "thread: " + alpha_print(it.thread, &hook);
  const StoreEntry& s = *it.store;
  std::string addr = hook(s.addr);
  if (!s.decoration.empty()) addr += "^" + s.decoration;
  return "store: [" + addr + (s.persistent ? " <= " : " <- ") +
         alpha_print(s.value, &hook) + "]";
}

}  // namespace

std::uint64_t fresh_counter_for(const TermPtr& t) {
  std::set<std::string> names;
  collect_names(t, names);
  std::uint64_t max_suffix = 0;
  for (const auto& n : names) {
    auto pos = n.find_last_of('_');
    if (pos == std::string::npos || pos + 1 >= n.size()) continue;
    bool digits = true;
    for (std::size_t i = pos + 1; i < n.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(n[i]))) digits = false;
    if (!digits) continue;
    max_suffix = std::max(max_suffix, std::strtoull(n.c_str() + pos + 1, nullptr, 10));
  }
  return max_suffix + 1;
}

CanonicalProgram canonicalize(const TermPtr& program, std::uint64_t& fresh_counter) {
  CanonicalProgram out;

  std::function<void(const TermPtr&)> collect = [&](const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Par:
        collect(t->t0);
        collect(t->t1);
        return;
      case TermKind::Nu: {
        std::string renamed = base_of(t->name) + "_" + std::to_string(fresh_counter++);
        out.binders.push_back({renamed, t->region, t->annot});
        collect(rename_free(t->t0, t->name, renamed));
        return;
      }
      case TermKind::StoreVol:
      case TermKind::StorePer: {
        if (!is_value(t->t0))
          throw MalformedProgram("store payload must be a value");
        out.stores.push_back(
            {t->name, t->region, t->kind == TermKind::StorePer, t->t0});
        return;
      }
      default: {
        if (contains_store(t))
          throw MalformedProgram("store in non-static position");
        TermPtr thread = t;
        for (;;) {
          Walk w = walk_spine(thread);
          if (w.kind != Walk::NuAtHole) break;
          const TermPtr& nu_node = w.hole;
          std::string renamed =
              base_of(nu_node->name) + "_" + std::to_string(fresh_counter++);
          out.binders.push_back({renamed, nu_node->region, nu_node->annot});
          thread = w.plug(rename_free(nu_node->t0, nu_node->name, renamed));
        }
        out.threads.push_back(thread);
        return;
      }
    }
  };
  collect(program);

  // Canonical naming of the nu prefix: signature refinement over the item
  // multiset, then indices assigned by first occurrence in sorted order.
  std::vector<Item> items;
  for (const auto& th : out.threads) items.push_back({false, th, nullptr});
  for (const auto& st : out.stores) items.push_back({true, nullptr, &st});

  std::map<std::string, std::uint64_t> sig;
  for (const auto& b : out.binders)
    sig[b.name] = fnv1a(b.region + ":" + type_to_string(b.content));

  std::map<std::string, std::string> display;
  auto refresh_display = [&] {
    display.clear();
    for (const auto& [n, s] : sig) display[n] = "@" + hex64(s);
  };

  for (int round = 0; round < 3 && !out.binders.empty(); ++round) {
    refresh_display();
    std::vector<std::string> renders;
    std::vector<std::vector<std::string>> logs;
    for (const auto& it : items) {
      std::vector<std::string> log;
      renders.push_back(render_item(it, display, &log));
      logs.push_back(std::move(log));
    }
    // New signature: the sorted multiset of (render, occurrence slots).
    std::map<std::string, std::vector<std::string>> tokens;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = 0; j < logs[i].size(); ++j)
        tokens[logs[i][j]].push_back(renders[i] + "#" + std::to_string(j));
    }
    for (auto& [name, tks] : tokens) {
      std::sort(tks.begin(), tks.end());
      std::uint64_t h = sig[name];
      for (const auto& tk : tks) h = fnv1a(tk, h);
      sig[name] = h;
    }
  }

  // Order items by refined render, then number binders by first occurrence.
  refresh_display();
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  {
    std::vector<std::string> renders;
    for (const auto& it : items) renders.push_back(render_item(it, display, nullptr));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return renders[a] < renders[b];
    });
  }

  std::map<std::string, std::size_t> index;
  std::map<std::string, std::string> final_names;
  auto assign = [&](const std::string& n) {
    if (index.count(n)) return;
    std::size_t id = index.size();
    index[n] = id;
    final_names[n] = "#" + std::to_string(id);
  };
  for (std::size_t i : order) {
    std::vector<std::string> log;
    render_item(items[i], display, &log);
    for (const auto& n : log) assign(n);
  }
  // Binders with no occurrence come last, ordered by signature and annotation.
  {
    std::vector<const BinderInfo*> unused;
    for (const auto& b : out.binders)
      if (!index.count(b.name)) unused.push_back(&b);
    std::sort(unused.begin(), unused.end(),
              [&](const BinderInfo* a, const BinderInfo* b) {
                auto ka = std::tuple(sig[a->name], a->region, type_to_string(a->content));
                auto kb = std::tuple(sig[b->name], b->region, type_to_string(b->content));
                return ka < kb;
              });
    for (const auto* b : unused) assign(b->name);
  }

  // Final render with assigned names, final sort, assembled fingerprint.
  std::vector<std::pair<std::string, std::size_t>> final_threads, final_stores;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string r = render_item(items[i], final_names, nullptr);
    if (items[i].is_store)
      final_stores.push_back({r, i});
    else
      final_threads.push_back({r, i});
  }
  std::sort(final_threads.begin(), final_threads.end());
  std::sort(final_stores.begin(), final_stores.end());

  std::vector<BinderInfo> binders_by_id(out.binders.size());
  for (const auto& b : out.binders) binders_by_id[index[b.name]] = b;

  std::ostringstream fp;
  for (std::size_t i = 0; i < binders_by_id.size(); ++i) {
    fp << "nu #" << i << " : Reg " << binders_by_id[i].region << " "
       << type_to_string(binders_by_id[i].content) << "\n";
  }
  for (const auto& [r, _] : final_threads) fp << r << "\n";
  for (const auto& [r, _] : final_stores) fp << r << "\n";

  // Reorder the stored vectors to canonical order.
  std::vector<TermPtr> threads2;
  std::vector<StoreEntry> stores2;
  for (const auto& [_, i] : final_threads) threads2.push_back(items[i].thread);
  for (const auto& [_, i] : final_stores) stores2.push_back(*items[i].store);
  out.threads = std::move(threads2);
  out.stores = std::move(stores2);
  out.binders = std::move(binders_by_id);
  out.fingerprint = fp.str();
  return out;
}

CanonicalProgram canonicalize(const TermPtr& program) {
  std::uint64_t counter = fresh_counter_for(program);
  return canonicalize(program, counter);
}

TermPtr state_to_term(const CanonicalProgram& p) {
  std::vector<TermPtr> parts;
  for (const auto& t : p.threads) parts.push_back(t);
  for (const auto& s : p.stores) {
    parts.push_back(s.persistent ? Term::store_per(s.addr, s.value, s.decoration)
                                 : Term::store_vol(s.addr, s.value, s.decoration));
  }
  if (parts.empty()) throw MalformedProgram("empty canonical program");
  TermPtr core = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    core = Term::par(parts[i], core);
  for (std::size_t i = p.binders.size(); i-- > 0;) {
    const auto& b = p.binders[i];
    core = Term::nu(b.name, b.region, b.content, core);
  }
  return core;
}

bool struct_equiv(const TermPtr& p, const TermPtr& q) {
  return canonicalize(p).fingerprint == canonicalize(q).fingerprint;
}

Decomposition decompose(const TermPtr& thread) {
  Walk w = walk_spine(thread);
  Decomposition d;
  d.redex = w.hole;
  d.plug = w.plug;
  d.read_addr = w.read_addr;
  d.error = w.error;
  switch (w.kind) {
    case Walk::Value: d.kind = HoleKind::Value; break;
    case Walk::Beta: d.kind = HoleKind::Beta; break;
    case Walk::LetBang: d.kind = HoleKind::LetBang; break;
    case Walk::SetVol: d.kind = HoleKind::SetVol; break;
    case Walk::SetPer: d.kind = HoleKind::SetPer; break;
    case Walk::Read: d.kind = HoleKind::Read; break;
    case Walk::NuAtHole:
      d.kind = HoleKind::Malformed;
      d.error = "nu binder in evaluation position of a canonical thread";
      break;
    case Walk::Malformed: d.kind = HoleKind::Malformed; break;
  }
  return d;
}

}  // namespace aic
