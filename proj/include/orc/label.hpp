#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orc/ast.hpp"

namespace orc {

/// Transition labels of the calculus. ExtCall/IntCall/HiddenOmega/
/// HiddenPublish form the hidden class n; Publish is !v; Omega is w.
enum class LabelKind {
  Publish,
  ExtCall,
  IntCall,
  HiddenOmega,
  HiddenPublish,
  Omega
};

struct Label {
  LabelKind kind = LabelKind::Omega;
  std::optional<OrcValue> value;   // Publish/HiddenPublish payload, ExtCall arg
  std::optional<Key> handle;       // ExtCall fresh handle
  std::optional<std::string> site; // ExtCall site display, IntCall def name

  static Label publish(OrcValue v) {
    return Label{LabelKind::Publish, std::move(v), {}, {}};
  }
  static Label ext_call(std::string site, Key handle, OrcValue arg) {
    return Label{LabelKind::ExtCall, std::move(arg), handle, std::move(site)};
  }
  static Label int_call(std::string def_name) {
    return Label{LabelKind::IntCall, {}, {}, std::move(def_name)};
  }
  static Label hidden_omega() { return Label{LabelKind::HiddenOmega, {}, {}, {}}; }
  static Label hidden_publish(OrcValue v) {
    return Label{LabelKind::HiddenPublish, std::move(v), {}, {}};
  }
  static Label omega() { return Label{LabelKind::Omega, {}, {}, {}}; }

  bool is_publication() const { return kind == LabelKind::Publish; }
  bool is_termination() const { return kind == LabelKind::Omega; }
  bool is_hidden() const { return !is_publication() && !is_termination(); }
};

inline bool equal(const Label& a, const Label& b) {
  if (a.kind != b.kind || a.handle != b.handle || a.site != b.site)
    return false;
  if (a.value.has_value() != b.value.has_value()) return false;
  if (a.value && !equal(*a.value, *b.value)) return false;
  return true;
}

inline bool trigger_matches(Trigger t, const Label& l) {
  switch (t) {
    case Trigger::Publications: return l.is_publication();
    case Trigger::AllLabels: return true;
    case Trigger::Termination: return l.is_termination();
  }
  return false;
}

/// Full textual form, e.g. "!2", "?each_0([A1, A2])", "h(!1)", "omega".
inline std::string render(const Label& l) {
  switch (l.kind) {
    case LabelKind::Publish: return "!" + render(*l.value);
    case LabelKind::ExtCall:
      return "?" + *l.site + "_" + std::to_string(*l.handle) + "(" +
             render(*l.value) + ")";
    case LabelKind::IntCall: return "?D:" + *l.site;
    case LabelKind::HiddenOmega: return "h(omega)";
    case LabelKind::HiddenPublish: return "h(!" + render(*l.value) + ")";
    case LabelKind::Omega: return "omega";
  }
  return "?";
}

/// Call-report form for site-call events, e.g. "each([A1, A2])",
/// "best_offer.write(null)". Signal arguments print as empty parens.
inline std::string call_text(const Label& l) {
  if (l.kind != LabelKind::ExtCall) return render(l);
  std::string args;
  if (const auto* tup =
          std::get_if<std::shared_ptr<const TupleVal>>(&l.value->v)) {
    for (std::size_t i = 0; i < (*tup)->items.size(); ++i) {
      if (i) args += ", ";
      args += render((*tup)->items[i]);
    }
  } else if (!l.value->is_signal()) {
    args = render(*l.value);
  }
  return *l.site + "(" + args + ")";
}

inline std::string render(const std::vector<Label>& seq) {
  std::string s = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ", ";
    s += render(seq[i]);
  }
  return s + "]";
}

/// Renumbers the handles appearing in ExtCall labels by first occurrence.
/// Handle names are fresh and therefore arbitrary; comparing reordered words
/// (Prop. 2 membership) needs this normal form.
inline std::vector<Label> normalize_handles(std::vector<Label> seq) {
  std::unordered_map<Key, Key> remap;
  for (auto& l : seq) {
    if (l.kind != LabelKind::ExtCall) continue;
    auto [it, inserted] =
        remap.emplace(*l.handle, static_cast<Key>(remap.size()));
    l.handle = it->second;
  }
  return seq;
}

}  // namespace orc
