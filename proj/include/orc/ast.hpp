#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "orc/keyset.hpp"

namespace orc {

struct Definition;
struct Expression;
struct Parameter;
struct OrcValue;

using DefPtr = std::shared_ptr<const Definition>;
using ExprPtr = std::shared_ptr<const Expression>;

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

struct SignalV {
  bool operator==(const SignalV&) const = default;
};
struct NullV {
  bool operator==(const NullV&) const = default;
};

/// Opaque scenario constant (agency offers, destinations...). `rank` gives the
/// fixture ordering used by compare/sort/first; equality is by name.
struct Atom {
  std::string name;
  std::optional<std::int64_t> rank;
};

/// An external site as a value: a global site by name, a created instance, or
/// an accessor bound to one method of an instance.
struct SiteRef {
  std::string name;
  std::optional<int> instance;
  std::optional<std::string> method;
  std::string display;  // how the value prints inside labels

  static SiteRef global(std::string n) {
    SiteRef s;
    s.display = n;
    s.name = std::move(n);
    return s;
  }
};

struct ListVal;
struct TupleVal;

struct OrcValue {
  using Variant =
      std::variant<SignalV, NullV, bool, std::int64_t, std::string, Atom,
                   SiteRef, DefPtr, std::shared_ptr<const ListVal>,
                   std::shared_ptr<const TupleVal>>;
  Variant v;

  OrcValue() : v(SignalV{}) {}
  explicit OrcValue(Variant var) : v(std::move(var)) {}

  bool is_signal() const { return std::holds_alternative<SignalV>(v); }
  bool is_null() const { return std::holds_alternative<NullV>(v); }
  bool is_site() const { return std::holds_alternative<SiteRef>(v); }
  bool is_closure() const { return std::holds_alternative<DefPtr>(v); }
  const SiteRef* site() const { return std::get_if<SiteRef>(&v); }
  const DefPtr* closure() const { return std::get_if<DefPtr>(&v); }
};

struct ListVal {
  std::vector<OrcValue> items;
};
struct TupleVal {
  std::vector<OrcValue> items;
};

inline OrcValue val_signal() { return OrcValue{SignalV{}}; }
inline OrcValue val_null() { return OrcValue{NullV{}}; }
inline OrcValue val_bool(bool b) { return OrcValue{b}; }
inline OrcValue val_num(std::int64_t n) { return OrcValue{n}; }
inline OrcValue val_str(std::string s) { return OrcValue{std::move(s)}; }
inline OrcValue val_atom(std::string name,
                         std::optional<std::int64_t> rank = {}) {
  return OrcValue{Atom{std::move(name), rank}};
}
inline OrcValue val_site(SiteRef s) { return OrcValue{std::move(s)}; }
inline OrcValue val_list(std::vector<OrcValue> items) {
  return OrcValue{std::make_shared<const ListVal>(ListVal{std::move(items)})};
}
inline OrcValue val_tuple(std::vector<OrcValue> items) {
  return OrcValue{std::make_shared<const TupleVal>(TupleVal{std::move(items)})};
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

struct StopParam {
  bool operator==(const StopParam&) const = default;
};

struct WrapParam;
struct TupleParam;
struct ListParam;

struct Parameter {
  using Variant = std::variant<OrcValue, StopParam, std::string /*variable*/,
                               std::shared_ptr<const WrapParam>,
                               std::shared_ptr<const TupleParam>,
                               std::shared_ptr<const ListParam>>;
  Variant v;

  Parameter() : v(StopParam{}) {}
  explicit Parameter(Variant var) : v(std::move(var)) {}

  bool is_value() const { return std::holds_alternative<OrcValue>(v); }
  bool is_stop() const { return std::holds_alternative<StopParam>(v); }
  bool is_var() const { return std::holds_alternative<std::string>(v); }
  const OrcValue* value() const { return std::get_if<OrcValue>(&v); }
  const std::string* var() const { return std::get_if<std::string>(&v); }
};

/// Instrumented parameter wrapper <p, c, a>_t: causes attached to the events
/// the inner parameter produces when its trigger class matches.
struct WrapParam {
  Parameter inner;
  KeySet causes;
  KeySet weak;
  Trigger trig = Trigger::AllLabels;
};

struct TupleParam {
  std::vector<Parameter> items;
};
struct ListParam {
  std::vector<Parameter> items;
};

inline Parameter param_value(OrcValue v) { return Parameter{std::move(v)}; }
inline Parameter param_num(std::int64_t n) { return param_value(val_num(n)); }
inline Parameter param_stop() { return Parameter{StopParam{}}; }
inline Parameter param_var(std::string x) { return Parameter{std::move(x)}; }
inline Parameter param_wrap(Parameter inner, KeySet c, KeySet a, Trigger t) {
  return Parameter{std::make_shared<const WrapParam>(
      WrapParam{std::move(inner), std::move(c), std::move(a), t})};
}
inline Parameter param_tuple(std::vector<Parameter> items) {
  return Parameter{
      std::make_shared<const TupleParam>(TupleParam{std::move(items)})};
}
inline Parameter param_list(std::vector<Parameter> items) {
  return Parameter{
      std::make_shared<const ListParam>(ListParam{std::move(items)})};
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct ParamExpr {
  Parameter p;
};
struct CallExpr {
  Parameter target;
  Parameter arg;
};
struct HandleExpr {
  Key handle;
};
struct ParallelExpr {
  ExprPtr left, right;
};
struct SequentialExpr {
  ExprPtr left;
  std::string var;
  ExprPtr right;
};
struct PruningExpr {
  ExprPtr left;
  std::string var;
  ExprPtr right;
};
struct OtherwiseExpr {
  ExprPtr left, right;
};
struct DeclareExpr {
  DefPtr def;
  ExprPtr body;
};
struct BottomExpr {};
/// Instrumented cause wrapper <f, c, a>_t.
struct WrapExpr {
  ExprPtr inner;
  KeySet causes;
  KeySet weak;
  Trigger trig = Trigger::AllLabels;
};

struct Expression {
  using Variant =
      std::variant<ParamExpr, CallExpr, HandleExpr, ParallelExpr,
                   SequentialExpr, PruningExpr, OtherwiseExpr, DeclareExpr,
                   BottomExpr, WrapExpr>;
  Variant v;

  explicit Expression(Variant var) : v(std::move(var)) {}
};

struct Definition {
  std::string name;
  std::string param;
  ExprPtr body;
};

inline ExprPtr expr(Expression::Variant v) {
  return std::make_shared<const Expression>(Expression{std::move(v)});
}
inline ExprPtr e_param(Parameter p) { return expr(ParamExpr{std::move(p)}); }
inline ExprPtr e_value(OrcValue v) { return e_param(param_value(std::move(v))); }
inline ExprPtr e_num(std::int64_t n) { return e_value(val_num(n)); }
inline ExprPtr e_var(std::string x) { return e_param(param_var(std::move(x))); }
inline ExprPtr e_stop() { return e_param(param_stop()); }
inline ExprPtr e_call(Parameter target, Parameter arg) {
  return expr(CallExpr{std::move(target), std::move(arg)});
}
inline ExprPtr e_handle(Key k) { return expr(HandleExpr{k}); }
inline ExprPtr e_par(ExprPtr l, ExprPtr r) {
  return expr(ParallelExpr{std::move(l), std::move(r)});
}
inline ExprPtr e_seq(ExprPtr l, std::string x, ExprPtr r) {
  return expr(SequentialExpr{std::move(l), std::move(x), std::move(r)});
}
inline ExprPtr e_prune(ExprPtr l, std::string x, ExprPtr r) {
  return expr(PruningExpr{std::move(l), std::move(x), std::move(r)});
}
inline ExprPtr e_otherwise(ExprPtr l, ExprPtr r) {
  return expr(OtherwiseExpr{std::move(l), std::move(r)});
}
inline ExprPtr e_declare(DefPtr d, ExprPtr body) {
  return expr(DeclareExpr{std::move(d), std::move(body)});
}
inline ExprPtr e_bottom() { return expr(BottomExpr{}); }
inline ExprPtr e_wrap(ExprPtr inner, KeySet c, KeySet a, Trigger t) {
  return expr(WrapExpr{std::move(inner), std::move(c), std::move(a), t});
}
inline DefPtr make_def(std::string name, std::string param, ExprPtr body) {
  return std::make_shared<const Definition>(
      Definition{std::move(name), std::move(param), std::move(body)});
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool equal(const OrcValue& a, const OrcValue& b);
bool equal(const Parameter& a, const Parameter& b);
bool equal(const Expression& a, const Expression& b);

inline bool equal(const DefPtr& a, const DefPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name == b->name && a->param == b->param &&
         equal(*a->body, *b->body);
}

inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

inline bool equal(const OrcValue& a, const OrcValue& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, SignalV> || std::is_same_v<T, NullV>) {
          return true;
        } else if constexpr (std::is_same_v<T, bool> ||
                             std::is_same_v<T, std::int64_t> ||
                             std::is_same_v<T, std::string>) {
          return x == y;
        } else if constexpr (std::is_same_v<T, Atom>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, SiteRef>) {
          return x.name == y.name && x.instance == y.instance &&
                 x.method == y.method;
        } else if constexpr (std::is_same_v<T, DefPtr>) {
          return equal(x, y);
        } else {
          if (x == y) return true;
          if (x->items.size() != y->items.size()) return false;
          for (std::size_t i = 0; i < x->items.size(); ++i)
            if (!equal(x->items[i], y->items[i])) return false;
          return true;
        }
      },
      a.v);
}

inline bool equal(const Parameter& a, const Parameter& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, OrcValue>) {
          return equal(x, y);
        } else if constexpr (std::is_same_v<T, StopParam>) {
          return true;
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x == y;
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const WrapParam>>) {
          return x->causes == y->causes && x->weak == y->weak &&
                 x->trig == y->trig && equal(x->inner, y->inner);
        } else {
          if (x == y) return true;
          if (x->items.size() != y->items.size()) return false;
          for (std::size_t i = 0; i < x->items.size(); ++i)
            if (!equal(x->items[i], y->items[i])) return false;
          return true;
        }
      },
      a.v);
}

inline bool equal(const Expression& a, const Expression& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, ParamExpr>) {
          return equal(x.p, y.p);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          return equal(x.target, y.target) && equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, HandleExpr>) {
          return x.handle == y.handle;
        } else if constexpr (std::is_same_v<T, ParallelExpr>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, SequentialExpr>) {
          return x.var == y.var && equal(x.left, y.left) &&
                 equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, PruningExpr>) {
          return x.var == y.var && equal(x.left, y.left) &&
                 equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, OtherwiseExpr>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, DeclareExpr>) {
          return equal(x.def, y.def) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, BottomExpr>) {
          return true;
        } else {
          return x.causes == y.causes && x.weak == y.weak &&
                 x.trig == y.trig && equal(x.inner, y.inner);
        }
      },
      a.v);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render(const Parameter& p);

inline std::string render(const OrcValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SignalV>) {
          return "signal";
        } else if constexpr (std::is_same_v<T, NullV>) {
          return "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return quote_string(x);
        } else if constexpr (std::is_same_v<T, Atom>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, SiteRef>) {
          return x.display;
        } else if constexpr (std::is_same_v<T, DefPtr>) {
          return "def " + x->name;
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const ListVal>>) {
          std::string s = "[";
          for (std::size_t i = 0; i < x->items.size(); ++i) {
            if (i) s += ", ";
            s += render(x->items[i]);
          }
          return s + "]";
        } else {
          std::string s = "(";
          for (std::size_t i = 0; i < x->items.size(); ++i) {
            if (i) s += ", ";
            s += render(x->items[i]);
          }
          return s + ")";
        }
      },
      v.v);
}

inline std::string render(const Parameter& p) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, OrcValue>) {
          return render(x);
        } else if constexpr (std::is_same_v<T, StopParam>) {
          return "stop";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const WrapParam>>) {
          return "<" + render(x->inner) + ", " + x->causes.to_string() + ", " +
                 x->weak.to_string() + ">_" + trigger_suffix(x->trig);
        } else if constexpr (std::is_same_v<
                                 T, std::shared_ptr<const TupleParam>>) {
          std::string s = "(";
          for (std::size_t i = 0; i < x->items.size(); ++i) {
            if (i) s += ", ";
            s += render(x->items[i]);
          }
          return s + ")";
        } else {
          std::string s = "[";
          for (std::size_t i = 0; i < x->items.size(); ++i) {
            if (i) s += ", ";
            s += render(x->items[i]);
          }
          return s + "]";
        }
      },
      p.v);
}

/// Precedence bands for the pretty-printer; higher binds tighter.
/// declare=0, otherwise=1, pruning=2, parallel=3, sequential=4, primary=5.
inline std::string render(const Expression& e, int min_prec = 0) {
  auto wrap_if = [&](int prec, std::string s) {
    if (prec < min_prec) return "(" + std::move(s) + ")";
    return s;
  };
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ParamExpr>) {
          return render(x.p);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::string args;
          if (const auto* tp = std::get_if<std::shared_ptr<const TupleParam>>(
                  &x.arg.v)) {
            for (std::size_t i = 0; i < (*tp)->items.size(); ++i) {
              if (i) args += ", ";
              args += render((*tp)->items[i]);
            }
          } else if (x.arg.is_value() && x.arg.value()->is_signal()) {
            args = "";
          } else {
            args = render(x.arg);
          }
          return render(x.target) + "(" + args + ")";
        } else if constexpr (std::is_same_v<T, HandleExpr>) {
          return "?" + std::to_string(x.handle);
        } else if constexpr (std::is_same_v<T, ParallelExpr>) {
          return wrap_if(3, render(*x.left, 3) + " | " + render(*x.right, 4));
        } else if constexpr (std::is_same_v<T, SequentialExpr>) {
          return wrap_if(4, render(*x.left, 4) + " >" + x.var + "> " +
                                render(*x.right, 5));
        } else if constexpr (std::is_same_v<T, PruningExpr>) {
          return wrap_if(2, render(*x.left, 2) + " <" + x.var + "< " +
                                render(*x.right, 3));
        } else if constexpr (std::is_same_v<T, OtherwiseExpr>) {
          return wrap_if(1, render(*x.left, 1) + " ; " + render(*x.right, 2));
        } else if constexpr (std::is_same_v<T, DeclareExpr>) {
          return wrap_if(0, "def " + x.def->name + "(" + x.def->param +
                                ") = " + render(*x.def->body, 1) + " # " +
                                render(*x.body, 0));
        } else if constexpr (std::is_same_v<T, BottomExpr>) {
          return "_|_";
        } else {
          return "<" + render(*x.inner, 0) + ", " + x.causes.to_string() +
                 ", " + x.weak.to_string() + ">_" + trigger_suffix(x.trig);
        }
      },
      e.v);
}

inline std::string render(const ExprPtr& e) { return render(*e); }

}  // namespace orc
