#pragma once

#include <set>
#include <string>
#include <vector>

#include "orc/ast.hpp"

namespace orc {

using NameSet = std::set<std::string>;

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

void collect_free(const Expression& e, const NameSet& bound, NameSet& out);

inline void collect_free(const OrcValue& v, const NameSet& bound,
                         NameSet& out) {
  if (const auto* d = v.closure()) {
    NameSet b = bound;
    b.insert((*d)->name);
    b.insert((*d)->param);
    collect_free(*(*d)->body, b, out);
  } else if (const auto* l =
                 std::get_if<std::shared_ptr<const ListVal>>(&v.v)) {
    for (const auto& it : (*l)->items) collect_free(it, bound, out);
  } else if (const auto* t =
                 std::get_if<std::shared_ptr<const TupleVal>>(&v.v)) {
    for (const auto& it : (*t)->items) collect_free(it, bound, out);
  }
}

inline void collect_free(const Parameter& p, const NameSet& bound,
                         NameSet& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, OrcValue>) {
          collect_free(x, bound, out);
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (!bound.contains(x)) out.insert(x);
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const WrapParam>>) {
          collect_free(x->inner, bound, out);
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const TupleParam>> ||
                             std::is_same_v<T,
                                            std::shared_ptr<const ListParam>>) {
          for (const auto& it : x->items) collect_free(it, bound, out);
        }
      },
      p.v);
}

inline void collect_free(const Expression& e, const NameSet& bound,
                         NameSet& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ParamExpr>) {
          collect_free(x.p, bound, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          collect_free(x.target, bound, out);
          collect_free(x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, ParallelExpr> ||
                             std::is_same_v<T, OtherwiseExpr>) {
          collect_free(*x.left, bound, out);
          collect_free(*x.right, bound, out);
        } else if constexpr (std::is_same_v<T, SequentialExpr>) {
          collect_free(*x.left, bound, out);
          NameSet b = bound;
          b.insert(x.var);
          collect_free(*x.right, b, out);
        } else if constexpr (std::is_same_v<T, PruningExpr>) {
          NameSet b = bound;
          b.insert(x.var);
          collect_free(*x.left, b, out);
          collect_free(*x.right, bound, out);
        } else if constexpr (std::is_same_v<T, DeclareExpr>) {
          NameSet bd = bound;
          bd.insert(x.def->name);
          bd.insert(x.def->param);
          collect_free(*x.def->body, bd, out);
          NameSet bb = bound;
          bb.insert(x.def->name);
          collect_free(*x.body, bb, out);
        } else if constexpr (std::is_same_v<T, WrapExpr>) {
          collect_free(*x.inner, bound, out);
        }
      },
      e.v);
}

inline NameSet free_variables(const Expression& e) {
  NameSet out;
  collect_free(e, {}, out);
  return out;
}
inline NameSet free_variables(const Parameter& p) {
  NameSet out;
  collect_free(p, {}, out);
  return out;
}
inline NameSet free_variables(const OrcValue& v) {
  NameSet out;
  collect_free(v, {}, out);
  return out;
}

inline bool value_closed(const OrcValue& v) { return free_variables(v).empty(); }

/// A name not colliding with anything in `avoid`, derived from `base`.
inline std::string fresh_name(const std::string& base, const NameSet& avoid) {
  if (!avoid.contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!avoid.contains(c)) return c;
  }
}

// ---------------------------------------------------------------------------
// Capture-avoiding substitution
// ---------------------------------------------------------------------------

ExprPtr substitute(const ExprPtr& e, const std::string& x, const Parameter& p);

inline OrcValue substitute(const OrcValue& v, const std::string& x,
                           const Parameter& p) {
  if (const auto* d = v.closure()) {
    const Definition& def = **d;
    if (def.name == x || def.param == x) return v;
    NameSet fv_body = free_variables(*def.body);
    if (!fv_body.contains(x)) return v;
    // Binder renaming when the payload's free names collide.
    NameSet fv_p = free_variables(p);
    std::string name = def.name;
    std::string param = def.param;
    ExprPtr body = def.body;
    if (fv_p.contains(name)) {
      NameSet avoid = fv_p;
      avoid.insert(fv_body.begin(), fv_body.end());
      avoid.insert(x);
      avoid.insert(param);
      std::string nn = fresh_name(name, avoid);
      body = substitute(body, name, param_var(nn));
      name = nn;
    }
    if (fv_p.contains(param)) {
      NameSet avoid = fv_p;
      NameSet fb = free_variables(*body);
      avoid.insert(fb.begin(), fb.end());
      avoid.insert(x);
      avoid.insert(name);
      std::string np = fresh_name(param, avoid);
      body = substitute(body, param, param_var(np));
      param = np;
    }
    return OrcValue{DefPtr(make_def(name, param, substitute(body, x, p)))};
  }
  if (const auto* l = std::get_if<std::shared_ptr<const ListVal>>(&v.v)) {
    bool touched = false;
    std::vector<OrcValue> items;
    for (const auto& it : (*l)->items) {
      items.push_back(substitute(it, x, p));
      touched = touched || !equal(items.back(), it);
    }
    return touched ? val_list(std::move(items)) : v;
  }
  if (const auto* t = std::get_if<std::shared_ptr<const TupleVal>>(&v.v)) {
    bool touched = false;
    std::vector<OrcValue> items;
    for (const auto& it : (*t)->items) {
      items.push_back(substitute(it, x, p));
      touched = touched || !equal(items.back(), it);
    }
    return touched ? val_tuple(std::move(items)) : v;
  }
  return v;
}

inline Parameter substitute(const Parameter& q, const std::string& x,
                            const Parameter& p) {
  return std::visit(
      [&](const auto& w) -> Parameter {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, OrcValue>) {
          return param_value(substitute(w, x, p));
        } else if constexpr (std::is_same_v<T, StopParam>) {
          return q;
        } else if constexpr (std::is_same_v<T, std::string>) {
          return w == x ? p : q;
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const WrapParam>>) {
          return param_wrap(substitute(w->inner, x, p), w->causes, w->weak,
                            w->trig);
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const TupleParam>>) {
          std::vector<Parameter> items;
          for (const auto& it : w->items) items.push_back(substitute(it, x, p));
          return param_tuple(std::move(items));
        } else {
          std::vector<Parameter> items;
          for (const auto& it : w->items) items.push_back(substitute(it, x, p));
          return param_list(std::move(items));
        }
      },
      q.v);
}

/// Renames a bound variable: rebuilds `e` with free occurrences of `from`
/// replaced by the fresh variable `to`. `to` must not occur free in `e`.
inline ExprPtr rename_free(const ExprPtr& e, const std::string& from,
                           const std::string& to) {
  return substitute(e, from, param_var(to));
}

inline ExprPtr substitute(const ExprPtr& e, const std::string& x,
                          const Parameter& p) {
  const Expression& ex = *e;
  NameSet fv_p;  // computed lazily where binders may capture
  auto needs_rename = [&](const std::string& binder) {
    fv_p = free_variables(p);
    return fv_p.contains(binder);
  };
  return std::visit(
      [&](const auto& w) -> ExprPtr {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ParamExpr>) {
          return e_param(substitute(w.p, x, p));
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          return e_call(substitute(w.target, x, p), substitute(w.arg, x, p));
        } else if constexpr (std::is_same_v<T, HandleExpr> ||
                             std::is_same_v<T, BottomExpr>) {
          return e;
        } else if constexpr (std::is_same_v<T, ParallelExpr>) {
          return e_par(substitute(w.left, x, p), substitute(w.right, x, p));
        } else if constexpr (std::is_same_v<T, SequentialExpr>) {
          ExprPtr left = substitute(w.left, x, p);
          if (w.var == x) return e_seq(left, w.var, w.right);
          std::string var = w.var;
          ExprPtr right = w.right;
          if (free_variables(*right).contains(x) && needs_rename(var)) {
            NameSet avoid = fv_p;
            NameSet fr = free_variables(*right);
            avoid.insert(fr.begin(), fr.end());
            avoid.insert(x);
            var = fresh_name(var, avoid);
            right = rename_free(right, w.var, var);
          }
          return e_seq(left, var, substitute(right, x, p));
        } else if constexpr (std::is_same_v<T, PruningExpr>) {
          ExprPtr right = substitute(w.right, x, p);
          if (w.var == x) return e_prune(w.left, w.var, right);
          std::string var = w.var;
          ExprPtr left = w.left;
          if (free_variables(*left).contains(x) && needs_rename(var)) {
            NameSet avoid = fv_p;
            NameSet fl = free_variables(*left);
            avoid.insert(fl.begin(), fl.end());
            avoid.insert(x);
            var = fresh_name(var, avoid);
            left = rename_free(left, w.var, var);
          }
          return e_prune(substitute(left, x, p), var, right);
        } else if constexpr (std::is_same_v<T, OtherwiseExpr>) {
          return e_otherwise(substitute(w.left, x, p),
                             substitute(w.right, x, p));
        } else if constexpr (std::is_same_v<T, DeclareExpr>) {
          OrcValue dv{DefPtr(w.def)};
          OrcValue sub = substitute(dv, x, p);
          DefPtr def = *sub.closure();
          ExprPtr body = w.body;
          std::string dname = def->name;
          if (w.def->name != x) {
            if (free_variables(*body).contains(x) && needs_rename(dname)) {
              NameSet avoid = fv_p;
              NameSet fb = free_variables(*body);
              avoid.insert(fb.begin(), fb.end());
              avoid.insert(x);
              std::string nn = fresh_name(dname, avoid);
              body = rename_free(body, dname, nn);
              def = make_def(nn, def->param, def->body);
            }
            body = substitute(body, x, p);
          }
          return e_declare(def, body);
        } else {  // WrapExpr
          return e_wrap(substitute(w.inner, x, p), w.causes, w.weak, w.trig);
        }
      },
      ex.v);
}

// ---------------------------------------------------------------------------
// Program validation
// ---------------------------------------------------------------------------

struct Violation {
  std::string path;
  std::string message;
};

namespace detail {
inline void validate_param(const Parameter& p, const std::string& path,
                           const NameSet& bound, const NameSet& known,
                           std::vector<Violation>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (!bound.contains(x) && !known.contains(x))
            out.push_back({path, "unbound variable '" + x + "'"});
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const WrapParam>>) {
          out.push_back({path, "cause wrapper is internal-only"});
        } else if constexpr (std::is_same_v<T,
                                            std::shared_ptr<const TupleParam>> ||
                             std::is_same_v<T,
                                            std::shared_ptr<const ListParam>>) {
          int i = 0;
          for (const auto& it : x->items)
            validate_param(it, path + "[" + std::to_string(i++) + "]", bound,
                           known, out);
        }
      },
      p.v);
}

inline void validate_expr(const Expression& e, const std::string& path,
                          const NameSet& bound, const NameSet& known,
                          std::vector<Violation>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ParamExpr>) {
          validate_param(x.p, path, bound, known, out);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          validate_param(x.target, path + ".target", bound, known, out);
          validate_param(x.arg, path + ".arg", bound, known, out);
        } else if constexpr (std::is_same_v<T, HandleExpr>) {
          out.push_back({path, "response handle ?k is internal-only"});
        } else if constexpr (std::is_same_v<T, BottomExpr>) {
          out.push_back({path, "bottom is internal-only"});
        } else if constexpr (std::is_same_v<T, ParallelExpr>) {
          validate_expr(*x.left, path + ".left", bound, known, out);
          validate_expr(*x.right, path + ".right", bound, known, out);
        } else if constexpr (std::is_same_v<T, SequentialExpr>) {
          validate_expr(*x.left, path + ".left", bound, known, out);
          NameSet b = bound;
          b.insert(x.var);
          validate_expr(*x.right, path + ".right", b, known, out);
        } else if constexpr (std::is_same_v<T, PruningExpr>) {
          NameSet b = bound;
          b.insert(x.var);
          validate_expr(*x.left, path + ".left", b, known, out);
          validate_expr(*x.right, path + ".right", bound, known, out);
        } else if constexpr (std::is_same_v<T, OtherwiseExpr>) {
          validate_expr(*x.left, path + ".left", bound, known, out);
          validate_expr(*x.right, path + ".right", bound, known, out);
        } else if constexpr (std::is_same_v<T, DeclareExpr>) {
          NameSet bd = bound;
          bd.insert(x.def->name);
          bd.insert(x.def->param);
          validate_expr(*x.def->body, path + ".def", bd, known, out);
          NameSet bb = bound;
          bb.insert(x.def->name);
          validate_expr(*x.body, path + ".body", bb, known, out);
        } else {  // WrapExpr
          out.push_back({path, "cause wrapper is internal-only"});
          validate_expr(*x.inner, path + ".inner", bound, known, out);
        }
      },
      e.v);
}
}  // namespace detail

/// Checks that `e` is a user program: no handles, no bottom, no wrappers, and
/// no free variables outside `known` (builtin sites and scenario bindings).
inline std::vector<Violation> validate_program(const Expression& e,
                                               const NameSet& known = {}) {
  std::vector<Violation> out;
  detail::validate_expr(e, "root", {}, known, out);
  return out;
}

}  // namespace orc
