#pragma once

#include <memory>
#include <string>
#include <vector>

#include "algchar/errors.hpp"
#include "algchar/scalar.hpp"

namespace algchar {

/// Declared variable set for one computation: chart coordinates first, then
/// simplex parameters t1..tk.  The order is the global monomial-order
/// variable order.  Contexts are immutable and shared by pointer; two
/// contexts compare equal by content.
class VarContext {
 public:
  VarContext(Field f, std::vector<std::string> chart_vars, int n_simplex = 0)
      : field_(f), names_(std::move(chart_vars)), n_chart_((int)names_.size()) {
    for (int a = 1; a <= n_simplex; ++a) names_.push_back("t" + std::to_string(a));
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == "i")
        throw Error("'i' is reserved for the imaginary unit");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw Error("duplicate variable " + names_[i]);
    }
  }

  Field field() const { return field_; }
  int size() const { return (int)names_.size(); }
  int n_chart() const { return n_chart_; }
  int n_simplex() const { return size() - n_chart_; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  /// -1 when the identifier is not declared.
  int index_of(const std::string& s) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == s) return i;
    return -1;
  }

  bool operator==(const VarContext& o) const {
    return field_ == o.field_ && names_ == o.names_ && n_chart_ == o.n_chart_;
  }

 private:
  Field field_;
  std::vector<std::string> names_;
  int n_chart_;
};

using CtxPtr = std::shared_ptr<const VarContext>;

inline CtxPtr make_context(Field f, std::vector<std::string> chart_vars,
                           int n_simplex = 0) {
  return std::make_shared<VarContext>(f, std::move(chart_vars), n_simplex);
}

inline bool same_context(const CtxPtr& a, const CtxPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void check_context(const CtxPtr& a, const CtxPtr& b) {
  if (!same_context(a, b)) throw ShapeError("variable context mismatch");
}

}  // namespace algchar
