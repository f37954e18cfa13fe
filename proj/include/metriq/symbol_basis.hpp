#pragma once

// A declared basis of irrational symbols. Exact scalars are rational linear
// combinations of 1 and these symbols; all exact decisions in the library
// assume the declared values are rationally independent of each other and 1.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "metriq/error.hpp"
#include "metriq/numeric.hpp"

namespace metriq {

class SymbolBasis {
 public:
  struct Symbol {
    std::string name;
    std::string value_text;  // decimal literal, >= 50 significant digits
    Real value;
    double value_as_double;
  };

  using Ptr = std::shared_ptr<const SymbolBasis>;

  /// Build from user declarations (name, decimal value string).
  static Ptr make(const std::vector<std::pair<std::string, std::string>>& decls) {
    auto basis = std::make_shared<SymbolBasis>();
    for (const auto& [name, text] : decls) {
      Real value(text);
      if (significant_digits(text) < 50) {
        raise(Errc::InvalidConfig, "symbol '" + name + "' must declare at least 50 significant digits");
      }
      basis->push(name, text, value);
    }
    return basis;
  }

  /// Build from values computed at working precision.
  static Ptr make_computed(const std::vector<std::pair<std::string, Real>>& decls) {
    auto basis = std::make_shared<SymbolBasis>();
    int digits = std::max(precision::digits(), 50) + 5;
    for (const auto& [name, value] : decls) {
      basis->push(name, value.str(digits), value);
    }
    return basis;
  }

  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(std::size_t i) const { return symbols_.at(i); }

  /// 0-based symbol index for a name, if declared.
  const std::size_t* index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &it->second;
  }

  bool same_as(const SymbolBasis& other) const {
    if (this == &other) return true;
    if (symbols_.size() != other.symbols_.size()) return false;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name != other.symbols_[i].name) return false;
      if (symbols_[i].value_text != other.symbols_[i].value_text) return false;
    }
    return true;
  }

  /// Common basis of two scalars/polynomials. Null is compatible with
  /// anything; two non-null bases must be structurally identical.
  static Ptr merge(const Ptr& a, const Ptr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (a->same_as(*b)) return a;
    raise(Errc::BasisMismatch, "operands declare different symbol bases ('" + a->describe() + "' vs '" +
                                   b->describe() + "')");
  }

  std::string describe() const {
    std::string out;
    for (const auto& s : symbols_) {
      if (!out.empty()) out += ",";
      out += s.name;
    }
    return out.empty() ? "<rational>" : out;
  }

  // internal: used by the named constructors only
  void push(const std::string& name, const std::string& text, const Real& value) {
    if (name.empty() || name == "1") {
      raise(Errc::InvalidConfig, "invalid symbol name '" + name + "'");
    }
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        raise(Errc::InvalidConfig, "invalid symbol name '" + name + "'");
      }
    }
    if (std::isdigit(static_cast<unsigned char>(name[0]))) {
      raise(Errc::InvalidConfig, "symbol name '" + name + "' must not start with a digit");
    }
    if (by_name_.count(name)) {
      raise(Errc::InvalidConfig, "duplicate symbol name '" + name + "'");
    }
    if (!(value > 0) || !isfinite(value)) {
      raise(Errc::InvalidConfig, "symbol '" + name + "' must have a finite positive value");
    }
    by_name_[name] = symbols_.size();
    symbols_.push_back(Symbol{name, text, value, value.convert_to<double>()});
  }

 private:
  std::vector<Symbol> symbols_;
  std::map<std::string, std::size_t> by_name_;
};

using BasisPtr = SymbolBasis::Ptr;

}  // namespace metriq
