#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace starcalc {

enum class Errc {
  unknown_name,
  overflow,
  domain,
  generator_mismatch,
  pair_mismatch,
  division_by_zero,
  negative_argument,
  degenerate_parameter,
  domain_mismatch,
  point_not_in_domain,
  not_applicable,
  bad_inverse,
  no_involution,
  no_unit,
  unsupported_suite,
  bounds,
  syntax,
  arity,
  unbound_variable,
  format,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_name: return "unknown-name";
    case Errc::overflow: return "overflow";
    case Errc::domain: return "domain";
    case Errc::generator_mismatch: return "generator-mismatch";
    case Errc::pair_mismatch: return "pair-mismatch";
    case Errc::division_by_zero: return "division-by-zero";
    case Errc::negative_argument: return "negative-argument";
    case Errc::degenerate_parameter: return "degenerate-parameter";
    case Errc::domain_mismatch: return "domain-mismatch";
    case Errc::point_not_in_domain: return "point-not-in-domain";
    case Errc::not_applicable: return "not-applicable";
    case Errc::bad_inverse: return "bad-x0-inverse";
    case Errc::no_involution: return "no-involution";
    case Errc::no_unit: return "no-unit";
    case Errc::unsupported_suite: return "unsupported-suite";
    case Errc::bounds: return "bounds";
    case Errc::syntax: return "syntax";
    case Errc::arity: return "arity";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::format: return "format";
  }
  return "unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // Set once by the expression evaluator: the innermost subterm that failed.
  const std::string& subterm() const noexcept { return subterm_; }
  void set_subterm(std::string s) { subterm_ = std::move(s); }

  // Byte offset into parser input, or -1.
  long offset() const noexcept { return offset_; }
  void set_offset(long off) noexcept { offset_ = off; }

 private:
  Errc code_;
  std::string subterm_;
  long offset_ = -1;
};

}  // namespace starcalc
