#pragma once

// Expression trees over C(N) and the dual-mode evaluator: "direct" runs every
// node through the transported operations; "pullback" evaluates the whole tree
// classically on preimages and re-images once. The two must agree.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "starcalc/error.hpp"
#include "starcalc/star_complex.hpp"

namespace starcalc {

enum class ExprKind { literal, constant, variable, add, sub, mul, div, conj, norm, neg };
enum class ConstantKind { zero, one, i };

struct Expr {
  ExprKind kind = ExprKind::constant;
  double re = 0.0;  // literal preimages
  double im = 0.0;
  ConstantKind constant = ConstantKind::zero;
  std::vector<Expr> children;

  static Expr literal(double re, double im) { return Expr{ExprKind::literal, re, im, ConstantKind::zero, {}}; }
  static Expr make_constant(ConstantKind c) { return Expr{ExprKind::constant, 0.0, 0.0, c, {}}; }
  static Expr variable() { return Expr{ExprKind::variable, 0.0, 0.0, ConstantKind::zero, {}}; }
  static Expr unary(ExprKind k, Expr child) { return Expr{k, 0.0, 0.0, ConstantKind::zero, {std::move(child)}}; }
  static Expr binary(ExprKind k, Expr lhs, Expr rhs) {
    return Expr{k, 0.0, 0.0, ConstantKind::zero, {std::move(lhs), std::move(rhs)}};
  }

  friend bool operator==(const Expr&, const Expr&) = default;
};

inline bool is_binary(ExprKind k) {
  return k == ExprKind::add || k == ExprKind::sub || k == ExprKind::mul || k == ExprKind::div;
}

inline bool is_unary(ExprKind k) { return k == ExprKind::conj || k == ExprKind::norm || k == ExprKind::neg; }

inline std::size_t expr_depth(const Expr& e) {
  std::size_t d = 0;
  for (const auto& c : e.children) d = std::max(d, expr_depth(c));
  return d + 1;
}

inline bool uses_variable(const Expr& e) {
  if (e.kind == ExprKind::variable) return true;
  for (const auto& c : e.children)
    if (uses_variable(c)) return true;
  return false;
}

namespace detail {
inline int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul:
    case ExprKind::div: return 2;
    default: return 3;
  }
}

inline void print_into(const Expr& e, int min_prec, std::string& out) {
  const int prec = precedence(e.kind);
  const bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (e.kind) {
    case ExprKind::literal: out += "(" + format_number(e.re) + "," + format_number(e.im) + ")"; break;
    case ExprKind::constant:
      out += e.constant == ConstantKind::zero ? "0" : e.constant == ConstantKind::one ? "1" : "i";
      break;
    case ExprKind::variable: out += 'z'; break;
    case ExprKind::conj:
    case ExprKind::norm:
      out += e.kind == ExprKind::conj ? "conj(" : "norm(";
      print_into(e.children[0], 0, out);
      out += ')';
      break;
    case ExprKind::neg:
      out += '-';
      print_into(e.children[0], 3, out);
      break;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div: {
      static constexpr char ops[] = {'+', '-', '*', '/'};
      print_into(e.children[0], prec, out);
      out += ops[static_cast<int>(e.kind) - static_cast<int>(ExprKind::add)];
      print_into(e.children[1], prec + 1, out);
      break;
    }
  }
  if (wrap) out += ')';
}
}  // namespace detail

/// Canonical concrete syntax; parse(print(e)) == e.
inline std::string print(const Expr& e) {
  std::string out;
  detail::print_into(e, 0, out);
  return out;
}

enum class EvalMode { direct, pullback };

inline std::string_view to_string(EvalMode m) { return m == EvalMode::direct ? "direct" : "pullback"; }

inline EvalMode parse_mode(std::string_view s) {
  if (s == "direct") return EvalMode::direct;
  if (s == "pullback") return EvalMode::pullback;
  throw Error(Errc::unknown_name, "unknown mode '" + std::string(s) + "' (expected direct or pullback)");
}

namespace detail {
inline void attach_subterm(Error& e, const Expr& node) {
  if (e.subterm().empty()) e.set_subterm(print(node));
}

// The norm of a subterm re-enters the field as (alpha(|w|), beta(0)).
inline StarComplex eval_direct(const Expr& e, const GeneratorPair& pair, const std::optional<StarComplex>& z) {
  try {
    switch (e.kind) {
      case ExprKind::literal: return StarComplex::from_preimages(pair, e.re, e.im);
      case ExprKind::constant: {
        const auto k = constants(pair);
        return e.constant == ConstantKind::zero ? k.zero : e.constant == ConstantKind::one ? k.one : k.i_unit;
      }
      case ExprKind::variable:
        if (!z) throw Error(Errc::unbound_variable, "variable 'z' is only bound under grid/quotient");
        return *z;
      case ExprKind::conj: return c_conj(eval_direct(e.children[0], pair, z));
      case ExprKind::neg: return c_neg(eval_direct(e.children[0], pair, z));
      case ExprKind::norm: {
        const StarReal n = c_norm(eval_direct(e.children[0], pair, z));
        return StarComplex::from_parts(pair, iota(GeneratorPair{pair.beta, pair.alpha}, n), star_zero(pair.beta));
      }
      case ExprKind::add: return c_add(eval_direct(e.children[0], pair, z), eval_direct(e.children[1], pair, z));
      case ExprKind::sub: return c_sub(eval_direct(e.children[0], pair, z), eval_direct(e.children[1], pair, z));
      case ExprKind::mul: return c_mul(eval_direct(e.children[0], pair, z), eval_direct(e.children[1], pair, z));
      case ExprKind::div: return c_div(eval_direct(e.children[0], pair, z), eval_direct(e.children[1], pair, z));
    }
  } catch (Error& err) {
    attach_subterm(err, e);
    throw;
  }
  throw Error(Errc::arity, "malformed expression node");
}

inline std::complex<double> eval_classical(const Expr& e, const std::optional<std::complex<double>>& z) {
  using C = std::complex<double>;
  try {
    switch (e.kind) {
      case ExprKind::literal: return {e.re, e.im};
      case ExprKind::constant:
        return e.constant == ConstantKind::zero ? C(0, 0) : e.constant == ConstantKind::one ? C(1, 0) : C(0, 1);
      case ExprKind::variable:
        if (!z) throw Error(Errc::unbound_variable, "variable 'z' is only bound under grid/quotient");
        return *z;
      case ExprKind::conj: return std::conj(eval_classical(e.children[0], z));
      case ExprKind::neg: return -eval_classical(e.children[0], z);
      case ExprKind::norm: return {std::abs(eval_classical(e.children[0], z)), 0.0};
      case ExprKind::add: return eval_classical(e.children[0], z) + eval_classical(e.children[1], z);
      case ExprKind::sub: return eval_classical(e.children[0], z) - eval_classical(e.children[1], z);
      case ExprKind::mul: {
        const C p = eval_classical(e.children[0], z), q = eval_classical(e.children[1], z);
        return {p.real() * q.real() - p.imag() * q.imag(), p.real() * q.imag() + p.imag() * q.real()};
      }
      case ExprKind::div: {
        const C p = eval_classical(e.children[0], z), q = eval_classical(e.children[1], z);
        const double den = q.real() * q.real() + q.imag() * q.imag();
        if (den == 0.0) throw Error(Errc::division_by_zero, "division by the *-complex zero");
        return {(p.real() * q.real() + p.imag() * q.imag()) / den, (p.imag() * q.real() - p.real() * q.imag()) / den};
      }
    }
  } catch (Error& err) {
    attach_subterm(err, e);
    throw;
  }
  throw Error(Errc::arity, "malformed expression node");
}
}  // namespace detail

/// Evaluates `e` over `pair`. `z` binds the variable (grid/quotient contexts only).
inline StarComplex dual_mode_eval(const Expr& e, const GeneratorPair& pair, EvalMode mode,
                                  const std::optional<StarComplex>& z = std::nullopt) {
  if (mode == EvalMode::direct) return detail::eval_direct(e, pair, z);
  std::optional<std::complex<double>> zp;
  if (z) {
    if (z->pair() != pair) throw Error(Errc::pair_mismatch, "bound variable uses a different generator pair");
    zp = z->preimage();
  }
  const auto value = detail::eval_classical(e, zp);
  try {
    return StarComplex::from_preimage(pair, value);
  } catch (Error& err) {
    detail::attach_subterm(err, e);
    throw;
  }
}

}  // namespace starcalc
