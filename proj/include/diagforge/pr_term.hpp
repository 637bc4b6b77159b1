#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagforge/errors.hpp"

namespace diagforge {

enum class PrKind { Zero, Succ, Proj, Comp, PrimRec };

/// A primitive-recursive function term.
///
/// Terms are immutable and share structure, so copies are cheap and safe to
/// hand between threads. Every constructor checks arities, which makes an
/// ill-formed PrTerm unrepresentable:
///
///   Z, S         unary
///   P[i,n]       arity n, 1 <= i <= n
///   C[f; g1..gm] arity of the gi (all equal), f has arity m
///   R[b; s]      arity n+1 where b has arity n and s has arity n+2
///
/// R recurses on its first argument:
///   R[b; s](0, xs)   = b(xs)
///   R[b; s](y+1, xs) = s(y, R[b; s](y, xs), xs)
class PrTerm {
 public:
  static PrTerm zero() { return PrTerm(make(PrKind::Zero, 1, 0, {})); }
  static PrTerm succ() { return PrTerm(make(PrKind::Succ, 1, 0, {})); }

  static PrTerm proj(std::size_t index, std::size_t arity) {
    if (arity == 0 || index == 0 || index > arity) {
      throw ArityError("arity violation at P[" + std::to_string(index) + "," +
                       std::to_string(arity) + "]: projection index must be in 1.." +
                       std::to_string(arity));
    }
    return PrTerm(make(PrKind::Proj, arity, index, {}));
  }

  static PrTerm comp(PrTerm outer, std::vector<PrTerm> inners) {
    if (inners.empty()) throw ArityError("arity violation at C[...]: no inner terms");
    const std::size_t arity = inners.front().arity();
    for (const auto& g : inners) {
      if (g.arity() != arity) {
        throw ArityError("arity violation at C[...]: inner term " + g.to_string() +
                         " has arity " + std::to_string(g.arity()) + ", expected " +
                         std::to_string(arity));
      }
    }
    if (outer.arity() != inners.size()) {
      throw ArityError("arity violation at C[...]: outer term " + outer.to_string() +
                       " has arity " + std::to_string(outer.arity()) + " but " +
                       std::to_string(inners.size()) + " inner terms were given");
    }
    std::vector<PrTerm> children;
    children.reserve(inners.size() + 1);
    children.push_back(std::move(outer));
    for (auto& g : inners) children.push_back(std::move(g));
    return PrTerm(make(PrKind::Comp, arity, 0, std::move(children)));
  }

  static PrTerm prim_rec(PrTerm base, PrTerm step) {
    if (step.arity() != base.arity() + 2) {
      throw ArityError("arity violation at R[" + base.to_string() + "; " + step.to_string() +
                       "]: step has arity " + std::to_string(step.arity()) + ", expected " +
                       std::to_string(base.arity() + 2));
    }
    const std::size_t arity = base.arity() + 1;
    return PrTerm(make(PrKind::PrimRec, arity, 0, {std::move(base), std::move(step)}));
  }

  PrKind kind() const noexcept { return node_->kind; }
  std::size_t arity() const noexcept { return node_->arity; }

  // Proj only.
  std::size_t proj_index() const noexcept { return node_->index; }

  // Comp only.
  const PrTerm& outer() const noexcept { return node_->children.front(); }
  std::size_t inner_count() const noexcept { return node_->children.size() - 1; }
  const PrTerm& inner(std::size_t i) const noexcept { return node_->children[i + 1]; }

  // PrimRec only.
  const PrTerm& base() const noexcept { return node_->children[0]; }
  const PrTerm& step() const noexcept { return node_->children[1]; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& c : node_->children) d = std::max(d, c.depth());
    return d + 1;
  }

  // Canonical text, e.g. "C[S; P[1,1]]".
  std::string to_string() const {
    std::string out;
    print_to(out);
    return out;
  }

  void print_to(std::string& out) const {
    switch (kind()) {
      case PrKind::Zero: out += 'Z'; return;
      case PrKind::Succ: out += 'S'; return;
      case PrKind::Proj:
        out += "P[" + std::to_string(proj_index()) + "," + std::to_string(arity()) + "]";
        return;
      case PrKind::Comp:
      case PrKind::PrimRec: {
        out += kind() == PrKind::Comp ? "C[" : "R[";
        for (std::size_t i = 0; i < node_->children.size(); ++i) {
          if (i) out += "; ";
          node_->children[i].print_to(out);
        }
        out += ']';
        return;
      }
    }
  }

  friend bool operator==(const PrTerm& a, const PrTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.arity() != b.arity() || a.node_->index != b.node_->index)
      return false;
    return a.node_->children == b.node_->children;
  }

 private:
  struct Node {
    PrKind kind;
    std::size_t arity;
    std::size_t index;
    std::vector<PrTerm> children;
  };

  static std::shared_ptr<const Node> make(PrKind k, std::size_t arity, std::size_t index,
                                          std::vector<PrTerm> children) {
    return std::make_shared<const Node>(Node{k, arity, index, std::move(children)});
  }

  explicit PrTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

inline std::string print_pr(const PrTerm& t) { return t.to_string(); }

namespace detail {

class PrParser {
 public:
  explicit PrParser(std::string_view text) : text_(text) {}

  PrTerm parse_all() {
    PrTerm t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(pos_, false, "syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (std::size_t(-1) - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  PrTerm term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    const std::size_t at = pos_;
    const char c = text_[pos_++];
    switch (c) {
      case 'Z': return PrTerm::zero();
      case 'S': return PrTerm::succ();
      case 'P': {
        expect('[');
        std::size_t i = number();
        expect(',');
        std::size_t n = number();
        expect(']');
        return with_offset(at, [&] { return PrTerm::proj(i, n); });
      }
      case 'C': {
        expect('[');
        PrTerm outer = term();
        expect(';');
        std::vector<PrTerm> inners;
        inners.push_back(term());
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == ';') {
          ++pos_;
          inners.push_back(term());
          skip_ws();
        }
        expect(']');
        return with_offset(at, [&] { return PrTerm::comp(std::move(outer), std::move(inners)); });
      }
      case 'R': {
        expect('[');
        PrTerm base = term();
        expect(';');
        PrTerm step = term();
        expect(']');
        return with_offset(at, [&] { return PrTerm::prim_rec(std::move(base), std::move(step)); });
      }
      default:
        pos_ = at;
        fail(std::string("unknown constructor '") + c + "'");
    }
  }

  template <class F>
  static PrTerm with_offset(std::size_t at, F&& build) {
    try {
      return build();
    } catch (const ArityError& e) {
      throw ArityError(std::string(e.what()) + " (offset " + std::to_string(at) + ")");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the canonical grammar (whitespace-insensitive):
//   term     := "Z" | "S" | "P[" nat "," nat "]" | "C[" term ";" termlist "]"
//             | "R[" term ";" term "]"
//   termlist := term | term ";" termlist
// Throws ParseError on syntax errors and ArityError on ill-formed terms.
inline PrTerm parse_pr(std::string_view text) { return detail::PrParser(text).parse_all(); }

}  // namespace diagforge
