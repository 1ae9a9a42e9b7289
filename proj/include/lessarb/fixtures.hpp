#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lessarb/generic.hpp"
#include "lessarb/instances.hpp"

namespace lessarb {
namespace fixtures {

// ---------------------------------------------------------------------------
// Tree = Leaf Int | Branch [Tree]
// ---------------------------------------------------------------------------

class Tree {
 public:
  static Tree leaf(std::int64_t payload) { return Tree(payload); }
  static Tree branch(std::vector<Tree> children) {
    return Tree(std::move(children));
  }

  bool is_leaf() const { return node_.index() == 0; }
  std::int64_t payload() const { return std::get<0>(node_); }
  const std::vector<Tree>& children() const { return std::get<1>(node_); }

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.node_ == b.node_;
  }
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

 private:
  explicit Tree(std::int64_t payload) : node_(payload) {}
  explicit Tree(std::vector<Tree> children) : node_(std::move(children)) {}

  std::variant<std::int64_t, std::vector<Tree>> node_;
};

inline bool is_leaf(const Tree& t) { return t.is_leaf(); }

/// Number of Tree constructors in the value.
inline std::uint64_t node_count(const Tree& t) {
  if (t.is_leaf()) return 1;
  std::uint64_t n = 1;
  for (const auto& child : t.children()) n += node_count(child);
  return n;
}

inline std::uint64_t tree_depth(const Tree& t) {
  if (t.is_leaf()) return 1;
  std::uint64_t deepest = 0;
  for (const auto& child : t.children()) {
    deepest = std::max(deepest, tree_depth(child));
  }
  return deepest + 1;
}

inline std::string show(const Tree& t) {
  if (t.is_leaf()) return "Leaf " + std::to_string(t.payload());
  std::string out = "Branch [";
  bool first = true;
  for (const auto& child : t.children()) {
    if (!first) out += ", ";
    out += show(child);
    first = false;
  }
  return out + "]";
}

/// Immediate subtrees, plus the value with shortened child lists.
inline std::vector<Tree> shrink(const Tree& t) {
  std::vector<Tree> out;
  if (t.is_leaf()) {
    for (auto p : lessarb::shrink(t.payload())) out.push_back(Tree::leaf(p));
    return out;
  }
  for (const auto& child : t.children()) out.push_back(child);
  for (auto& smaller : lessarb::shrink(t.children())) {
    out.push_back(Tree::branch(std::move(smaller)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutually recursive AST, a scale model of a compiler's expression and
// statement types:
//   Expr = Lit Int | Var Text | Call Text [Expr] | Block [Stmt]
//   Stmt = ExprStmt Expr | If Expr [Stmt] [Stmt] | While Expr [Stmt]
// ---------------------------------------------------------------------------

struct Stmt;

struct Expr {
  struct Lit {
    std::int64_t value = 0;
    friend bool operator==(const Lit&, const Lit&) = default;
  };
  struct Var {
    std::string name;
    friend bool operator==(const Var&, const Var&) = default;
  };
  struct Call {
    std::string callee;
    std::vector<Expr> args;
    friend bool operator==(const Call&, const Call&) = default;
  };
  struct Block {
    std::vector<Stmt> body;
    friend bool operator==(const Block&, const Block&) = default;
  };

  std::variant<Lit, Var, Call, Block> node;

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt {
  struct ExprStmt {
    Expr expr;
    friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
  };
  struct If {
    Expr cond;
    std::vector<Stmt> then_branch;
    std::vector<Stmt> else_branch;
    friend bool operator==(const If&, const If&) = default;
  };
  struct While {
    Expr cond;
    std::vector<Stmt> body;
    friend bool operator==(const While&, const While&) = default;
  };

  std::variant<ExprStmt, If, While> node;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

inline bool is_lit(const Expr& e) {
  return std::holds_alternative<Expr::Lit>(e.node);
}

/// The cheapest statement is an expression statement wrapping the cheapest
/// expression, a literal.
inline bool is_lit_stmt(const Stmt& s) {
  const auto* es = std::get_if<Stmt::ExprStmt>(&s.node);
  return es != nullptr && is_lit(es->expr);
}

// Constructor tallies, indexed Lit/Var/Call/Block and ExprStmt/If/While.
struct AstTally {
  std::array<std::uint64_t, 4> expr{};
  std::array<std::uint64_t, 3> stmt{};
};

inline void tally(const Expr& e, AstTally& t);
inline void tally(const Stmt& s, AstTally& t);

inline void tally(const Expr& e, AstTally& t) {
  struct Visitor {
    AstTally& t;
    void operator()(const Expr::Lit&) { ++t.expr[0]; }
    void operator()(const Expr::Var&) { ++t.expr[1]; }
    void operator()(const Expr::Call& c) {
      ++t.expr[2];
      for (const auto& a : c.args) tally(a, t);
    }
    void operator()(const Expr::Block& b) {
      ++t.expr[3];
      for (const auto& s : b.body) tally(s, t);
    }
  };
  std::visit(Visitor{t}, e.node);
}

inline void tally(const Stmt& s, AstTally& t) {
  struct Visitor {
    AstTally& t;
    void operator()(const Stmt::ExprStmt& es) {
      ++t.stmt[0];
      tally(es.expr, t);
    }
    void operator()(const Stmt::If& i) {
      ++t.stmt[1];
      tally(i.cond, t);
      for (const auto& x : i.then_branch) tally(x, t);
      for (const auto& x : i.else_branch) tally(x, t);
    }
    void operator()(const Stmt::While& w) {
      ++t.stmt[2];
      tally(w.cond, t);
      for (const auto& x : w.body) tally(x, t);
    }
  };
  std::visit(Visitor{t}, s.node);
}

inline std::uint64_t node_count(const Expr& e) {
  AstTally t;
  tally(e, t);
  std::uint64_t n = 0;
  for (auto c : t.expr) n += c;
  for (auto c : t.stmt) n += c;
  return n;
}

inline std::uint64_t node_count(const Stmt& s) {
  AstTally t;
  tally(s, t);
  std::uint64_t n = 0;
  for (auto c : t.expr) n += c;
  for (auto c : t.stmt) n += c;
  return n;
}

inline std::string show(const Expr& e);
inline std::string show(const Stmt& s);

inline std::string show(const Expr& e) {
  struct Visitor {
    std::string operator()(const Expr::Lit& l) {
      return "Lit " + std::to_string(l.value);
    }
    std::string operator()(const Expr::Var& v) { return "Var \"" + v.name + "\""; }
    std::string operator()(const Expr::Call& c) {
      std::string out = "Call \"" + c.callee + "\" [";
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (i) out += ", ";
        out += show(c.args[i]);
      }
      return out + "]";
    }
    std::string operator()(const Expr::Block& b) {
      std::string out = "Block [";
      for (std::size_t i = 0; i < b.body.size(); ++i) {
        if (i) out += ", ";
        out += show(b.body[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, e.node);
}

inline std::string show(const Stmt& s) {
  struct Visitor {
    std::string operator()(const Stmt::ExprStmt& es) {
      return "ExprStmt (" + show(es.expr) + ")";
    }
    std::string operator()(const Stmt::If& i) {
      std::string out = "If (" + show(i.cond) + ") [";
      for (std::size_t k = 0; k < i.then_branch.size(); ++k) {
        if (k) out += ", ";
        out += show(i.then_branch[k]);
      }
      out += "] [";
      for (std::size_t k = 0; k < i.else_branch.size(); ++k) {
        if (k) out += ", ";
        out += show(i.else_branch[k]);
      }
      return out + "]";
    }
    std::string operator()(const Stmt::While& w) {
      std::string out = "While (" + show(w.cond) + ") [";
      for (std::size_t k = 0; k < w.body.size(); ++k) {
        if (k) out += ", ";
        out += show(w.body[k]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, s.node);
}

/// Subexpressions and constructor-simplified variants; Lit 0 is the
/// universal bottom for non-literal expressions.
inline std::vector<Expr> shrink(const Expr& e) {
  std::vector<Expr> out;
  struct Visitor {
    std::vector<Expr>& out;
    const Expr& self;
    void operator()(const Expr::Lit& l) {
      for (auto v : lessarb::shrink(l.value)) out.push_back(Expr{Expr::Lit{v}});
    }
    void operator()(const Expr::Var& v) {
      out.push_back(Expr{Expr::Lit{0}});
      for (auto& n : lessarb::shrink(v.name)) out.push_back(Expr{Expr::Var{std::move(n)}});
    }
    void operator()(const Expr::Call& c) {
      out.push_back(Expr{Expr::Lit{0}});
      for (const auto& a : c.args) out.push_back(a);
      for (auto& args : lessarb::shrink(c.args)) {
        out.push_back(Expr{Expr::Call{c.callee, std::move(args)}});
      }
    }
    void operator()(const Expr::Block& b) {
      out.push_back(Expr{Expr::Lit{0}});
      for (auto& body : lessarb::shrink(b.body)) {
        out.push_back(Expr{Expr::Block{std::move(body)}});
      }
    }
  };
  std::visit(Visitor{out, e}, e.node);
  return out;
}

inline std::vector<Stmt> shrink(const Stmt& s) {
  std::vector<Stmt> out;
  struct Visitor {
    std::vector<Stmt>& out;
    void operator()(const Stmt::ExprStmt& es) {
      for (auto& e : shrink(es.expr)) out.push_back(Stmt{Stmt::ExprStmt{std::move(e)}});
    }
    void operator()(const Stmt::If& i) {
      out.push_back(Stmt{Stmt::ExprStmt{i.cond}});
      for (auto& t : lessarb::shrink(i.then_branch)) {
        out.push_back(Stmt{Stmt::If{i.cond, std::move(t), i.else_branch}});
      }
      for (auto& e : lessarb::shrink(i.else_branch)) {
        out.push_back(Stmt{Stmt::If{i.cond, i.then_branch, std::move(e)}});
      }
    }
    void operator()(const Stmt::While& w) {
      out.push_back(Stmt{Stmt::ExprStmt{w.cond}});
      for (auto& b : lessarb::shrink(w.body)) {
        out.push_back(Stmt{Stmt::While{w.cond, std::move(b)}});
      }
    }
  };
  std::visit(Visitor{out}, s.node);
  return out;
}

// ---------------------------------------------------------------------------
// NoBreaker = X NoBreaker
//
// Its only constructor refers back to itself, so no finite value exists.
// Generating one must fail with LoopBreakerMissing, never hang; the
// assemble callback below can never actually run to completion of a value.
// ---------------------------------------------------------------------------

struct NoBreaker {
  std::shared_ptr<NoBreaker> inner;

  friend bool operator==(const NoBreaker& a, const NoBreaker& b) {
    return a.inner == b.inner;
  }
};

// ---------------------------------------------------------------------------
// Registration sugar
// ---------------------------------------------------------------------------

/// Zero-cost machine-integer field; the flat draw doubles as its own cheap
/// generator.
inline Shape::Ptr int_field() {
  auto gen = erase_gen(flat_gen<std::int64_t>());
  return Shape::field(FieldClass::kFlatZero, gen, gen);
}

/// Cost-one text field; exhausted budgets fall back to the empty string.
inline Shape::Ptr text_field() {
  return Shape::field(FieldClass::kFlatOne, erase_gen(gen_text()),
                      erase_gen(pure(std::string{})));
}

/// Field holding a budgeted list of a registered datatype; the cheap
/// fallback is the empty list.
template <typename T>
Shape::Ptr list_field(const ShapeRegistry& reg, std::string name) {
  return Shape::field(FieldClass::kReference,
                      erase_gen(gen_list(reg.generator<T>(std::move(name)))),
                      erase_gen(pure(std::vector<T>{})));
}

/// Registry with all fixture datatypes: Tree, the Expr/Stmt pair, and the
/// pathological NoBreaker.
inline ShapeRegistry register_fixtures() {
  ShapeRegistry reg;

  reg.add(Shape::data(
      "Tree",
      Shape::sum(Shape::con("Leaf", int_field()),
                 Shape::con("Branch", list_field<Tree>(reg, "Tree"))),
      [](std::size_t con, std::vector<std::any>&& f) -> std::any {
        if (con == 0) return Tree::leaf(std::any_cast<std::int64_t>(f[0]));
        return Tree::branch(std::any_cast<std::vector<Tree>>(std::move(f[0])));
      }));

  reg.add(Shape::data(
      "Expr",
      Shape::sum(
          Shape::sum(Shape::con("Lit", int_field()),
                     Shape::con("Var", text_field())),
          Shape::sum(
              Shape::con("Call", Shape::product(text_field(),
                                                list_field<Expr>(reg, "Expr"))),
              Shape::con("Block", list_field<Stmt>(reg, "Stmt")))),
      [](std::size_t con, std::vector<std::any>&& f) -> std::any {
        switch (con) {
          case 0:
            return Expr{Expr::Lit{std::any_cast<std::int64_t>(f[0])}};
          case 1:
            return Expr{Expr::Var{std::any_cast<std::string>(std::move(f[0]))}};
          case 2:
            return Expr{Expr::Call{
                std::any_cast<std::string>(std::move(f[0])),
                std::any_cast<std::vector<Expr>>(std::move(f[1]))}};
          default:
            return Expr{Expr::Block{
                std::any_cast<std::vector<Stmt>>(std::move(f[0]))}};
        }
      }));

  reg.add(Shape::data(
      "Stmt",
      Shape::sum(
          Shape::con("ExprStmt", reg.reference("Expr")),
          Shape::sum(
              Shape::con("If",
                         Shape::product(
                             reg.reference("Expr"),
                             Shape::product(list_field<Stmt>(reg, "Stmt"),
                                            list_field<Stmt>(reg, "Stmt")))),
              Shape::con("While",
                         Shape::product(reg.reference("Expr"),
                                        list_field<Stmt>(reg, "Stmt"))))),
      [](std::size_t con, std::vector<std::any>&& f) -> std::any {
        switch (con) {
          case 0:
            return Stmt{Stmt::ExprStmt{std::any_cast<Expr>(std::move(f[0]))}};
          case 1:
            return Stmt{Stmt::If{
                std::any_cast<Expr>(std::move(f[0])),
                std::any_cast<std::vector<Stmt>>(std::move(f[1])),
                std::any_cast<std::vector<Stmt>>(std::move(f[2]))}};
          default:
            return Stmt{Stmt::While{
                std::any_cast<Expr>(std::move(f[0])),
                std::any_cast<std::vector<Stmt>>(std::move(f[1]))}};
        }
      }));

  reg.add(Shape::data(
      "NoBreaker", Shape::con("X", reg.reference("NoBreaker")),
      [](std::size_t, std::vector<std::any>&& f) -> std::any {
        return NoBreaker{std::make_shared<NoBreaker>(
            std::any_cast<NoBreaker>(std::move(f[0])))};
      }));

  return reg;
}

}  // namespace fixtures
}  // namespace lessarb
