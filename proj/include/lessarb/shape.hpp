#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lessarb/generator.hpp"

namespace lessarb {

/// Static cost class of a constructor field.
///
///   kFlatZero  — machine scalars (integers, floats, booleans, decimals): 0
///   kFlatOne   — text: 1
///   kReference — any other datatype: 1, regardless of its true minimum
///                size. The constant is what keeps the analysis finite on
///                recursive types; it is an approximation, not a bound.
enum class FieldClass { kFlatZero, kFlatOne, kReference };

enum class ShapeKind { kSum, kProduct, kUnit, kField, kCon, kData };

enum class Side { kLeft, kRight };

/// Static minimum completion cost of a shape branch. Finite for every
/// well-formed shape because reference fields are never entered.
using CostEstimate = std::int64_t;

/// Number of constructors in a sum spine.
using ConCount = std::int64_t;

/// Minimum of two cost estimates; ties resolve to the first argument.
inline CostEstimate min_nat(CostEstimate m, CostEstimate n) {
  return m <= n ? m : n;
}

/// Turns a chosen constructor index and its generated field values into the
/// user's datatype. Registered together with the shape.
using AssembleFn =
    std::function<std::any(std::size_t con_index, std::vector<std::any>&& fields)>;

/// Immutable structural description of a datatype: a sum of constructors,
/// each a product of fields. Fields are flat scalars or references to other
/// shapes. Both static analyses (constructor count and minimum completion
/// cost) are computed bottom-up at construction and cached on every node.
///
/// Node grammar, enforced by the factories:
///   Data(name, body, assemble)  — datatype root; exactly one per shape
///   Con(name, body)             — constructor wrapper; name is kept for
///                                 diagnostics only
///   Sum(left, right)            — choice between constructor groups
///   Product(left, right)        — sequence of fields
///   Unit                        — nullary constructor body
///   Field(class, gen, cheap)    — one constructor argument; `cheap` must
///                                 produce a value without spending
class Shape {
 public:
  using Ptr = std::shared_ptr<const Shape>;

  static Ptr sum(Ptr left, Ptr right) {
    require_child(left, "Sum");
    require_child(right, "Sum");
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kSum;
    s->cheapness_ = min_nat(left->cheapness_, right->cheapness_);
    s->sum_len_ = left->sum_len_ + right->sum_len_;
    s->left_ = std::move(left);
    s->right_ = std::move(right);
    return s;
  }

  static Ptr product(Ptr left, Ptr right) {
    require_child(left, "Product");
    require_child(right, "Product");
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kProduct;
    s->cheapness_ = left->cheapness_ + right->cheapness_;
    s->left_ = std::move(left);
    s->right_ = std::move(right);
    return s;
  }

  static Ptr unit() {
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kUnit;
    return s;
  }

  static Ptr field(FieldClass cls, Generator<std::any> gen,
                   Generator<std::any> cheap_gen) {
    if (!gen || !cheap_gen) {
      throw std::invalid_argument("Field requires both generators");
    }
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kField;
    s->field_class_ = cls;
    s->cheapness_ = cls == FieldClass::kFlatZero ? 0 : 1;
    s->gen_ = std::move(gen);
    s->cheap_gen_ = std::move(cheap_gen);
    return s;
  }

  static Ptr con(std::string name, Ptr body) {
    if (!body) throw std::invalid_argument("Con requires a body");
    if (body->kind_ == ShapeKind::kData) {
      throw std::invalid_argument("Con body must not be a Data node");
    }
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kCon;
    s->name_ = std::move(name);
    s->cheapness_ = body->cheapness_;
    s->body_ = std::move(body);
    return s;
  }

  static Ptr data(std::string name, Ptr body, AssembleFn assemble) {
    if (!body) throw std::invalid_argument("Data requires a body");
    if (body->kind_ == ShapeKind::kData) {
      throw std::invalid_argument("a shape has exactly one Data node, at the root");
    }
    if (!assemble) throw std::invalid_argument("Data requires an assemble callback");
    auto s = std::make_shared<Shape>(Private{});
    s->kind_ = ShapeKind::kData;
    s->name_ = std::move(name);
    s->cheapness_ = body->cheapness_;
    s->sum_len_ = body->sum_len_;
    s->body_ = std::move(body);
    s->assemble_ = std::move(assemble);
    return s;
  }

  ShapeKind kind() const { return kind_; }
  const Shape& left() const { return *left_; }
  const Shape& right() const { return *right_; }
  const Shape& body() const { return *body_; }
  const std::string& name() const { return name_; }
  FieldClass field_class() const { return field_class_; }
  const Generator<std::any>& gen() const { return gen_; }
  const Generator<std::any>& cheap_gen() const { return cheap_gen_; }
  const AssembleFn& assemble() const { return assemble_; }

  CostEstimate cached_cheapness() const { return cheapness_; }
  ConCount cached_sum_len() const { return sum_len_; }

  struct Private {};  // make_shared access; factories are the only builders
  explicit Shape(Private) {}

 private:
  static void require_child(const Ptr& child, const char* parent) {
    if (!child) {
      throw std::invalid_argument(std::string(parent) + " requires two children");
    }
    if (child->kind_ == ShapeKind::kData) {
      throw std::invalid_argument(std::string(parent) +
                                  " children must not be Data nodes");
    }
  }

  ShapeKind kind_ = ShapeKind::kUnit;
  Ptr left_;
  Ptr right_;
  Ptr body_;
  std::string name_;
  FieldClass field_class_ = FieldClass::kFlatZero;
  Generator<std::any> gen_;
  Generator<std::any> cheap_gen_;
  AssembleFn assemble_;
  CostEstimate cheapness_ = 0;
  ConCount sum_len_ = 1;
};

/// Constructor count of a sum spine: Sum adds both sides, the Data wrapper
/// is transparent, anything else counts as one constructor.
inline ConCount sum_len(const Shape& s) { return s.cached_sum_len(); }

/// Minimum completion cost of a shape branch, from the one-pass analysis:
///
///   Product  -> sum of children        Unit            -> 0
///   Sum      -> min of children        Field(FlatZero) -> 0
///   Con/Data -> transparent            Field(FlatOne)  -> 1
///                                      Field(Reference)-> 1
///
/// Reference fields are never entered, so the result is finite even for
/// self- and mutually-recursive datatypes.
inline CostEstimate cheapness(const Shape& s) { return s.cached_cheapness(); }

/// Which side of a sum is cheaper to complete; ties go left.
inline Side cheapest_side(const Shape& left, const Shape& right) {
  return cheapness(left) <= cheapness(right) ? Side::kLeft : Side::kRight;
}

}  // namespace lessarb
