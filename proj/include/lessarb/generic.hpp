#pragma once

#include <any>
#include <atomic>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lessarb/shape.hpp"

namespace lessarb {

inline Result<std::any> run_shape(const Shape& data_node, GenContext& ctx);
inline Result<std::any> run_shape_cheapest(const Shape& data_node,
                                           GenContext& ctx);

namespace detail {

inline std::optional<GenFailure> collect_costly(const Shape& node,
                                                GenContext& ctx,
                                                std::vector<std::any>& out);
inline std::optional<GenFailure> collect_cheapest(const Shape& node,
                                                  GenContext& ctx,
                                                  std::vector<std::any>& out);

// Random walk below a Data node: at every Sum, pick a side with frequency
// proportional to its constructor count, so each constructor of the
// datatype is drawn with equal probability. con_base tracks the index of
// the leftmost constructor still reachable.
inline Result<std::any> construct_costly(const Shape& node, GenContext& ctx,
                                         const AssembleFn& assemble,
                                         std::size_t con_base) {
  if (node.kind() == ShapeKind::kSum) {
    const ConCount lfreq = sum_len(node.left());
    const ConCount rfreq = sum_len(node.right());
    const auto n = draw_uniform<std::int64_t>(ctx, 1, lfreq + rfreq);
    if (n <= lfreq) {
      return construct_costly(node.left(), ctx, assemble, con_base);
    }
    return construct_costly(node.right(), ctx, assemble,
                            con_base + static_cast<std::size_t>(lfreq));
  }
  const Shape& body = node.kind() == ShapeKind::kCon ? node.body() : node;
  std::vector<std::any> fields;
  if (auto failure = collect_costly(body, ctx, fields)) {
    return *std::move(failure);
  }
  return assemble(con_base, std::move(fields));
}

// Deterministic walk: at every Sum, descend into the statically cheaper
// side (ties left); fields draw from their cheap generators.
inline Result<std::any> construct_cheapest(const Shape& node, GenContext& ctx,
                                           const AssembleFn& assemble,
                                           std::size_t con_base) {
  if (node.kind() == ShapeKind::kSum) {
    if (cheapest_side(node.left(), node.right()) == Side::kLeft) {
      return construct_cheapest(node.left(), ctx, assemble, con_base);
    }
    return construct_cheapest(
        node.right(), ctx, assemble,
        con_base + static_cast<std::size_t>(sum_len(node.left())));
  }
  const Shape& body = node.kind() == ShapeKind::kCon ? node.body() : node;
  std::vector<std::any> fields;
  if (auto failure = collect_cheapest(body, ctx, fields)) {
    return *std::move(failure);
  }
  return assemble(con_base, std::move(fields));
}

inline std::optional<GenFailure> collect_costly(const Shape& node,
                                                GenContext& ctx,
                                                std::vector<std::any>& out) {
  switch (node.kind()) {
    case ShapeKind::kProduct: {
      if (auto failure = collect_costly(node.left(), ctx, out)) return failure;
      return collect_costly(node.right(), ctx, out);
    }
    case ShapeKind::kField: {
      auto r = node.gen().run(ctx);
      if (!r.ok()) return r.take_failure();
      out.push_back(std::move(r).value());
      return std::nullopt;
    }
    case ShapeKind::kUnit:
      return std::nullopt;
    case ShapeKind::kCon:  // metadata, skipped
      return collect_costly(node.body(), ctx, out);
    default:
      throw std::logic_error("Sum or Data node inside a constructor body");
  }
}

inline std::optional<GenFailure> collect_cheapest(const Shape& node,
                                                  GenContext& ctx,
                                                  std::vector<std::any>& out) {
  switch (node.kind()) {
    case ShapeKind::kProduct: {
      if (auto failure = collect_cheapest(node.left(), ctx, out)) return failure;
      return collect_cheapest(node.right(), ctx, out);
    }
    case ShapeKind::kField: {
      auto r = node.cheap_gen().run(ctx);
      if (!r.ok()) return r.take_failure();
      out.push_back(std::move(r).value());
      return std::nullopt;
    }
    case ShapeKind::kUnit:
      return std::nullopt;
    case ShapeKind::kCon:
      return collect_cheapest(node.body(), ctx, out);
    default:
      throw std::logic_error("Sum or Data node inside a constructor body");
  }
}

inline void require_data_root(const Shape::Ptr& shape) {
  if (!shape || shape->kind() != ShapeKind::kData) {
    throw std::invalid_argument("generation needs a Data-rooted shape");
  }
}

}  // namespace detail

/// One budgeted generation step for a whole datatype: spend one unit for
/// the value under construction, then gate between the random costly walk
/// and the deterministic cheapest walk.
inline Result<std::any> run_shape(const Shape& data_node, GenContext& ctx) {
  if (auto failure = ctx.spend(Budget{1})) return *std::move(failure);
  const Budget budget = ctx.remaining();
  if (budget > Budget{0}) {
    return detail::construct_costly(data_node.body(), ctx,
                                    data_node.assemble(), 0);
  }
  if (budget > ctx.floor()) return run_shape_cheapest(data_node, ctx);
  return GenFailure::loop_breaker();
}

/// The cheapest completion of a datatype. Spends nothing; reference fields
/// recurse into the referenced shape's own cheapest path. The context
/// bounds that recursion, so a datatype whose every constructor refers back
/// to itself fails with LoopBreakerMissing instead of looping.
inline Result<std::any> run_shape_cheapest(const Shape& data_node,
                                           GenContext& ctx) {
  if (auto failure = ctx.enter_cheapest()) return *std::move(failure);
  auto r = detail::construct_cheapest(data_node.body(), ctx,
                                      data_node.assemble(), 0);
  ctx.leave_cheapest();
  return r;
}

/// Budgeted random generation for a registered shape.
inline Generator<std::any> gen_from_shape(Shape::Ptr shape) {
  detail::require_data_root(shape);
  return Generator<std::any>(
      [shape = std::move(shape)](GenContext& ctx) -> Result<std::any> {
        return run_shape(*shape, ctx);
      });
}

/// Deterministic cheapest-path generation for a registered shape.
inline Generator<std::any> cheapest_from_shape(Shape::Ptr shape) {
  detail::require_data_root(shape);
  return Generator<std::any>(
      [shape = std::move(shape)](GenContext& ctx) -> Result<std::any> {
        return run_shape_cheapest(*shape, ctx);
      });
}

/// Shortcut for types with a known empty value: hand that out once the
/// budget is gone, run the full generic walk otherwise.
inline Generator<std::any> gen_monoid_shortcut(std::any empty, Shape::Ptr shape) {
  return budget_gate(pure(std::move(empty)), gen_from_shape(std::move(shape)));
}

/// Box a typed generator's output.
template <typename T>
Generator<std::any> erase_gen(Generator<T> gen) {
  return Generator<std::any>(
      [gen = std::move(gen)](GenContext& ctx) -> Result<std::any> {
        auto r = gen.run(ctx);
        if (!r.ok()) return r.take_failure();
        return std::any(std::move(r).value());
      });
}

/// Unbox a boxed generator's output. Throws std::bad_any_cast if the shape
/// was registered with a mismatching assemble callback.
template <typename T>
Generator<T> typed_gen(Generator<std::any> gen) {
  return Generator<T>([gen = std::move(gen)](GenContext& ctx) -> Result<T> {
    auto r = gen.run(ctx);
    if (!r.ok()) return r.take_failure();
    return std::any_cast<T>(std::move(r).value());
  });
}

/// Name-keyed shape registry. Lookups in generators are late-bound, so
/// mutually recursive datatypes may reference each other before both are
/// registered. Build the registry single-threaded; afterwards it is
/// read-only and shareable.
class ShapeRegistry {
 public:
  ShapeRegistry() : shapes_(std::make_shared<Map>()) {}

  void add(Shape::Ptr shape) {
    detail::require_data_root(shape);
    auto name = shape->name();
    auto [it, inserted] = shapes_->emplace(std::move(name), std::move(shape));
    if (!inserted) {
      throw std::invalid_argument("datatype already registered: " + it->first);
    }
  }

  bool contains(const std::string& name) const {
    return shapes_->count(name) != 0;
  }

  Shape::Ptr shape(const std::string& name) const {
    auto it = shapes_->find(name);
    if (it == shapes_->end()) {
      throw std::out_of_range("no shape registered for: " + name);
    }
    return it->second;
  }

  /// Budgeted generation for the named datatype, resolved on first run.
  Generator<std::any> generic_gen(std::string name) const {
    return late_bound(std::move(name), /*cheapest=*/false);
  }

  /// Cheapest-path generation for the named datatype, resolved on first run.
  Generator<std::any> cheapest_gen(std::string name) const {
    return late_bound(std::move(name), /*cheapest=*/true);
  }

  template <typename T>
  Generator<T> generator(std::string name) const {
    return typed_gen<T>(generic_gen(std::move(name)));
  }

  /// Field node referencing the named datatype: budgeted generation as the
  /// costly route, the datatype's own cheapest path as the cheap one.
  Shape::Ptr reference(std::string name) const {
    auto gen = generic_gen(name);
    auto cheap = cheapest_gen(std::move(name));
    return Shape::field(FieldClass::kReference, std::move(gen), std::move(cheap));
  }

 private:
  using Map = std::unordered_map<std::string, Shape::Ptr>;

  Generator<std::any> late_bound(std::string name, bool cheapest) const {
    auto shapes = shapes_;
    auto cache = std::make_shared<std::atomic<const Shape*>>(nullptr);
    return Generator<std::any>(
        [shapes, cache, name = std::move(name),
         cheapest](GenContext& ctx) -> Result<std::any> {
          const Shape* s = cache->load(std::memory_order_acquire);
          if (s == nullptr) {
            auto it = shapes->find(name);
            if (it == shapes->end()) {
              throw std::out_of_range("no shape registered for: " + name);
            }
            s = it->second.get();
            cache->store(s, std::memory_order_release);
          }
          return cheapest ? run_shape_cheapest(*s, ctx) : run_shape(*s, ctx);
        });
  }

  std::shared_ptr<Map> shapes_;
};

}  // namespace lessarb
