// Copyright 2026 The svaforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "svaforge/trace/trace.hpp"

#include "svaforge/common/error.hpp"
#include "svaforge/common/overloaded.hpp"

#include <algorithm>
#include <sstream>

namespace svaforge::trace {

Trace::Trace(std::vector<Signal> signals) : signals_(std::move(signals)) {
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (signals_[i].width == 0 || signals_[i].width > 64)
      throw Error(ErrorKind::InvalidArgument,
                  "signal '" + signals_[i].name + "' has width " + std::to_string(signals_[i].width));
    for (std::size_t j = 0; j < i; ++j)
      if (signals_[j].name == signals_[i].name)
        throw Error(ErrorKind::InvalidArgument, "duplicate trace signal '" + signals_[i].name + "'");
  }
}

std::optional<std::size_t> Trace::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < signals_.size(); ++i)
    if (signals_[i].name == name)
      return i;
  return std::nullopt;
}

uint64_t Trace::value(std::size_t tick, const std::string &name) const {
  auto i = index_of(name);
  if (!i)
    throw Error(ErrorKind::UnknownSignal, "unknown signal '" + name + "'");
  return steps_.at(tick)[*i];
}

void Trace::add_step(std::vector<uint64_t> values) {
  if (values.size() != signals_.size())
    throw Error(ErrorKind::InvalidArgument, "trace step has " + std::to_string(values.size()) +
                                                " values for " + std::to_string(signals_.size()) +
                                                " signals");
  for (std::size_t i = 0; i < values.size(); ++i)
    if ((values[i] & ~width_mask(signals_[i].width)) != 0)
      throw Error(ErrorKind::InvalidArgument, "value " + std::to_string(values[i]) +
                                                  " does not fit signal '" + signals_[i].name + "'");
  steps_.push_back(std::move(values));
}

Trace Trace::prefix(std::size_t n) const {
  Trace out(signals_);
  out.steps_.assign(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(std::min(n, steps_.size())));
  return out;
}

bool Trace::operator==(const Trace &o) const {
  if (signals_.size() != o.signals_.size() || steps_ != o.steps_)
    return false;
  for (std::size_t i = 0; i < signals_.size(); ++i)
    if (signals_[i].name != o.signals_[i].name || signals_[i].width != o.signals_[i].width)
      return false;
  return true;
}

std::string format_table(const Trace &t) {
  std::size_t name_w = 4;
  for (const auto &s : t.signals())
    name_w = std::max(name_w, s.name.size());
  std::vector<std::size_t> col_w(t.length(), 1);
  for (std::size_t k = 0; k < t.length(); ++k) {
    col_w[k] = std::to_string(k).size();
    for (std::size_t s = 0; s < t.signals().size(); ++s)
      col_w[k] = std::max(col_w[k], std::to_string(t.value(k, s)).size());
  }
  std::ostringstream os;
  auto cell = [&](const std::string &v, std::size_t w) {
    os << ' ' << std::string(w - std::min(w, v.size()), ' ') << v;
  };
  os << "tick" << std::string(name_w - 4, ' ') << " |";
  for (std::size_t k = 0; k < t.length(); ++k)
    cell(std::to_string(k), col_w[k]);
  os << '\n';
  for (std::size_t s = 0; s < t.signals().size(); ++s) {
    const std::string &n = t.signals()[s].name;
    os << n << std::string(name_w - n.size(), ' ') << " |";
    for (std::size_t k = 0; k < t.length(); ++k)
      cell(std::to_string(t.value(k, s)), col_w[k]);
    os << '\n';
  }
  return os.str();
}

Resolver resolver_for(const Trace &t) {
  return [&t](const std::string &name) -> std::optional<SignalRef> {
    auto i = t.index_of(name);
    if (!i)
      return std::nullopt;
    return SignalRef{*i, t.signals()[*i].width};
  };
}

//===----------------------------------------------------------------------===//
// CompiledBool
//===----------------------------------------------------------------------===//

namespace {

bool is_compare(sva::BinaryOp op) {
  using B = sva::BinaryOp;
  return op == B::Eq || op == B::Ne || op == B::Lt || op == B::Le || op == B::Gt || op == B::Ge;
}

bool is_logical(sva::BinaryOp op) {
  return op == sva::BinaryOp::LogicalAnd || op == sva::BinaryOp::LogicalOr;
}

bool is_shift(sva::BinaryOp op) { return op == sva::BinaryOp::Shl || op == sva::BinaryOp::Shr; }

uint32_t or32(uint32_t w) { return w == 0 ? 32 : std::min<uint32_t>(w, 64); }

} // namespace

CompiledBool::CompiledBool(const sva::BoolExpr &e, const Resolver &resolve) {
  root_ = build(e, resolve, 0);
}

uint32_t CompiledBool::sized(int n) const { return or32(nodes_[static_cast<std::size_t>(n)].self_width); }

uint32_t CompiledBool::width() const { return sized(root_); }

int CompiledBool::build(const sva::BoolExpr &e, const Resolver &resolve, uint32_t back) {
  history_ = std::max(history_, back);
  Node node{};
  auto kid = [&](const sva::BoolPtr &p, uint32_t extra = 0) {
    int k = build(*p, resolve, back + extra);
    node.kids.push_back(k);
    return nodes_[static_cast<std::size_t>(k)].self_width;
  };
  std::visit(overloaded{
                 [&](const sva::Ident &n) {
                   auto ref = resolve(n.name);
                   if (!ref)
                     throw Error(ErrorKind::UnknownSignal, "unknown signal '" + n.name + "'");
                   if (ref->width == 0)
                     throw Error(ErrorKind::InvalidArgument, "signal '" + n.name + "' has zero width");
                   node.op = Node::Op::Signal;
                   node.signal = ref->index;
                   node.self_width = ref->width;
                   if (n.select) {
                     node.select = true;
                     node.msb = n.select->msb;
                     node.lsb = n.select->lsb;
                     node.self_width = node.msb - node.lsb + 1;
                   }
                 },
                 [&](const sva::Literal &n) {
                   node.op = Node::Op::Literal;
                   node.value = n.value;
                   // Unsized literals are as wide as their value needs; context
                   // widening does the rest.
                   uint32_t bits = 1;
                   while (bits < 64 && (n.value >> bits) != 0)
                     ++bits;
                   node.self_width = n.sized ? n.width : bits;
                 },
                 [&](const sva::Unary &n) {
                   uint32_t w = kid(n.operand);
                   switch (n.op) {
                   case sva::UnaryOp::LogicalNot:
                     node.op = Node::Op::Not;
                     node.self_width = 1;
                     break;
                   case sva::UnaryOp::BitwiseNot:
                     node.op = Node::Op::BitNot;
                     node.self_width = w;
                     break;
                   case sva::UnaryOp::Negate:
                     node.op = Node::Op::Neg;
                     node.self_width = w;
                     break;
                   }
                 },
                 [&](const sva::Binary &n) {
                   uint32_t l = kid(n.lhs);
                   uint32_t r = kid(n.rhs);
                   node.op = Node::Op::Bin;
                   node.bop = n.op;
                   if (is_compare(n.op) || is_logical(n.op))
                     node.self_width = 1;
                   else if (is_shift(n.op))
                     node.self_width = l;
                   else
                     node.self_width = std::max(l, r);
                 },
                 [&](const sva::Past &n) {
                   node.op = Node::Op::Past;
                   node.depth = n.depth;
                   node.self_width = kid(n.operand, n.depth);
                 },
                 [&](const sva::Sampled &n) {
                   kid(n.operand);
                   history_ = std::max(history_, back + 1);
                   node.op = n.fn == sva::SampledFn::Rose   ? Node::Op::Rose
                             : n.fn == sva::SampledFn::Fell ? Node::Op::Fell
                                                            : Node::Op::Stable;
                   node.self_width = 1;
                 },
                 [&](const sva::Cond &n) {
                   kid(n.cond);
                   uint32_t a = kid(n.then_expr);
                   uint32_t b = kid(n.else_expr);
                   node.op = Node::Op::Cond;
                   node.self_width = std::max(a, b);
                 },
                 [&](const sva::Concat &n) {
                   uint32_t total = 0;
                   for (const auto &p : n.parts)
                     total += or32(kid(p));
                   node.op = Node::Op::Concat;
                   node.self_width = std::min<uint32_t>(total, 64);
                 },
             },
             e.node);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size() - 1);
}

uint64_t CompiledBool::eval(const Sampler &s, uint32_t ctx) const {
  return eval_node(root_, std::min<uint32_t>(std::max(width(), ctx), 64), 0, s);
}

uint64_t CompiledBool::eval_node(int idx, uint32_t ctx, uint32_t back, const Sampler &s) const {
  const Node &n = nodes_[static_cast<std::size_t>(idx)];
  const uint64_t mask = width_mask(ctx);
  auto self = [&](int k, uint32_t extra = 0) { return eval_node(k, sized(k), back + extra, s); };
  switch (n.op) {
  case Node::Op::Signal: {
    uint64_t v = s.sample(n.signal, back);
    if (n.select)
      v = n.lsb >= 64 ? 0 : (v >> n.lsb) & width_mask(n.msb - n.lsb + 1);
    return v & mask;
  }
  case Node::Op::Literal:
    return n.value & mask;
  case Node::Op::Not:
    return self(n.kids[0]) == 0 ? 1 : 0;
  case Node::Op::BitNot:
    return ~eval_node(n.kids[0], ctx, back, s) & mask;
  case Node::Op::Neg:
    return (~eval_node(n.kids[0], ctx, back, s) + 1) & mask;
  case Node::Op::Bin: {
    using B = sva::BinaryOp;
    if (is_logical(n.bop)) {
      bool l = self(n.kids[0]) != 0;
      if (n.bop == B::LogicalAnd && !l)
        return 0;
      if (n.bop == B::LogicalOr && l)
        return 1;
      return self(n.kids[1]) != 0 ? 1 : 0;
    }
    if (is_compare(n.bop)) {
      uint32_t w = or32(std::max(nodes_[static_cast<std::size_t>(n.kids[0])].self_width,
                                 nodes_[static_cast<std::size_t>(n.kids[1])].self_width));
      uint64_t l = eval_node(n.kids[0], w, back, s);
      uint64_t r = eval_node(n.kids[1], w, back, s);
      switch (n.bop) {
      case B::Eq: return l == r;
      case B::Ne: return l != r;
      case B::Lt: return l < r;
      case B::Le: return l <= r;
      case B::Gt: return l > r;
      default: return l >= r;
      }
    }
    uint64_t l = eval_node(n.kids[0], ctx, back, s);
    if (is_shift(n.bop)) {
      uint64_t amount = self(n.kids[1]);
      if (amount >= 64)
        return 0;
      return (n.bop == B::Shl ? l << amount : l >> amount) & mask;
    }
    uint64_t r = eval_node(n.kids[1], ctx, back, s);
    switch (n.bop) {
    case B::BitAnd: return l & r;
    case B::BitOr: return l | r;
    case B::BitXor: return l ^ r;
    case B::Add: return (l + r) & mask;
    default: return (l - r) & mask;
    }
  }
  case Node::Op::Past:
    return eval_node(n.kids[0], ctx, back + n.depth, s);
  case Node::Op::Rose:
    return (self(n.kids[0]) & 1) == 1 && (self(n.kids[0], 1) & 1) == 0;
  case Node::Op::Fell:
    return (self(n.kids[0]) & 1) == 0 && (self(n.kids[0], 1) & 1) == 1;
  case Node::Op::Stable:
    return self(n.kids[0]) == self(n.kids[0], 1);
  case Node::Op::Cond:
    return self(n.kids[0]) != 0 ? eval_node(n.kids[1], ctx, back, s) : eval_node(n.kids[2], ctx, back, s);
  case Node::Op::Concat: {
    uint64_t v = 0;
    for (int k : n.kids) {
      uint32_t w = sized(k);
      v = (w >= 64 ? 0 : v << w) | self(k);
    }
    return v & mask;
  }
  }
  return 0;
}

uint64_t eval_bool(const sva::BoolExpr &e, const Trace &trace, std::size_t t) {
  if (t >= trace.length())
    throw Error(ErrorKind::InvalidArgument, "tick " + std::to_string(t) + " is outside the trace");
  CompiledBool c(e, resolver_for(trace));
  return c.eval(TraceSampler(trace, t));
}

} // namespace svaforge::trace
