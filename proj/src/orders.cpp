#include "uminflow/orders.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace uminflow {

// ---------------------------------------------------------------------------
// FiniteOrder / OrderPrefix

FiniteOrder::FiniteOrder(std::vector<Natural> elements) : elements_(std::move(elements)) {
  std::vector<Natural> sorted = elements_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("finite order repeats an element");
}

OrderPrefix OrderPrefix::identity(std::size_t n) {
  OrderPrefix o;
  o.ranks_.resize(n);
  std::iota(o.ranks_.begin(), o.ranks_.end(), std::size_t{0});
  return o;
}

OrderPrefix OrderPrefix::from_sequence(std::vector<Natural> sequence) {
  const std::size_t n = sequence.size();
  OrderPrefix o;
  o.ranks_.assign(n, n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const Natural x = sequence[pos];
    if (x >= n || o.ranks_[x] != n)
      throw std::invalid_argument("order prefix sequence is not a permutation of 0..n-1");
    o.ranks_[x] = pos;
  }
  return o;
}

OrderPrefix OrderPrefix::from_ranks(std::vector<std::size_t> ranks) {
  const std::size_t n = ranks.size();
  std::vector<bool> seen(n, false);
  for (auto r : ranks) {
    if (r >= n || seen[r]) throw std::invalid_argument("ranking is not a bijection");
    seen[r] = true;
  }
  OrderPrefix o;
  o.ranks_ = std::move(ranks);
  return o;
}

std::vector<Natural> OrderPrefix::sequence() const {
  std::vector<Natural> seq(ranks_.size());
  for (std::size_t x = 0; x < ranks_.size(); ++x) seq[ranks_[x]] = x;
  return seq;
}

OrderPrefix OrderPrefix::restrict(std::size_t m) const {
  if (m > size()) throw std::out_of_range("restriction larger than prefix");
  std::vector<Natural> seq;
  seq.reserve(m);
  for (Natural x : sequence())
    if (x < m) seq.push_back(x);
  return from_sequence(std::move(seq));
}

std::string format_prefix(const OrderPrefix& o) {
  std::ostringstream out;
  out << o.size() << '\n';
  const auto seq = o.sequence();
  for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? " " : "") << seq[i];
  out << '\n';
  return out.str();
}

OrderPrefix parse_prefix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  if (!(in >> n)) throw std::invalid_argument("order prefix: missing size line");
  std::vector<Natural> seq(n);
  for (auto& x : seq)
    if (!(in >> x)) throw std::invalid_argument("order prefix: too few elements");
  Natural extra;
  if (in >> extra) throw std::invalid_argument("order prefix: trailing data");
  return OrderPrefix::from_sequence(std::move(seq));
}

// ---------------------------------------------------------------------------
// EventExpr

struct EventExpr::Node {
  struct Not {
    EventExpr operand;
  };
  struct Binary {
    EventExpr lhs, rhs;
  };
  Kind kind;
  std::variant<FiniteOrder, Not, Binary> data;
};

EventExpr EventExpr::atom(FiniteOrder order) {
  return EventExpr(std::make_shared<const Node>(Node{Kind::atom, std::move(order)}));
}

EventExpr::Kind EventExpr::kind() const noexcept { return node_->kind; }

const FiniteOrder& EventExpr::order() const { return std::get<FiniteOrder>(node_->data); }
const EventExpr& EventExpr::operand() const { return std::get<Node::Not>(node_->data).operand; }
const EventExpr& EventExpr::lhs() const { return std::get<Node::Binary>(node_->data).lhs; }
const EventExpr& EventExpr::rhs() const { return std::get<Node::Binary>(node_->data).rhs; }

EventExpr operator!(const EventExpr& e) {
  return EventExpr(std::make_shared<const EventExpr::Node>(
      EventExpr::Node{EventExpr::Kind::negation, EventExpr::Node::Not{e}}));
}

EventExpr operator&(const EventExpr& a, const EventExpr& b) {
  return EventExpr(std::make_shared<const EventExpr::Node>(
      EventExpr::Node{EventExpr::Kind::conjunction, EventExpr::Node::Binary{a, b}}));
}

EventExpr operator|(const EventExpr& a, const EventExpr& b) {
  return EventExpr(std::make_shared<const EventExpr::Node>(
      EventExpr::Node{EventExpr::Kind::disjunction, EventExpr::Node::Binary{a, b}}));
}

bool operator==(const EventExpr& a, const EventExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case EventExpr::Kind::atom:
      return a.order() == b.order();
    case EventExpr::Kind::negation:
      return a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EventExpr parse() {
    EventExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  EventExpr expr() {
    EventExpr e = term();
    while (accept('|')) e = e | term();
    return e;
  }

  EventExpr term() {
    EventExpr e = factor();
    while (accept('&')) e = e & factor();
    return e;
  }

  EventExpr factor() {
    if (accept('!')) return !factor();
    if (accept('(')) {
      EventExpr e = expr();
      expect(')');
      return e;
    }
    return atom();
  }

  EventExpr atom() {
    skip_space();
    const std::size_t start = pos_;
    if (text_.substr(pos_, 3) != "ord") fail("expected 'ord(', '(' or '!'");
    pos_ += 3;
    expect('(');
    std::vector<Natural> elements;
    if (!accept(')')) {
      elements.push_back(natural());
      while (accept('<')) elements.push_back(natural());
      expect(')');
    }
    std::set<Natural> seen;
    for (Natural x : elements)
      if (!seen.insert(x).second) throw ParseError("repeated element " + std::to_string(x) + " in atom", start);
    return EventExpr::atom(FiniteOrder(std::move(elements)));
  }

  Natural natural() {
    skip_space();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first == last || !std::isdigit(static_cast<unsigned char>(*first))) fail("expected a natural number");
    Natural value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) fail("natural number out of range");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedence: disjunction 0, conjunction 1, negation/atom 2.
int precedence(const EventExpr& e) {
  switch (e.kind()) {
    case EventExpr::Kind::disjunction:
      return 0;
    case EventExpr::Kind::conjunction:
      return 1;
    default:
      return 2;
  }
}

void print(const EventExpr& e, std::string& out);

// The parser builds left-associative chains, so a right operand of equal
// precedence needs parentheses to round-trip to the same tree.
void print_operand(const EventExpr& e, int min_precedence, std::string& out) {
  if (precedence(e) < min_precedence) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const EventExpr& e, std::string& out) {
  switch (e.kind()) {
    case EventExpr::Kind::atom: {
      out += "ord(";
      const auto& xs = e.order().elements();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += '<';
        out += std::to_string(xs[i]);
      }
      out += ')';
      return;
    }
    case EventExpr::Kind::negation:
      out += '!';
      print_operand(e.operand(), 2, out);
      return;
    case EventExpr::Kind::conjunction:
      print_operand(e.lhs(), 1, out);
      out += " & ";
      print_operand(e.rhs(), 2, out);
      return;
    case EventExpr::Kind::disjunction:
      print_operand(e.lhs(), 0, out);
      out += " | ";
      print_operand(e.rhs(), 1, out);
      return;
  }
}

void collect_support(const EventExpr& e, std::set<Natural>& out) {
  switch (e.kind()) {
    case EventExpr::Kind::atom:
      out.insert(e.order().elements().begin(), e.order().elements().end());
      return;
    case EventExpr::Kind::negation:
      collect_support(e.operand(), out);
      return;
    default:
      collect_support(e.lhs(), out);
      collect_support(e.rhs(), out);
      return;
  }
}

}  // namespace

EventExpr parse_event(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const EventExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::vector<Natural> support(const EventExpr& e) {
  std::set<Natural> s;
  collect_support(e, s);
  return {s.begin(), s.end()};
}

bool evaluate(const EventExpr& e, const OrderPrefix& o) {
  const auto s = support(e);
  if (!s.empty() && s.back() >= o.size())
    throw std::out_of_range("event support " + std::to_string(s.back()) + " outside order prefix of size " +
                            std::to_string(o.size()));
  return evaluate_ranked(e, [&](Natural x) { return o.ranks()[x]; });
}

bool evaluate(const EventExpr& e, const FiniteOrder& o) {
  std::map<Natural, std::size_t> rank;
  for (std::size_t i = 0; i < o.size(); ++i) rank[o.elements()[i]] = i;
  for (Natural x : support(e))
    if (!rank.contains(x)) throw std::out_of_range("event support element " + std::to_string(x) + " not ordered");
  return evaluate_ranked(e, [&](Natural x) { return rank.find(x)->second; });
}

// ---------------------------------------------------------------------------
// PartialPermutation and the action

PartialPermutation PartialPermutation::identity(std::size_t n) {
  PartialPermutation p;
  for (Natural i = 0; i < n; ++i) p.insert(i, i);
  return p;
}

PartialPermutation PartialPermutation::from_images(std::span<const Natural> images) {
  PartialPermutation p;
  for (std::size_t i = 0; i < images.size(); ++i) p.insert(i, images[i]);
  return p;
}

PartialPermutation PartialPermutation::transposition(Natural a, Natural b) {
  PartialPermutation p;
  p.insert(a, b);
  if (a != b) p.insert(b, a);
  return p;
}

void PartialPermutation::insert(Natural a, Natural b) {
  if (auto it = forward_.find(a); it != forward_.end()) {
    if (it->second == b) return;
    throw std::invalid_argument("element " + std::to_string(a) + " already mapped");
  }
  if (backward_.contains(b)) throw std::invalid_argument("image " + std::to_string(b) + " already taken");
  forward_.emplace(a, b);
  backward_.emplace(b, a);
}

std::optional<Natural> PartialPermutation::apply(Natural a) const {
  if (auto it = forward_.find(a); it != forward_.end()) return it->second;
  return std::nullopt;
}

std::optional<Natural> PartialPermutation::preimage(Natural b) const {
  if (auto it = backward_.find(b); it != backward_.end()) return it->second;
  return std::nullopt;
}

Natural PartialPermutation::at(Natural a) const {
  if (auto it = forward_.find(a); it != forward_.end()) return it->second;
  throw std::out_of_range("element " + std::to_string(a) + " outside permutation domain");
}

std::vector<Natural> PartialPermutation::domain() const {
  std::vector<Natural> out;
  out.reserve(forward_.size());
  for (const auto& [a, b] : forward_) out.push_back(a);
  return out;
}

std::vector<Natural> PartialPermutation::range() const {
  std::vector<Natural> out;
  out.reserve(backward_.size());
  for (const auto& [b, a] : backward_) out.push_back(b);
  return out;
}

PartialPermutation PartialPermutation::inverse() const {
  PartialPermutation p;
  p.forward_ = backward_;
  p.backward_ = forward_;
  return p;
}

PartialPermutation PartialPermutation::compose(const PartialPermutation& other) const {
  PartialPermutation p;
  for (const auto& [a, b] : other.forward_)
    if (auto c = apply(b)) p.insert(a, *c);
  return p;
}

bool PartialPermutation::is_bijection_on(std::size_t n) const {
  for (Natural i = 0; i < n; ++i) {
    auto it = forward_.find(i);
    if (it == forward_.end() || it->second >= n) return false;
  }
  return true;
}

OrderPrefix act(const PartialPermutation& sigma, const OrderPrefix& o) {
  if (!sigma.is_bijection_on(o.size()))
    throw std::invalid_argument("permutation is not a bijection of the prefix domain");
  auto seq = o.sequence();
  for (auto& x : seq) x = sigma.at(x);
  return OrderPrefix::from_sequence(std::move(seq));
}

FiniteOrder act_on_event(const PartialPermutation& sigma, const FiniteOrder& l) {
  std::vector<Natural> relabelled;
  relabelled.reserve(l.size());
  for (Natural x : l.elements()) relabelled.push_back(sigma.at(x));
  return FiniteOrder(std::move(relabelled));
}

EventExpr act_on_event(const PartialPermutation& sigma, const EventExpr& e) {
  switch (e.kind()) {
    case EventExpr::Kind::atom:
      return EventExpr::atom(act_on_event(sigma, e.order()));
    case EventExpr::Kind::negation:
      return !act_on_event(sigma, e.operand());
    case EventExpr::Kind::conjunction:
      return act_on_event(sigma, e.lhs()) & act_on_event(sigma, e.rhs());
    case EventExpr::Kind::disjunction:
      return act_on_event(sigma, e.lhs()) | act_on_event(sigma, e.rhs());
  }
  return e;
}

}  // namespace uminflow
