#include "rsrl/logic/formula.hpp"

#include <cctype>

#include "rsrl/common/error.hpp"

namespace rsrl::logic {

struct Formula::Node {
  Connective op;
  std::string name;
  std::vector<Formula> operands;
  std::string text;  // canonical form, cached at construction
};

namespace {

std::string render(Connective op, const std::string& name, const std::vector<Formula>& operands) {
  if (op == Connective::Atom) return name;
  std::string out = "(";
  out += op == Connective::Not ? "not" : op == Connective::And ? "and" : "or";
  for (const auto& f : operands) {
    out += ' ';
    out += f.to_string();
  }
  out += ')';
  return out;
}

bool is_atom_char(char c) {
  return c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c));
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (name.empty()) throw InputError("empty atom name");
  for (char c : name) {
    if (!is_atom_char(c)) throw InputError("invalid character in atom name '" + name + "'");
  }
  auto node = std::make_shared<Node>(Node{Connective::Atom, name, {}, name});
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  std::vector<Formula> ops{std::move(operand)};
  auto text = render(Connective::Not, {}, ops);
  return Formula(std::make_shared<Node>(Node{Connective::Not, {}, std::move(ops), std::move(text)}));
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.empty()) throw InputError("conjunction needs at least one operand");
  if (operands.size() == 1) return operands.front();
  auto text = render(Connective::And, {}, operands);
  return Formula(std::make_shared<Node>(Node{Connective::And, {}, std::move(operands), std::move(text)}));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.empty()) throw InputError("disjunction needs at least one operand");
  if (operands.size() == 1) return operands.front();
  auto text = render(Connective::Or, {}, operands);
  return Formula(std::make_shared<Node>(Node{Connective::Or, {}, std::move(operands), std::move(text)}));
}

Connective Formula::connective() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }
std::span<const Formula> Formula::operands() const noexcept { return node_->operands; }
std::string Formula::to_string() const { return node_->text; }

void Formula::collect_atoms(std::set<std::string>& out) const {
  if (is_atom()) {
    out.insert(node_->name);
    return;
  }
  for (const auto& f : node_->operands) f.collect_atoms(out);
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  collect_atoms(out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.node_->text == b.node_->text;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  Formula parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return Formula::atom(std::string(word()));

    ++pos_;
    skip_ws();
    const std::string_view op = word();
    std::vector<Formula> operands;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated '('");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      operands.push_back(parse());
    }
    if (op == "not") {
      if (operands.size() != 1) fail("'not' takes exactly one operand");
      return Formula::negation(std::move(operands.front()));
    }
    if (op == "and" || op == "or") {
      if (operands.size() < 2) fail("'" + std::string(op) + "' takes at least two operands");
      return op == "and" ? Formula::conjunction(std::move(operands))
                         : Formula::disjunction(std::move(operands));
    }
    fail("unknown connective '" + std::string(op) + "'");
  }

  std::string_view word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("formula parse error at offset " + std::to_string(pos_) + ": " + msg + " in \"" +
                     std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace rsrl::logic
