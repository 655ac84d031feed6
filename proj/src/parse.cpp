#include "oag/parse.hpp"

#include <cctype>
#include <sstream>

namespace oag {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  GroupExpr parse() {
    GroupExpr g = group();
    skip_ws();
    if (pos_ != text_.size()) error("trailing input");
    return g.flatten();
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    std::ostringstream os;
    os << "parse error at offset " << pos_ << ": " << msg;
    fail(ErrorCode::ParseError, os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) error("expected a name");
    return text_.substr(start, pos_ - start);
  }

  mpz_class number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  GroupExpr group() {
    skip_ws();
    std::size_t at = pos_;
    std::string w = word();
    if (w == "Z") return GroupExpr::Z();
    if (w == "Q") return GroupExpr::Q();
    if (w == "zhat_primes") return GroupExpr::zhat_primes();
    if (w == "dense") return GroupExpr::block(dense_block());
    if (w == "lex") {
      expect('(');
      skip_ws();
      if (eat(')')) fail(ErrorCode::TrivialGroup, "empty lex sum denotes the trivial group");
      std::vector<GroupExpr> children;
      children.push_back(group());
      while (eat(',')) children.push_back(group());
      expect(')');
      return GroupExpr::lex(std::move(children));
    }
    if (w == "omega") {
      expect('(');
      GroupExpr inner = group();
      expect(')');
      const auto* b = std::get_if<GroupExpr::Block>(&inner.node());
      if (!b)
        fail(ErrorCode::OmegaOfCompound, "omega takes a single archimedean block");
      return GroupExpr::omega(b->block);
    }
    pos_ = at;
    error("unknown group constructor '" + w + "'");
  }

  ArchimedeanBlock dense_block() {
    expect('{');
    std::map<unsigned long, ExtNat> items;
    int default_exp = 0;
    skip_ws();
    if (!eat('}')) {
      // at least one item before the optional ";default:..."
      parse_item(items);
      while (eat(',')) parse_item(items);
      if (eat(';')) {
        std::string d = word();
        if (d != "default") error("expected 'default'");
        expect(':');
        mpz_class v = number();
        if (v != 0 && v != 1) error("default exponent must be 0 or 1");
        default_exp = static_cast<int>(v.get_si());
      }
      expect('}');
    }
    try {
      return ArchimedeanBlock::dense(DivisibilityProfile(default_exp, std::move(items)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonPrimeKey) throw;
      fail(ErrorCode::ParseError, std::string("parse error at offset ") + std::to_string(pos_) +
                                      ": " + e.what());
    }
  }

  void parse_item(std::map<unsigned long, ExtNat>& items) {
    skip_ws();
    mpz_class p = number();
    if (!p.fits_ulong_p() || !is_prime(p.get_ui()))
      fail(ErrorCode::NonPrimeKey, "profile key " + p.get_str() + " is not prime");
    expect(':');
    skip_ws();
    ExtNat e;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = ExtNat(number());
    } else {
      std::string w = word();
      if (w != "inf") error("expected an exponent or 'inf'");
      e = ExtNat::infinity();
    }
    if (items.count(p.get_ui())) error("duplicate profile key " + p.get_str());
    items.emplace(p.get_ui(), e);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void print_block(std::ostream& os, const ArchimedeanBlock& b) {
  if (b.kind() == BlockKind::Discrete) {
    os << "Z";
    return;
  }
  if (b.profile().fully_divisible()) {
    os << "Q";
    return;
  }
  os << "dense{";
  bool first = true;
  for (const auto& [p, e] : b.profile().exceptions()) {
    if (!first) os << ",";
    first = false;
    os << p << ":" << e.str();
  }
  if (b.profile().default_exp() == 1) os << ";default:1";
  os << "}";
}

void print_expr(std::ostream& os, const GroupExpr& e) {
  if (const auto* b = std::get_if<GroupExpr::Block>(&e.node())) {
    print_block(os, b->block);
  } else if (const auto* o = std::get_if<GroupExpr::Omega>(&e.node())) {
    os << "omega(";
    print_block(os, o->block);
    os << ")";
  } else if (std::get_if<GroupExpr::Zhat>(&e.node())) {
    os << "zhat_primes";
  } else {
    const auto& lx = std::get<GroupExpr::Lex>(e.node());
    os << "lex(";
    for (std::size_t i = 0; i < lx.children.size(); ++i) {
      if (i) os << ", ";
      print_expr(os, lx.children[i]);
    }
    os << ")";
  }
}

}  // namespace

GroupExpr parse_group(const std::string& text) { return Parser(text).parse(); }

std::string print_group(const GroupExpr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

}  // namespace oag
