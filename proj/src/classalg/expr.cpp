#include "bousfield/classalg/expr.hpp"

#include "bousfield/errors.hpp"

namespace bousfield::classalg {

namespace {

using detail::Lexer;

class Parser {
 public:
  Parser(std::string_view text, const setalg::PrimeUniverse& universe) : lex_(text), universe_(universe) {}

  SumClass run() {
    SumClass out = sum();
    if (!lex_.at_end()) lex_.fail("trailing input");
    return out;
  }

 private:
  SumClass sum() {
    SumClass out = product();
    while (lex_.accept("(+)")) out = out + product();
    return out;
  }

  SumClass product() {
    SumClass out = primary();
    while (lex_.accept("*")) out = tensor(out, primary());
    return out;
  }

  NSet set_argument() { return setalg::evaluate(*setalg::parse_set(lex_), universe_); }

  SumClass primary() {
    if (lex_.accept("(")) {
      SumClass out = sum();
      lex_.expect(")");
      return out;
    }
    const std::string name = lex_.ident();
    if (name == "kk") return GenClass::residue_field();
    if (name == "sphere") return GenClass::sphere();
    if (name == "zero") return SumClass::zero();
    if (name == "M" || name == "I") {
      lex_.expect("(");
      NSet s = set_argument();
      lex_.expect(")");
      return name == "M" ? GenClass::M(s) : GenClass::I(s);
    }
    if (name == "T") {
      lex_.expect("(");
      NSet a = set_argument();
      lex_.expect(";");
      NSet b = set_argument();
      lex_.expect(";");
      NSet c = set_argument();
      lex_.expect(")");
      return GenClass(Partition3(std::move(a), std::move(b), std::move(c)));
    }
    lex_.fail("unknown class primitive '" + name + "'");
  }

  Lexer lex_;
  const setalg::PrimeUniverse& universe_;
};

}  // namespace

SumClass parse_class(std::string_view text, const setalg::PrimeUniverse& universe) {
  return Parser(text, universe).run();
}

GenClass parse_generator(std::string_view text, const setalg::PrimeUniverse& universe) {
  SumClass s = parse_class(text, universe);
  if (s.size() != 1)
    throw ParseError("expected a single generator, got a sum of " + std::to_string(s.size()) + " terms");
  return s.summands().front();
}

std::string to_expression(const GenClass& g) {
  using setalg::to_expression;
  if (g.c().is_empty() && g.b().is_empty()) return "sphere";
  if (g.a().is_empty() && g.c().is_empty()) return "kk";
  if (g.c().is_empty()) return "M(" + to_expression(g.a()) + ")";
  if (g.a().is_empty()) return "I(" + to_expression(g.c()) + ")";
  return "T(" + to_expression(g.a()) + "; " + to_expression(g.b()) + "; " + to_expression(g.c()) + ")";
}

std::string to_expression(const SumClass& s) {
  if (s.is_zero()) return "zero";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " (+) ";
    out += to_expression(s.summands()[i]);
  }
  return out;
}

}  // namespace bousfield::classalg
