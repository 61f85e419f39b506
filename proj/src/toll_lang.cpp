#include "dcosc/toll_lang.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>

namespace dcosc {

namespace {

// Digit-free symbolic value: residue-class polynomials mod M.
struct SymPoly {
  unsigned M = 1;
  std::vector<RatPoly> polys{RatPoly()};

  static SymPoly constant(const mpq_class& c) {
    SymPoly s;
    s.polys[0] = RatPoly::constant(c);
    return s;
  }
  static SymPoly variable() {
    SymPoly s;
    s.polys[0] = RatPoly::monomial(mpq_class(1), 1);
    return s;
  }
  SymPoly refined(unsigned M2) const {
    SymPoly out;
    out.M = std::lcm(M, M2);
    out.polys.assign(out.M, RatPoly());
    for (unsigned r = 0; r < out.M; ++r) out.polys[r] = polys[r % M];
    return out;
  }
  bool is_constant() const {
    for (const auto& p : polys)
      if (p.degree() > 0 || !(p.coeff(0) == polys[0].coeff(0))) return false;
    return true;
  }
};

SymPoly add(const SymPoly& a, const SymPoly& b, int sign) {
  unsigned M = std::lcm(a.M, b.M);
  SymPoly ra = a.refined(M), rb = b.refined(M);
  for (unsigned r = 0; r < M; ++r)
    ra.polys[r] = sign > 0 ? ra.polys[r] + rb.polys[r] : ra.polys[r] - rb.polys[r];
  return ra;
}

SymPoly mul(const SymPoly& a, const SymPoly& b) {
  unsigned M = std::lcm(a.M, b.M);
  SymPoly ra = a.refined(M), rb = b.refined(M);
  for (unsigned r = 0; r < M; ++r) {
    const RatPoly& p = ra.polys[r];
    const RatPoly& q = rb.polys[r];
    std::vector<mpq_class> c(p.c.size() + q.c.size(), mpq_class(0));
    for (size_t i = 0; i < p.c.size(); ++i)
      for (size_t j = 0; j < q.c.size(); ++j) c[i + j] += p.c[i] * q.c[j];
    ra.polys[r] = RatPoly(std::move(c));
  }
  return ra;
}

// floor of a rational-coefficient residue polynomial: scale to integer
// coefficients P(n)/c and refine the modulus so P(n) mod c is constant on
// each class.
SymPoly floor_of(const SymPoly& a) {
  mpz_class den = 1;
  for (const auto& p : a.polys)
    for (const auto& co : p.c) {
      mpz_class d(co.get_den());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  if (den == 1) return a;  // integer values already
  if (!mpz_fits_ulong_p(den.get_mpz_t())) throw TollParseError("floor: denominator too large");
  unsigned c = static_cast<unsigned>(den.get_ui());
  unsigned M = std::lcm(a.M, c);
  SymPoly out = a.refined(M);
  for (unsigned r = 0; r < M; ++r) {
    RatPoly num = out.polys[r].scaled(mpq_class(den));  // integer coefficients
    mpq_class val = num.eval(mpq_class(r));             // the class representative
    mpz_class shift;
    mpz_fdiv_r(shift.get_mpz_t(), mpz_class(val.get_num()).get_mpz_t(), den.get_mpz_t());
    mpq_class inv(mpz_class(1), den);
    inv.canonicalize();
    out.polys[r] = (num - RatPoly::constant(mpq_class(shift))).scaled(inv);
  }
  return out;
}

struct Piece {
  DigitFactor digit = DigitFactor::none;
  mpq_class base = 1;
  SymPoly poly;
};

// Sum of digit-tagged pieces.
struct SymVal {
  std::vector<Piece> pieces;

  static SymVal from_poly(SymPoly p) {
    SymVal v;
    v.pieces.push_back(Piece{DigitFactor::none, mpq_class(1), std::move(p)});
    return v;
  }
  bool single_plain() const {
    return pieces.size() == 1 && pieces[0].digit == DigitFactor::none;
  }
  bool is_constant() const { return single_plain() && pieces[0].poly.is_constant(); }
  mpq_class constant() const { return pieces[0].poly.polys[0].coeff(0); }
};

SymVal add(const SymVal& a, const SymVal& b, int sign) {
  SymVal out = a;
  for (const auto& pb : b.pieces) {
    bool merged = false;
    for (auto& pa : out.pieces) {
      if (pa.digit == pb.digit && pa.base == pb.base) {
        pa.poly = add(pa.poly, pb.poly, sign);
        merged = true;
        break;
      }
    }
    if (!merged) {
      Piece np = pb;
      if (sign < 0)
        for (auto& p : np.poly.polys) p = p.scaled(mpq_class(-1));
      out.pieces.push_back(std::move(np));
    }
  }
  return out;
}

SymVal mul(const SymVal& a, const SymVal& b) {
  SymVal out;
  for (const auto& pa : a.pieces)
    for (const auto& pb : b.pieces) {
      if (pa.digit != DigitFactor::none && pb.digit != DigitFactor::none)
        throw TollParseError("products of two digit factors are outside the toll DSL");
      Piece np;
      np.digit = pa.digit == DigitFactor::none ? pb.digit : pa.digit;
      np.base = pa.digit == DigitFactor::none ? pb.base : pa.base;
      np.poly = mul(pa.poly, pb.poly);
      out = add(out, SymVal{{np}}, 1);
    }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  SymVal parse() {
    SymVal v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw TollParseError("toll parse error at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip();
    size_t len = std::strlen(w);
    if (s_.compare(pos_, len, w) == 0 &&
        (pos_ + len >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + len])))) {
      pos_ += len;
      return true;
    }
    return false;
  }

  SymVal expr() {
    SymVal v = term();
    for (;;) {
      if (eat('+'))
        v = add(v, term(), 1);
      else if (eat('-'))
        v = add(v, term(), -1);
      else
        return v;
    }
  }

  SymVal term() {
    SymVal v = factor();
    for (;;) {
      if (eat('*')) {
        v = mul(v, factor());
      } else if (eat('/')) {
        SymVal d = factor();
        if (!d.is_constant() || sgn(d.constant()) == 0) fail("division needs a nonzero constant");
        v = mul(v, SymVal::from_poly(SymPoly::constant(1 / d.constant())));
      } else {
        return v;
      }
    }
  }

  SymVal factor() {
    if (eat('-')) {
      SymVal v = factor();
      return add(SymVal{}, v, -1);
    }
    SymVal v = atom();
    skip();
    if (eat('^')) {
      skip();
      if (eat_word("nu0")) return digit_power(v, DigitFactor::pow_nu0);
      if (eat_word("nu")) return digit_power(v, DigitFactor::pow_nu);
      if (eat_word("v2")) return digit_power(v, DigitFactor::pow_v2);
      if (eat_word("L")) {
        if (!v.is_constant() || v.constant() != -1)
          fail("only (-1)^L is in the DSL");
        SymVal out;
        SymPoly one;
        one.polys[0] = RatPoly::constant(mpq_class(1));
        out.pieces.push_back(Piece{DigitFactor::sign_len, mpq_class(-1), one});
        return out;
      }
      unsigned e = parse_uint();
      SymVal r = SymVal::from_poly(SymPoly::constant(mpq_class(1)));
      for (unsigned i = 0; i < e; ++i) r = mul(r, v);
      return r;
    }
    return v;
  }

  SymVal digit_power(const SymVal& base, DigitFactor d) {
    if (!base.is_constant()) fail("digit powers need a constant base");
    SymVal out;
    SymPoly one;
    one.polys[0] = RatPoly::constant(mpq_class(1));
    out.pieces.push_back(Piece{d, base.constant(), one});
    return out;
  }

  unsigned parse_uint() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an integer");
    unsigned v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
    return v;
  }

  SymVal atom() {
    skip();
    if (eat('(')) {
      SymVal v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat_word("floor")) {
      if (!eat('(')) fail("expected '(' after floor");
      SymVal v = expr();
      if (!eat(')')) fail("expected ')'");
      if (!v.single_plain()) fail("floor of a digit-weighted value is outside the DSL");
      return SymVal::from_poly(floor_of(v.pieces[0].poly));
    }
    if (eat_word("ceil")) {
      if (!eat('(')) fail("expected '(' after ceil");
      SymVal v = expr();
      if (!eat(')')) fail("expected ')'");
      if (!v.single_plain()) fail("ceil of a digit-weighted value is outside the DSL");
      SymPoly neg = v.pieces[0].poly;
      for (auto& p : neg.polys) p = p.scaled(mpq_class(-1));
      SymPoly fl = floor_of(neg);
      for (auto& p : fl.polys) p = p.scaled(mpq_class(-1));
      return SymVal::from_poly(fl);
    }
    if (eat_word("odd")) return indicator(2, {1});
    if (eat_word("even")) return indicator(2, {0});
    if (eat_word("ind")) {
      if (!eat('(')) fail("expected '(' after ind");
      unsigned M = parse_uint();
      std::vector<unsigned> rs;
      while (eat(',')) rs.push_back(parse_uint() % M);
      if (!eat(')')) fail("expected ')'");
      if (M == 0) fail("ind: modulus must be positive");
      if (rs.empty()) fail("ind: need at least one residue");
      return indicator(M, rs);
    }
    if (eat_word("n")) return SymVal::from_poly(SymPoly::variable());
    // number: digits, optional '.', digits
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) fail("expected a value");
    return SymVal::from_poly(
        SymPoly::constant(ExactScalar::parse(s_.substr(start, pos_ - start)).rat()));
  }

  SymVal indicator(unsigned M, std::vector<unsigned> rs) {
    SymPoly p;
    p.M = M;
    p.polys.assign(M, RatPoly());
    for (unsigned r : rs) p.polys[r % M] = RatPoly::constant(mpq_class(1));
    return SymVal::from_poly(p);
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

TollFunction parse_toll(const std::string& text) {
  Parser parser(text);
  SymVal v = parser.parse();
  TollFunction toll;
  for (const auto& piece : v.pieces) {
    for (unsigned r = 0; r < piece.poly.M; ++r) {
      const RatPoly& p = piece.poly.polys[r];
      for (int k = 0; k <= p.degree(); ++k) {
        mpq_class c = p.coeff(static_cast<unsigned>(k));
        if (sgn(c) == 0) continue;
        toll.terms.push_back(TollTerm{ExactScalar(c), static_cast<unsigned>(k), piece.poly.M,
                                      {r}, piece.digit, ExactScalar(piece.base)});
      }
      // constant-zero polynomial with a digit factor still contributes no term
    }
  }
  return toll;
}

}  // namespace dcosc
