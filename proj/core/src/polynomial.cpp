#include "weil/polynomial.hpp"

#include <cctype>

#include "weil/errors.hpp"

namespace weil {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Polynomial p(nvars);
  p.add_term(Monomial::variable(nvars, index), Rational(1));
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial::one(nvars_)); }

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

int Polynomial::low_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_)
    throw DimensionMismatch("monomial over " + std::to_string(m.nvars()) +
                            " variables added to a polynomial over " + std::to_string(nvars_));
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_nvars(const Polynomial& other) const {
  if (other.nvars_ != nvars_)
    throw DimensionMismatch("polynomials over " + std::to_string(nvars_) + " and " +
                            std::to_string(other.nvars_) + " variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_nvars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_nvars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Polynomial Polynomial::truncated(unsigned k) const {
  Polynomial p(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() >= k) break;
    p.terms_.emplace_hint(p.terms_.end(), m, c);
  }
  return p;
}

Polynomial Polynomial::reindexed(std::size_t nvars, std::size_t offset) const {
  Polynomial p(nvars);
  for (const auto& [m, c] : terms_) p.add_term(m.reindexed(nvars, offset), c);
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_nvars(b);
  Polynomial p(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  return p;
}

Polynomial mul_trunc(const Polynomial& p, const Polynomial& q, unsigned k) {
  if (p.nvars() != q.nvars())
    throw DimensionMismatch("mul_trunc over " + std::to_string(p.nvars()) + " and " +
                            std::to_string(q.nvars()) + " variables");
  Polynomial r(p.nvars());
  for (const auto& [ma, ca] : p.terms()) {
    if (ma.degree() >= k) break;
    for (const auto& [mb, cb] : q.terms()) {
      if (ma.degree() + mb.degree() >= k) break;
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

Polynomial pow_trunc(const Polynomial& p, unsigned e, unsigned k) {
  Polynomial result = Polynomial::constant(p.nvars(), Rational(1)).truncated(k);
  Polynomial base = p.truncated(k);
  while (e > 0) {
    if (e & 1u) result = mul_trunc(result, base, k);
    e >>= 1u;
    if (e > 0) base = mul_trunc(base, base, k);
  }
  return result;
}

Polynomial compose_trunc(const Polynomial& p, std::span<const Polynomial> subs, std::size_t target_nvars,
                         unsigned k) {
  if (subs.size() != p.nvars())
    throw DimensionMismatch("substituting " + std::to_string(subs.size()) +
                            " components into a polynomial over " + std::to_string(p.nvars()) +
                            " variables");
  const std::size_t m = target_nvars;
  for (const auto& s : subs)
    if (s.nvars() != m) throw DimensionMismatch("substitution component over " + std::to_string(s.nvars()) +
                                                " variables, expected " + std::to_string(m));

  // powers[i][e] = subs[i]^e, filled on demand
  std::vector<std::vector<Polynomial>> powers(subs.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(m, Rational(1)).truncated(k));
    while (cache.size() <= e) cache.push_back(mul_trunc(cache.back(), subs[i], k));
    return cache[e];
  };

  Polynomial result(m);
  for (const auto& [mono, c] : p.terms()) {
    Polynomial term = Polynomial::constant(m, c).truncated(k);
    for (std::size_t i = 0; i < mono.nvars() && !term.is_zero(); ++i)
      if (mono[i] > 0) term = mul_trunc(term, power(i, mono[i]), k);
    result += term;
  }
  return result;
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += to_string(m, names);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> variables)
      : text_(text), vars_(variables) {}

  Polynomial parse() {
    Polynomial result(vars_.size());
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [mono, coeff] = parse_term();
      result.add_term(mono, sign * coeff);
      skip_ws();
    }
    return result;
  }

 private:
  std::pair<Monomial, Rational> parse_term() {
    std::vector<unsigned> exps(vars_.size(), 0);
    Rational coeff(1);
    while (true) {
      skip_ws();
      if (at_end()) throw ParseError("expected a factor", pos_);
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        std::string name = parse_identifier();
        std::size_t index = lookup(name, start);
        unsigned e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = parse_exponent();
        }
        exps[index] += e;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return {Monomial(std::move(exps)), coeff};
  }

  Rational parse_number() {
    mpz_class num = parse_digits();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected a denominator", pos_);
      std::size_t den_pos = pos_;
      mpz_class den = parse_digits();
      if (den == 0) throw ParseError("zero denominator", den_pos);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  mpz_class parse_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  unsigned parse_exponent() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected a non-negative integer exponent", pos_);
    std::size_t start = pos_;
    mpz_class e = parse_digits();
    if (!e.fits_uint_p() || e > 4096) throw ParseError("exponent out of range", start);
    return static_cast<unsigned>(e.get_ui());
  }

  std::string parse_identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t lookup(const std::string& name, std::size_t at) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw UnknownVariable(name, at);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables) {
  return PolyParser(text, variables).parse();
}

}  // namespace weil
