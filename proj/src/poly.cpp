#include "mennicke/poly.hpp"

#include <algorithm>
#include <cctype>

#include "mennicke/error.hpp"

namespace mennicke {

bool operator<(const Poly& a, const Poly& b) {
  if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
  for (std::size_t i = a.coeffs.size(); i-- > 0;) {
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  }
  return false;
}

PolyArith::PolyArith(Integer p) : p_(std::move(p)) {}

Integer PolyArith::reduce(const Integer& c) const {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p_.get_mpz_t());
  return r;
}

Poly PolyArith::make(std::vector<Integer> coeffs) const {
  for (auto& c : coeffs) c = reduce(c);
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return Poly{std::move(coeffs)};
}

Poly PolyArith::constant(const Integer& c) const { return make({c}); }

Poly PolyArith::variable() const { return make({0, 1}); }

Poly PolyArith::add(const Poly& a, const Poly& b) const {
  std::vector<Integer> out(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out[i] += b.coeffs[i];
  return make(std::move(out));
}

Poly PolyArith::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyArith::neg(const Poly& a) const {
  std::vector<Integer> out(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out[i] = -a.coeffs[i];
  return make(std::move(out));
}

Poly PolyArith::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return make(std::move(out));
}

Poly PolyArith::scale(const Poly& a, const Integer& c) const {
  std::vector<Integer> out = a.coeffs;
  for (auto& x : out) x *= c;
  return make(std::move(out));
}

Integer PolyArith::inverse(const Integer& c) const {
  Integer r = reduce(c), inv;
  if (r == 0 || mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t()) == 0) {
    throw Error(ErrorCode::PreconditionViolated, "coefficient is not invertible");
  }
  return inv;
}

std::pair<Poly, Poly> PolyArith::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw Error(ErrorCode::PreconditionViolated, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Integer> r = a.coeffs;
  std::vector<Integer> q(a.coeffs.size() - b.coeffs.size() + 1);
  const Integer lead_inv = inverse(leading(b));
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::size_t top = k + b.coeffs.size() - 1;
    Integer c = reduce(r[top] * lead_inv);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r[k + j] = reduce(r[k + j] - c * b.coeffs[j]);
  }
  return {make(std::move(q)), make(std::move(r))};
}

bool PolyArith::divides(const Poly& d, const Poly& a) const {
  if (d.is_zero()) return a.is_zero();
  return rem(a, d).is_zero();
}

Poly PolyArith::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(a, inverse(leading(a)));
}

std::vector<Poly> PolyArith::irreducible_factors(const Poly& a) const {
  if (a.is_zero()) throw Error(ErrorCode::PreconditionViolated, "cannot factor the zero polynomial");
  std::vector<Poly> factors;
  Poly rest = monic(a);
  for (long d = 1; 2 * d <= rest.degree(); ++d) {
    // Monic candidates of degree d, low coefficients counting up like an odometer.
    std::vector<Integer> low(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Integer> c = low;
      c.push_back(1);
      Poly cand = make(std::move(c));
      if (divides(cand, rest)) {
        factors.push_back(cand);
        while (divides(cand, rest)) rest = divmod(rest, cand).first;
        if (2 * d > rest.degree()) break;
      }
      std::size_t i = 0;
      while (i < low.size()) {
        low[i] += 1;
        if (low[i] < p_) break;
        low[i] = 0;
        ++i;
      }
      if (i == low.size()) break;
    }
  }
  if (rest.degree() >= 1) factors.push_back(rest);
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::string PolyArith::format(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    if (!out.empty()) out += '+';
    out += a.coeffs[i].get_str();
    if (i >= 1) out += "*x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

[[noreturn]] void bad_poly(const std::string& text) {
  throw Error(ErrorCode::MalformedElement, "cannot parse polynomial '" + text + "'");
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

}  // namespace

Poly PolyArith::parse(const std::string& text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) bad_poly(text);
  std::vector<Integer> acc;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      bad_poly(text);
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) bad_poly(text);

    Integer coeff = 1;
    std::size_t exponent = 0;
    const std::size_t xpos = term.find('x');
    if (xpos == std::string::npos) {
      if (!all_digits(term)) bad_poly(text);
      coeff = Integer(term);
    } else {
      std::string head = term.substr(0, xpos);
      std::string tail = term.substr(xpos + 1);
      if (!head.empty()) {
        if (head.back() != '*') bad_poly(text);
        head.pop_back();
        if (!all_digits(head)) bad_poly(text);
        coeff = Integer(head);
      }
      exponent = 1;
      if (!tail.empty()) {
        if (tail[0] != '^' || !all_digits(tail.substr(1)) || tail.size() > 8) bad_poly(text);
        exponent = std::stoul(tail.substr(1));
      }
    }
    if (acc.size() <= exponent) acc.resize(exponent + 1);
    acc[exponent] += negative ? Integer(-coeff) : coeff;
  }
  return make(std::move(acc));
}

}  // namespace mennicke
