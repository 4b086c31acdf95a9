#include "patcover/ring.hpp"

#include "patcover/cyclotomic.hpp"
#include "patcover/error.hpp"

namespace patcover {

RingContext RingContext::cyclotomic(int order) {
  CyclotomicRing ring(order);
  return {Kind::Cyclotomic, ring.n, 0, ring.d};
}

RingContext RingContext::finite_field(std::int64_t p, int dim) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (dim < 1) fail(ErrorCode::InvalidArgument, "field dimension must be >= 1");
  return {Kind::FiniteField, 0, p, dim};
}

int RingContext::point_dim() const {
  return kind == Kind::Cyclotomic || kind == Kind::FiniteField ? dim : 1;
}

int RingContext::family_dim() const { return kind == Kind::Cyclotomic ? dim : 1; }

std::string RingContext::describe() const {
  switch (kind) {
    case Kind::Integers: return "Integers";
    case Kind::Rationals: return "Rationals";
    case Kind::Cyclotomic: return "Cyclotomic(" + std::to_string(n) + ")";
    case Kind::FiniteField: return "FiniteField(" + std::to_string(p) + "," + std::to_string(dim) + ")";
  }
  return "?";
}

Element scalar(const Rational& x) { return Element{x}; }

Element vec(std::initializer_list<long> xs) {
  Element e;
  for (long x : xs) e.emplace_back(x);
  return e;
}

bool is_zero(const Element& e) {
  for (const auto& c : e)
    if (c != 0) return false;
  return true;
}

void validate_point(const RingContext& ring, const Element& e) {
  if (static_cast<int>(e.size()) != ring.point_dim())
    fail(ErrorCode::RingMismatch, to_string(e) + " is not an element of " + ring.describe());
  if (ring.kind == RingContext::Kind::Rationals) return;
  for (const auto& c : e) {
    if (!is_integer(c)) fail(ErrorCode::RingMismatch, to_string(e) + " is not integral in " + ring.describe());
    if (ring.kind == RingContext::Kind::FiniteField && (c < 0 || c >= ring.p))
      fail(ErrorCode::RingMismatch, to_string(e) + " is not a reduced residue mod " + std::to_string(ring.p));
  }
}

Element reduce(const RingContext& ring, Element e) {
  if (ring.kind != RingContext::Kind::FiniteField) return e;
  for (auto& c : e) {
    BigInt r;
    BigInt num = c.get_num();
    mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(ring.p));
    c = Rational(r);
  }
  return e;
}

Element add(const RingContext& ring, const Element& a, const Element& b) {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return reduce(ring, std::move(out));
}

Element sub(const RingContext& ring, const Element& a, const Element& b) {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return reduce(ring, std::move(out));
}

Element negate(const RingContext& ring, const Element& a) {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return reduce(ring, std::move(out));
}

Element scale_mul(const RingContext& ring, const Element& r, const Element& u) {
  switch (ring.kind) {
    case RingContext::Kind::Integers:
    case RingContext::Kind::Rationals: return Element{Rational(r[0] * u[0])};
    case RingContext::Kind::Cyclotomic: return otimes_coeffs(ring.n, r, u);
    case RingContext::Kind::FiniteField: {
      Element out(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] * u[0];
      return reduce(ring, std::move(out));
    }
  }
  return {};
}

std::optional<Element> solve_scale(const RingContext& ring, const Element& du, const Element& db) {
  switch (ring.kind) {
    case RingContext::Kind::Integers: {
      Rational r = db[0] / du[0];
      if (!is_integer(r)) return std::nullopt;
      return Element{r};
    }
    case RingContext::Kind::Rationals: return Element{Rational(db[0] / du[0])};
    case RingContext::Kind::Cyclotomic: {
      Element r;
      if (ring.n == 2) {
        r = {Rational(db[0] / du[0])};
      } else {
        // db / du = db * conj(du) / |du|^2
        Rational norm = du[0] * du[0] + du[1] * du[1];
        r = {Rational((db[0] * du[0] + db[1] * du[1]) / norm), Rational((db[1] * du[0] - db[0] * du[1]) / norm)};
      }
      for (const auto& c : r)
        if (!is_integer(c)) return std::nullopt;
      return r;
    }
    case RingContext::Kind::FiniteField: {
      std::int64_t u = mod_floor(to_int64(du[0]), ring.p);
      if (u == 0) return std::nullopt;
      std::int64_t inv = mod_inverse(u, ring.p);
      Element r(db.size());
      for (std::size_t i = 0; i < db.size(); ++i) r[i] = db[i] * inv;
      return reduce(ring, std::move(r));
    }
  }
  return std::nullopt;
}

std::string to_string(const Element& e) {
  if (e.size() == 1) return to_string(e[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += to_string(e[i]);
  }
  return s + ")";
}

}  // namespace patcover
