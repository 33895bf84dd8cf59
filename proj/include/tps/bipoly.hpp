#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tps/field.hpp"
#include "tps/lex.hpp"

namespace tps {

// Monomials of R_(mu,nu) in canonical order: (i,j) ascending lexicographically,
// j fastest; (i,j) stands for s0^(mu-i) s1^i t0^(nu-j) t1^j.
inline std::vector<std::pair<int, int>> monomial_basis(int mu, int nu) {
  std::vector<std::pair<int, int>> out;
  if (mu < 0 || nu < 0) return out;
  out.reserve(static_cast<size_t>(mu + 1) * (nu + 1));
  for (int i = 0; i <= mu; ++i)
    for (int j = 0; j <= nu; ++j) out.emplace_back(i, j);
  return out;
}

inline int dim_r(int mu, int nu) {
  return (mu < 0 || nu < 0) ? 0 : (mu + 1) * (nu + 1);
}

template <class K>
struct BiPoly;

// Coordinates of p over monomial_basis(p.sdeg, p.tdeg).
template <class K>
std::vector<K> coefficient_vector(const BiPoly<K>& p) {
  std::vector<K> v(dim_r(p.sdeg, p.tdeg), K(0));
  for (const auto& [k, c] : p.coef)
    v[static_cast<size_t>(k.first) * (p.tdeg + 1) + k.second] = c;
  return v;
}

// Bihomogeneous polynomial of bidegree (sdeg, tdeg) in s0,s1,t0,t1.
template <class K>
struct BiPoly {
  int sdeg = 0, tdeg = 0;
  std::map<std::pair<int, int>, K> coef;  // key (i,j) as in monomial_basis

  BiPoly() = default;
  BiPoly(int sd, int td) : sdeg(sd), tdeg(td) {}

  bool is_zero() const { return coef.empty(); }

  void add_term(int i, int j, const K& c) {
    if (i < 0 || i > sdeg || j < 0 || j > tdeg)
      throw internal_error("BiPoly term outside bidegree");
    if (kis_zero(c)) return;
    auto it = coef.find({i, j});
    if (it == coef.end()) {
      coef.emplace(std::make_pair(i, j), c);
    } else {
      it->second = it->second + c;
      if (kis_zero(it->second)) coef.erase(it);
    }
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    if (a.sdeg != b.sdeg || a.tdeg != b.tdeg)
      throw internal_error("BiPoly addition across bidegrees");
    BiPoly r = a;
    for (const auto& [k, c] : b.coef) r.add_term(k.first, k.second, c);
    return r;
  }

  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    if (a.sdeg != b.sdeg || a.tdeg != b.tdeg)
      throw internal_error("BiPoly subtraction across bidegrees");
    BiPoly r = a;
    for (const auto& [k, c] : b.coef) r.add_term(k.first, k.second, -c);
    return r;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.sdeg + b.sdeg, a.tdeg + b.tdeg);
    for (const auto& [ka, ca] : a.coef)
      for (const auto& [kb, cb] : b.coef)
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  BiPoly scaled(const K& c) const {
    BiPoly r(sdeg, tdeg);
    if (kis_zero(c)) return r;
    for (const auto& [k, v] : coef) r.coef.emplace(k, v * c);
    return r;
  }

  BiPoly transposed() const {
    BiPoly r(tdeg, sdeg);
    for (const auto& [k, v] : coef) r.coef.emplace(std::make_pair(k.second, k.first), v);
    return r;
  }

  K eval(const K& s0, const K& s1, const K& t0, const K& t1) const {
    std::vector<K> p0(sdeg + 1, K(1)), p1(sdeg + 1, K(1));
    std::vector<K> q0(tdeg + 1, K(1)), q1(tdeg + 1, K(1));
    for (int i = 1; i <= sdeg; ++i) {
      p0[i] = p0[i - 1] * s0;
      p1[i] = p1[i - 1] * s1;
    }
    for (int j = 1; j <= tdeg; ++j) {
      q0[j] = q0[j - 1] * t0;
      q1[j] = q1[j - 1] * t1;
    }
    K acc(0);
    for (const auto& [k, c] : coef)
      acc = acc + c * p0[sdeg - k.first] * p1[k.first] * q0[tdeg - k.second] *
                      q1[k.second];
    return acc;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.sdeg == b.sdeg && a.tdeg == b.tdeg && a.coef == b.coef;
  }
};

// Homogeneous form in x0..x3. Terms are kept in descending lexicographic
// order of exponent tuples, so begin() is the canonical leading term.
template <class K>
struct XForm {
  using Exps = std::array<int, 4>;
  int deg = 0;
  std::map<Exps, K, std::greater<Exps>> coef;

  XForm() = default;
  explicit XForm(int d) : deg(d) {}

  static XForm constant(const K& c) {
    XForm f(0);
    f.add_term({0, 0, 0, 0}, c);
    return f;
  }

  static XForm variable(int v) {
    XForm f(1);
    Exps e{0, 0, 0, 0};
    e[v] = 1;
    f.add_term(e, K(1));
    return f;
  }

  bool is_zero() const { return coef.empty(); }

  void add_term(const Exps& e, const K& c) {
    int d = e[0] + e[1] + e[2] + e[3];
    if (d != deg) throw internal_error("XForm term of wrong degree");
    if (kis_zero(c)) return;
    auto it = coef.find(e);
    if (it == coef.end()) {
      coef.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (kis_zero(it->second)) coef.erase(it);
    }
  }

  friend XForm operator+(const XForm& a, const XForm& b) {
    if (a.is_zero()) return b.with_deg(a.deg, b.deg);
    if (b.is_zero()) return a;
    if (a.deg != b.deg) throw internal_error("XForm addition across degrees");
    XForm r = a;
    for (const auto& [e, c] : b.coef) r.add_term(e, c);
    return r;
  }

  friend XForm operator-(const XForm& a, const XForm& b) {
    XForm nb = b.scaled(K(-1));
    return a + nb;
  }

  friend XForm operator*(const XForm& a, const XForm& b) {
    XForm r(a.deg + b.deg);
    for (const auto& [ea, ca] : a.coef)
      for (const auto& [eb, cb] : b.coef)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]},
                   ca * cb);
    return r;
  }

  XForm scaled(const K& c) const {
    XForm r(deg);
    if (kis_zero(c)) return r;
    for (const auto& [e, v] : coef) r.coef.emplace(e, v * c);
    return r;
  }

  XForm pow(int k) const {
    if (k < 0) throw internal_error("XForm negative power");
    XForm r = constant(K(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  // Scales so the lexicographically-first nonzero coefficient becomes 1.
  XForm normalized() const {
    if (is_zero()) return *this;
    return scaled(kinv(coef.begin()->second));
  }

  K eval(const std::array<K, 4>& x) const {
    std::array<std::vector<K>, 4> pw;
    for (int v = 0; v < 4; ++v) {
      pw[v].assign(deg + 1, K(1));
      for (int i = 1; i <= deg; ++i) pw[v][i] = pw[v][i - 1] * x[v];
    }
    K acc(0);
    for (const auto& [e, c] : coef)
      acc = acc + c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]];
    return acc;
  }

  friend bool operator==(const XForm& a, const XForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.deg == b.deg && a.coef == b.coef;
  }

 private:
  // Zero forms act as the neutral element of either operand degree.
  XForm with_deg(int da, int db) const {
    if (!is_zero()) return *this;
    return da == db ? *this : XForm(db);
  }
};

// Exact division of homogeneous forms; nullopt when num is not a multiple
// of den. Greedy leading-term steps in the canonical monomial order.
template <class K>
std::optional<XForm<K>> divide_exact(const XForm<K>& num, const XForm<K>& den) {
  if (den.is_zero()) throw internal_error("division by the zero form");
  if (num.is_zero()) return XForm<K>(std::max(num.deg - den.deg, 0));
  if (num.deg < den.deg) return std::nullopt;
  XForm<K> q(num.deg - den.deg);
  XForm<K> rem = num;
  const auto& [de, dc] = *den.coef.begin();
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.coef.begin();
    std::array<int, 4> t;
    for (int v = 0; v < 4; ++v) {
      t[v] = re[v] - de[v];
      if (t[v] < 0) return std::nullopt;
    }
    K c = rc * kinv(dc);
    q.add_term(t, c);
    XForm<K> mono(q.deg);
    mono.add_term(t, c);
    rem = rem - mono * den;
  }
  return q;
}

inline const std::array<std::pair<int, int>, 10>& quad_pairs() {
  static const std::array<std::pair<int, int>, 10> p = {{{0, 0},
                                                         {0, 1},
                                                         {0, 2},
                                                         {0, 3},
                                                         {1, 1},
                                                         {1, 2},
                                                         {1, 3},
                                                         {2, 2},
                                                         {2, 3},
                                                         {3, 3}}};
  return p;
}

inline int quad_pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int tab[4][4] = {{0, 1, 2, 3}, {1, 4, 5, 6}, {2, 5, 7, 8}, {3, 6, 8, 9}};
  return tab[i][j];
}

template <class K>
XForm<K> quad_monomial(int pair_index) {
  auto [i, j] = quad_pairs()[pair_index];
  XForm<K> f(2);
  std::array<int, 4> e{0, 0, 0, 0};
  e[i] += 1;
  e[j] += 1;
  f.add_term(e, K(1));
  return f;
}

// A form-valued vector over the monomial basis of R_(mu,nu): entry k is the
// x-coefficient of basis monomial k. xdeg is 1 (plane) or 2 (quadric).
template <class K>
struct MovingForm {
  int mu = 0, nu = 0, xdeg = 1;
  std::vector<XForm<K>> entries;

  static MovingForm from_flat(int mu, int nu, int xdeg,
                              const std::vector<K>& flat) {
    int M = dim_r(mu, nu);
    int blocks = xdeg == 1 ? 4 : 10;
    if (static_cast<int>(flat.size()) != blocks * M)
      throw internal_error("MovingForm flat vector has wrong length");
    MovingForm f;
    f.mu = mu;
    f.nu = nu;
    f.xdeg = xdeg;
    f.entries.assign(M, XForm<K>(xdeg));
    for (int b = 0; b < blocks; ++b) {
      XForm<K> mono =
          xdeg == 1 ? XForm<K>::variable(b) : quad_monomial<K>(b);
      for (int k = 0; k < M; ++k) {
        const K& c = flat[static_cast<size_t>(b) * M + k];
        if (!kis_zero(c)) f.entries[k] = f.entries[k] + mono.scaled(c);
      }
    }
    return f;
  }

  std::vector<K> to_flat() const {
    int M = dim_r(mu, nu);
    int blocks = xdeg == 1 ? 4 : 10;
    std::vector<K> flat(static_cast<size_t>(blocks) * M, K(0));
    for (int k = 0; k < M; ++k) {
      for (const auto& [e, c] : entries[k].coef) {
        int b;
        if (xdeg == 1) {
          b = -1;
          for (int v = 0; v < 4; ++v)
            if (e[v] == 1) b = v;
        } else {
          int i = -1, j = -1;
          for (int v = 0; v < 4; ++v) {
            if (e[v] == 2) i = j = v;
            if (e[v] == 1) (i < 0 ? i : j) = v;
          }
          b = quad_pair_index(i, j);
        }
        flat[static_cast<size_t>(b) * M + k] = c;
      }
    }
    return flat;
  }
};

// The coefficient polynomials of a moving form, one per x-monomial block
// (4 for planes, 10 for quadrics, ordered like quad_pairs()).
template <class K>
std::vector<BiPoly<K>> moving_form_blocks(const MovingForm<K>& f) {
  const int M = dim_r(f.mu, f.nu);
  const int blocks = f.xdeg == 1 ? 4 : 10;
  auto flat = f.to_flat();
  std::vector<BiPoly<K>> out(blocks, BiPoly<K>(f.mu, f.nu));
  for (int b = 0; b < blocks; ++b)
    for (int k = 0; k < M; ++k) {
      const K& c = flat[static_cast<size_t>(b) * M + k];
      if (!kis_zero(c)) out[b].add_term(k / (f.nu + 1), k % (f.nu + 1), c);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing. Shared grammar:
//   poly := ['+'|'-'] term (('+'|'-') term)*
//   term := [coef ['*']] factor ('*' factor)* | coef
//   coef := integer ['/' integer]
//   factor := var ['^' exponent]
// ---------------------------------------------------------------------------

template <class K>
struct ParsedTerm {
  K coef;
  std::map<std::string, int> exps;
  int pos;
  std::string text;
};

template <class K>
std::vector<ParsedTerm<K>> parse_terms(const std::string& src) {
  std::vector<Token> toks = lex_poly(src);
  std::vector<ParsedTerm<K>> terms;
  size_t i = 0;
  auto expect = [&](Token::Kind k, const char* what) -> const Token& {
    if (toks[i].kind != k)
      throw input_error(std::string("expected ") + what + " at position " +
                        std::to_string(toks[i].pos));
    return toks[i++];
  };
  bool first = true;
  while (toks[i].kind != Token::End) {
    int sign = 1;
    if (toks[i].kind == Token::Plus || toks[i].kind == Token::Minus) {
      sign = toks[i].kind == Token::Minus ? -1 : 1;
      ++i;
    } else if (!first) {
      throw input_error("expected '+' or '-' at position " +
                        std::to_string(toks[i].pos));
    }
    first = false;
    int tpos = toks[i].pos;
    ParsedTerm<K> t;
    t.pos = tpos;
    t.coef = K(sign);
    bool any = false;
    if (toks[i].kind == Token::Number) {
      mpz_class num(toks[i].text);
      ++i;
      mpz_class den(1);
      if (toks[i].kind == Token::Slash) {
        ++i;
        den = mpz_class(expect(Token::Number, "denominator").text);
      }
      t.coef = t.coef * kfrom_fraction<K>(num, den);
      any = true;
      if (toks[i].kind == Token::Star) {
        ++i;
        if (toks[i].kind != Token::Ident)
          throw input_error("expected variable at position " +
                            std::to_string(toks[i].pos));
      }
    }
    while (toks[i].kind == Token::Ident) {
      std::string var = toks[i].text;
      ++i;
      int e = 1;
      if (toks[i].kind == Token::Caret) {
        ++i;
        const Token& n = expect(Token::Number, "exponent");
        mpz_class z(n.text);
        if (z > 1000) throw input_error("exponent too large at position " +
                                        std::to_string(n.pos));
        e = static_cast<int>(z.get_si());
      }
      t.exps[var] += e;
      any = true;
      if (toks[i].kind == Token::Star) {
        ++i;
        if (toks[i].kind != Token::Ident)
          throw input_error("expected variable at position " +
                            std::to_string(toks[i].pos));
        continue;
      }
      break;
    }
    if (!any)
      throw input_error("expected term at position " + std::to_string(tpos));
    int end = toks[i].pos;
    t.text = src.substr(tpos, end - tpos);
    while (!t.text.empty() && std::isspace(static_cast<unsigned char>(t.text.back())))
      t.text.pop_back();
    terms.push_back(std::move(t));
  }
  if (terms.empty()) throw input_error("empty polynomial");
  return terms;
}

template <class K>
BiPoly<K> parse_bipoly(const std::string& src, int m, int n) {
  BiPoly<K> p(m, n);
  for (const auto& t : parse_terms<K>(src)) {
    int es0 = 0, es1 = 0, et0 = 0, et1 = 0;
    for (const auto& [v, e] : t.exps) {
      if (v == "s0")
        es0 += e;
      else if (v == "s1")
        es1 += e;
      else if (v == "t0")
        et0 += e;
      else if (v == "t1")
        et1 += e;
      else
        throw input_error("unknown variable '" + v + "' in term '" + t.text +
                          "'");
    }
    if (es0 + es1 != m || et0 + et1 != n)
      throw input_error("term '" + t.text + "' has bidegree (" +
                        std::to_string(es0 + es1) + "," +
                        std::to_string(et0 + et1) + "), expected (" +
                        std::to_string(m) + "," + std::to_string(n) + ")");
    p.add_term(es1, et1, t.coef);
  }
  return p;
}

// expected_deg < 0 infers the degree from the first term.
template <class K>
XForm<K> parse_xform(const std::string& src, int expected_deg = -1) {
  auto terms = parse_terms<K>(src);
  std::optional<XForm<K>> out;
  for (const auto& t : terms) {
    std::array<int, 4> e{0, 0, 0, 0};
    for (const auto& [v, ex] : t.exps) {
      if (v.size() == 2 && v[0] == 'x' && v[1] >= '0' && v[1] <= '3')
        e[v[1] - '0'] += ex;
      else
        throw input_error("unknown variable '" + v + "' in term '" + t.text +
                          "'");
    }
    int d = e[0] + e[1] + e[2] + e[3];
    if (!out) {
      int want = expected_deg >= 0 ? expected_deg : d;
      if (d != want)
        throw input_error("term '" + t.text + "' has degree " +
                          std::to_string(d) + ", expected " +
                          std::to_string(want));
      out = XForm<K>(want);
    } else if (d != out->deg) {
      throw input_error("term '" + t.text + "' has degree " +
                        std::to_string(d) + ", expected " +
                        std::to_string(out->deg));
    }
    out->add_term(e, t.coef);
  }
  return *out;
}

// ---------------------------------------------------------------------------
// Rendering (canonical term order; round-trips through the parser).
// ---------------------------------------------------------------------------

namespace detail {

inline void append_factor(std::string& s, const char* var, int e) {
  if (e == 0) return;
  if (!s.empty()) s += "*";
  s += var;
  if (e > 1) {
    s += "^";
    s += std::to_string(e);
  }
}

template <class K>
void append_term(std::string& out, const K& c, const std::string& factors) {
  std::string cs = kstr(c);
  bool neg = !cs.empty() && cs[0] == '-';
  std::string mag = neg ? cs.substr(1) : cs;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (factors.empty()) {
    out += mag;
  } else if (mag == "1") {
    out += factors;
  } else {
    out += mag + "*" + factors;
  }
}

}  // namespace detail

template <class K>
std::string render(const BiPoly<K>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.coef) {
    std::string f;
    detail::append_factor(f, "s0", p.sdeg - k.first);
    detail::append_factor(f, "s1", k.first);
    detail::append_factor(f, "t0", p.tdeg - k.second);
    detail::append_factor(f, "t1", k.second);
    detail::append_term(out, c, f);
  }
  return out;
}

template <class K>
std::string render(const XForm<K>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  static const char* vars[4] = {"x0", "x1", "x2", "x3"};
  for (const auto& [e, c] : p.coef) {
    std::string f;
    for (int v = 0; v < 4; ++v) detail::append_factor(f, vars[v], e[v]);
    detail::append_term(out, c, f);
  }
  return out;
}

inline std::string render_monomial(int mu, int nu, std::pair<int, int> ij) {
  std::string f;
  detail::append_factor(f, "s0", mu - ij.first);
  detail::append_factor(f, "s1", ij.first);
  detail::append_factor(f, "t0", nu - ij.second);
  detail::append_factor(f, "t1", ij.second);
  if (f.empty()) f = "1";
  return f;
}

}  // namespace tps
