#include "eigenposet/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "eigenposet/errors.hpp"

namespace eigenposet {

namespace {

int canonical_conductor(int n) { return n % 4 == 2 ? n / 2 : n; }

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct FieldData {
  int conductor = 1;
  int phi = 1;
  std::vector<mpz_class> cyclotomic;          // monic, degree phi
  std::vector<std::vector<mpz_class>> power;  // z^k mod Phi_N, k < N
};

std::vector<mpz_class> compute_cyclotomic(int n);

const std::vector<mpz_class>& cached_cyclotomic(int n) {
  thread_local std::unordered_map<int, std::vector<mpz_class>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto poly = compute_cyclotomic(n);
  return cache.emplace(n, std::move(poly)).first->second;
}

std::vector<mpz_class> compute_cyclotomic(int n) {
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = cached_cyclotomic(d);
    const int dd = static_cast<int>(den.size()) - 1;
    const int nd = static_cast<int>(num.size()) - 1;
    std::vector<mpz_class> quot(nd - dd + 1);
    for (int i = nd; i >= dd; --i) {
      mpz_class c = num[i];
      quot[i - dd] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

const FieldData& field(int n) {
  thread_local std::unordered_map<int, FieldData> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  FieldData f;
  f.conductor = n;
  f.cyclotomic = cached_cyclotomic(n);
  f.phi = static_cast<int>(f.cyclotomic.size()) - 1;
  f.power.resize(n);
  f.power[0].assign(f.phi, 0);
  f.power[0][0] = 1;
  for (int k = 1; k < n; ++k) {
    const auto& prev = f.power[k - 1];
    std::vector<mpz_class> next(f.phi);
    const mpz_class& top = prev[f.phi - 1];
    for (int i = 0; i < f.phi; ++i) {
      next[i] = (i > 0 ? prev[i - 1] : mpz_class(0)) - top * f.cyclotomic[i];
    }
    f.power[k] = std::move(next);
  }
  return cache.emplace(n, std::move(f)).first->second;
}

// Folds sum_k acc[k] z^k (k < N) into power-basis coordinates.
std::vector<mpq_class> fold(const FieldData& f, const std::vector<mpq_class>& acc) {
  std::vector<mpq_class> out(f.phi);
  for (int k = 0; k < f.conductor; ++k) {
    if (sgn(acc[k]) == 0) continue;
    const auto& row = f.power[k];
    for (int i = 0; i < f.phi; ++i) {
      if (row[i] != 0) out[i] += acc[k] * row[i];
    }
  }
  return out;
}

// The subfield Q(zeta_sub) inside Q(zeta_super): row-reduced embedding of
// the sub power basis together with the transform that produced it.
struct SubfieldData {
  std::vector<std::vector<mpq_class>> rows;       // phi_sub x phi_super, RREF
  std::vector<int> pivots;                        // pivot column of each row
  std::vector<std::vector<mpq_class>> transform;  // rows = transform * basis
};

SubfieldData compute_subfield(int super, int sub) {
  const FieldData& big = field(super);
  const FieldData& small = field(sub);
  const int step = super / sub;
  const int m = small.phi;
  const int n = big.phi;
  SubfieldData s;
  s.rows.assign(m, std::vector<mpq_class>(n));
  s.transform.assign(m, std::vector<mpq_class>(m));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) s.rows[j][i] = big.power[j * step][i];
    s.transform[j][j] = 1;
  }
  int r = 0;
  for (int col = 0; col < n && r < m; ++col) {
    int piv = -1;
    for (int i = r; i < m; ++i) {
      if (sgn(s.rows[i][col]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(s.rows[r], s.rows[piv]);
    std::swap(s.transform[r], s.transform[piv]);
    const mpq_class scale = 1 / s.rows[r][col];
    for (auto& v : s.rows[r]) v *= scale;
    for (auto& v : s.transform[r]) v *= scale;
    for (int i = 0; i < m; ++i) {
      if (i == r || sgn(s.rows[i][col]) == 0) continue;
      const mpq_class c = s.rows[i][col];
      for (int k = 0; k < n; ++k) s.rows[i][k] -= c * s.rows[r][k];
      for (int k = 0; k < m; ++k) s.transform[i][k] -= c * s.transform[r][k];
    }
    s.pivots.push_back(col);
    ++r;
  }
  return s;
}

const SubfieldData& subfield(int super, int sub) {
  thread_local std::map<std::pair<int, int>, SubfieldData> cache;
  const auto key = std::make_pair(super, sub);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, compute_subfield(super, sub)).first->second;
}

// Coordinates of x in Q(zeta_sub) when x lies there.
bool descend(const std::vector<mpq_class>& x, int super, int sub, std::vector<mpq_class>& out) {
  const SubfieldData& s = subfield(super, sub);
  const int m = static_cast<int>(s.rows.size());
  const int n = static_cast<int>(x.size());
  std::vector<mpq_class> c(m);
  for (int i = 0; i < m; ++i) c[i] = x[s.pivots[i]];
  std::vector<mpq_class> residual = x;
  for (int i = 0; i < m; ++i) {
    if (sgn(c[i]) == 0) continue;
    for (int k = 0; k < n; ++k) {
      if (sgn(s.rows[i][k]) != 0) residual[k] -= c[i] * s.rows[i][k];
    }
  }
  for (const auto& v : residual) {
    if (sgn(v) != 0) return false;
  }
  out.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    if (sgn(c[i]) == 0) continue;
    for (int j = 0; j < m; ++j) out[j] += c[i] * s.transform[i][j];
  }
  return true;
}

mpq_class parse_rational(std::string_view token) {
  std::string s;
  for (char ch : token) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  const auto valid = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i >= t.size()) return false;
    bool digits = false;
    bool slash = false;
    for (; i < t.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(t[i]))) {
        digits = true;
      } else if (t[i] == '/' && !slash && digits && i + 1 < t.size()) {
        slash = true;
        digits = false;
      } else {
        return false;
      }
    }
    return digits;
  };
  if (!valid(s)) throw ParseError("malformed rational '" + s + "'");
  mpq_class q(s, 10);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

int euler_phi(int n) {
  if (n <= 0) throw InvalidArgument("euler_phi of non-positive integer");
  int result = n;
  for (int p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

std::vector<mpz_class> cyclotomic_polynomial(int n) {
  if (n <= 0) throw InvalidArgument("cyclotomic polynomial index must be positive");
  return cached_cyclotomic(n);
}

const std::vector<std::vector<mpz_class>>& cyclotomic_power_table(int conductor) {
  if (conductor <= 0 || conductor % 4 == 2) {
    throw InvalidArgument("power table needs a canonical conductor");
  }
  return field(conductor).power;
}

// ---------------------------------------------------------------- RootOfUnity

int RootOfUnity::exact_order() const {
  const long k = ((exponent % order) + order) % order;
  return order / static_cast<int>(std::gcd(k, static_cast<long>(order)));
}

RootOfUnity RootOfUnity::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("root spec must be 'm:k'");
  const auto to_long = [](std::string_view s) {
    std::string t(s);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + t + "' in root spec");
    }
    if (used != t.size()) throw ParseError("bad integer '" + t + "' in root spec");
    return v;
  };
  const long m = to_long(text.substr(0, colon));
  const long k = to_long(text.substr(colon + 1));
  if (m <= 0 || m > 1000000) throw ParseError("root order must be positive");
  return RootOfUnity{static_cast<int>(m), k};
}

std::string RootOfUnity::to_string() const {
  return std::to_string(order) + ":" + std::to_string(exponent);
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
  const int l = std::lcm(a.order, b.order);
  const long e = a.exponent * (l / a.order) + b.exponent * (l / b.order);
  return RootOfUnity{l, ((e % l) + l) % l};
}

// ---------------------------------------------------------------- CycNum

CycNum CycNum::from_power_basis(int conductor, std::vector<mpq_class> coeffs) {
  if (conductor <= 0) throw InvalidArgument("conductor must be positive");
  if (static_cast<int>(coeffs.size()) != euler_phi(conductor)) {
    throw InvalidArgument("coefficient count must equal phi(conductor)");
  }
  if (conductor % 4 != 2) {
    CycNum x(conductor, std::move(coeffs));
    x.reduce();
    return x;
  }
  CycNum sum;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (sgn(coeffs[j]) == 0) continue;
    sum += CycNum(coeffs[j]) * root_of_unity(conductor, static_cast<long>(j));
  }
  return sum;
}

CycNum CycNum::root_of_unity(int order, long exponent) {
  if (order <= 0) throw InvalidArgument("root of unity order must be positive");
  long k = ((exponent % order) + order) % order;
  int n = order;
  bool negate = false;
  if (n % 4 == 2) {
    // z_2h = -z_h^((h+1)/2) for odd h.
    const int h = n / 2;
    negate = (k % 2) != 0;
    k = (k * ((h + 1) / 2)) % h;
    n = h;
  }
  const FieldData& f = field(n);
  std::vector<mpq_class> c(f.phi);
  for (int i = 0; i < f.phi; ++i) c[i] = negate ? mpq_class(-f.power[k][i]) : mpq_class(f.power[k][i]);
  CycNum x(n, std::move(c));
  x.reduce();
  return x;
}

const mpq_class& CycNum::rational() const {
  if (!is_rational()) throw InvalidArgument("cyclotomic number " + to_string() + " is not rational");
  return coeffs_[0];
}

void CycNum::promote_to(int conductor) {
  if (conductor == conductor_) return;
  const FieldData& f = field(conductor);
  const int step = conductor / conductor_;
  std::vector<mpq_class> out(f.phi);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const auto& row = f.power[j * step];
    for (int i = 0; i < f.phi; ++i) {
      if (row[i] != 0) out[i] += coeffs_[j] * row[i];
    }
  }
  conductor_ = conductor;
  coeffs_ = std::move(out);
}

void CycNum::reduce() {
  if (conductor_ == 1) return;
  const bool rational_only =
      std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
  if (rational_only) {
    coeffs_.resize(1);
    conductor_ = 1;
    return;
  }
  bool descended = true;
  std::vector<mpq_class> smaller;
  while (descended && conductor_ > 1) {
    descended = false;
    for (int p : prime_factors(conductor_)) {
      const int sub = canonical_conductor(conductor_ / p);
      if (descend(coeffs_, conductor_, sub, smaller)) {
        conductor_ = sub;
        coeffs_ = std::move(smaller);
        descended = true;
        break;
      }
    }
  }
}

CycNum& CycNum::operator+=(const CycNum& other) {
  if (other.conductor_ == 1 && conductor_ == 1) {
    coeffs_[0] += other.coeffs_[0];
    return *this;
  }
  const int l = std::lcm(conductor_, other.conductor_);
  promote_to(l);
  if (other.conductor_ == l) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  } else {
    CycNum b = other;
    b.promote_to(l);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  }
  reduce();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& other) { return *this += -other; }

CycNum operator-(CycNum a) {
  for (auto& v : a.coeffs_) v = -v;
  return a;
}

CycNum& CycNum::operator*=(const CycNum& other) {
  if (other.conductor_ == 1) {
    if (sgn(other.coeffs_[0]) == 0) return *this = CycNum();
    for (auto& v : coeffs_) v *= other.coeffs_[0];
    return *this;
  }
  if (conductor_ == 1) {
    if (sgn(coeffs_[0]) == 0) return *this;
    const mpq_class s = coeffs_[0];
    *this = other;
    for (auto& v : coeffs_) v *= s;
    return *this;
  }
  const int l = std::lcm(conductor_, other.conductor_);
  promote_to(l);
  CycNum b = other;
  b.promote_to(l);
  const FieldData& f = field(l);
  std::vector<mpq_class> acc(l);
  for (int i = 0; i < f.phi; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (int j = 0; j < f.phi; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      acc[(i + j) % l] += coeffs_[i] * b.coeffs_[j];
    }
  }
  coeffs_ = fold(f, acc);
  reduce();
  return *this;
}

CycNum& CycNum::operator/=(const CycNum& other) { return *this *= inv(other); }

bool operator<(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string CycNum::to_string() const {
  std::string out = "cyc(" + std::to_string(conductor_) + ";";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += coeffs_[i].get_str();
  }
  out += ")";
  return out;
}

CycNum CycNum::parse(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.substr(0, 4) != "cyc(") return CycNum(parse_rational(text));
  if (text.back() != ')') throw ParseError("unterminated cyc(...) token");
  const std::string_view body = text.substr(4, text.size() - 5);
  const auto semi = body.find(';');
  if (semi == std::string_view::npos) throw ParseError("cyc token needs 'N; c0, ...'");
  const mpq_class n = parse_rational(body.substr(0, semi));
  if (n.get_den() != 1 || n <= 0 || n > 100000) throw ParseError("bad conductor in cyc token");
  const int conductor = static_cast<int>(n.get_num().get_si());
  std::vector<mpq_class> coeffs;
  std::string_view rest = body.substr(semi + 1);
  while (true) {
    const auto comma = rest.find(',');
    coeffs.push_back(parse_rational(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (static_cast<int>(coeffs.size()) != euler_phi(conductor)) {
    throw ParseError("cyc token with conductor " + std::to_string(conductor) + " needs " +
                     std::to_string(euler_phi(conductor)) + " coefficients");
  }
  return from_power_basis(conductor, std::move(coeffs));
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> sum = 0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const double angle = 2.0 * M_PI * static_cast<double>(j) / conductor_;
    sum += coeffs_[j].get_d() * std::polar(1.0, angle);
  }
  return sum;
}

std::size_t CycNum::hash() const {
  std::size_t h = std::hash<int>{}(conductor_);
  const auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& c : coeffs_) {
    mix(mpz_get_ui(c.get_num_mpz_t()) ^ (static_cast<std::size_t>(sgn(c)) << 1));
    mix(mpz_get_ui(c.get_den_mpz_t()));
  }
  return h;
}

CycNum add(const CycNum& a, const CycNum& b) { return a + b; }
CycNum mul(const CycNum& a, const CycNum& b) { return a * b; }

CycNum inv(const CycNum& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of zero cyclotomic number");
  if (a.is_rational()) return CycNum(mpq_class(1 / a.rational()));
  // Solve (multiplication by a) y = 1 in the power basis.
  const int n = a.conductor();
  const FieldData& f = field(n);
  const int phi = f.phi;
  std::vector<std::vector<mpq_class>> m(phi, std::vector<mpq_class>(phi + 1));
  for (int j = 0; j < phi; ++j) {
    std::vector<mpq_class> acc(n);
    for (int i = 0; i < phi; ++i) acc[(i + j) % n] = a.coeffs()[i];
    const auto col = fold(f, acc);
    for (int i = 0; i < phi; ++i) m[i][j] = col[i];
  }
  m[0][phi] = 1;
  for (int col = 0; col < phi; ++col) {
    int piv = col;
    while (piv < phi && sgn(m[piv][col]) == 0) ++piv;
    if (piv == phi) throw DivisionByZero("multiplication map is singular");
    std::swap(m[col], m[piv]);
    const mpq_class s = 1 / m[col][col];
    for (auto& v : m[col]) v *= s;
    for (int i = 0; i < phi; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      const mpq_class c = m[i][col];
      for (int k = col; k <= phi; ++k) m[i][k] -= c * m[col][k];
    }
  }
  std::vector<mpq_class> y(phi);
  for (int i = 0; i < phi; ++i) y[i] = m[i][phi];
  return CycNum::from_power_basis(n, std::move(y));
}

CycNum conj(const CycNum& a) {
  const int n = a.conductor();
  if (n == 1) return a;
  const FieldData& f = field(n);
  std::vector<mpq_class> acc(n);
  for (int j = 0; j < f.phi; ++j) acc[(n - j) % n] = a.coeffs()[j];
  return CycNum::from_power_basis(n, fold(f, acc));
}

CycNum embed(const RootOfUnity& r) { return CycNum::root_of_unity(r.order, r.exponent); }

CycNum pow(const CycNum& x, long k) {
  if (k < 0) return pow(inv(x), -k);
  CycNum result(1);
  CycNum base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

}  // namespace eigenposet
