#include "ccenum/fewnomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ccenum {

namespace {

std::vector<std::pair<int, int>> normalize_mono(std::vector<std::pair<int, int>> mono) {
  std::sort(mono.begin(), mono.end());
  std::vector<std::pair<int, int>> out;
  for (const auto& [var, exp] : mono) {
    if (exp == 0) continue;
    if (!out.empty() && out.back().first == var)
      out.back().second += exp;
    else
      out.emplace_back(var, exp);
  }
  return out;
}

}  // namespace

void Polynomial::add(double coeff, std::vector<std::pair<int, int>> mono) {
  if (coeff == 0.0) return;
  mono = normalize_mono(std::move(mono));
  for (auto& t : terms) {
    if (t.mono == mono) {
      t.coeff += coeff;
      return;
    }
  }
  terms.push_back(Term{coeff, std::move(mono)});
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    int d = 0;
    for (const auto& [var, exp] : t.mono) d += exp;
    deg = std::max(deg, d);
  }
  return deg;
}

double Polynomial::evaluate(const std::vector<double>& values) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    double m = t.coeff;
    for (const auto& [var, exp] : t.mono)
      for (int e = 0; e < exp; ++e) m *= values[var];
    acc += m;
  }
  return acc;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  std::vector<Term> sorted = terms;
  std::sort(sorted.begin(), sorted.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::ostringstream os;
  bool first = true;
  for (const auto& t : sorted) {
    if (t.coeff == 0.0) continue;
    const double c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    os << std::abs(c);
    for (const auto& [var, exp] : t.mono) {
      os << "*" << names[var];
      if (exp > 1) os << "^" << exp;
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

std::string pair_tag(int i, int j) {
  if (i + 1 <= 9 && j + 1 <= 9)
    return std::to_string(i + 1) + std::to_string(j + 1);
  return std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

FewnomialSystem build_system(const PotentialParams& params) {
  const int n = params.n();
  const int pairs = DistanceVector::pair_count(n);
  FewnomialSystem sys;
  sys.n = n;
  sys.k = 2 * pairs;  // every Y_ij and Yt_ij
  sys.variable_names.resize(3 * pairs);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      sys.variable_names[sys.var_r(i, j)] = "r" + pair_tag(i, j);
      sys.variable_names[sys.var_y(i, j)] = "Y" + pair_tag(i, j);
      sys.variable_names[sys.var_yt(i, j)] = "Yt" + pair_tag(i, j);
    }
  }

  const double minv = 1.0 / params.total_mass();
  auto vy = [&](int a, int b) { return sys.var_y(std::min(a, b), std::max(a, b)); };
  auto vr = [&](int a, int b) { return sys.var_r(std::min(a, b), std::max(a, b)); };

  struct BracketEntry {
    int a, b;
    double sign;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Polynomial p;
      // each term: m_k (Y_ab - 1/M) * bracket, the bracket a signed sum of
      // squared distances with r_aa entries dropped
      auto emit = [&](double mk, int y, const BracketEntry (&bracket)[3]) {
        for (const auto& en : bracket) {
          if (en.a == en.b) continue;
          const int r = vr(en.a, en.b);
          p.add(mk * en.sign, {{y, 1}, {r, 2}});
          p.add(-mk * minv * en.sign, {{r, 2}});
        }
      };
      for (int k = 0; k < n; ++k) {
        const double mk = params.masses[k];
        if (k != i)  // S_ik (r_jk^2 - r_ik^2 - r_ij^2)
          emit(mk, vy(i, k), {{j, k, +1.0}, {i, k, -1.0}, {i, j, -1.0}});
        if (k != j)  // S_jk (r_ik^2 - r_jk^2 - r_ij^2)
          emit(mk, vy(j, k), {{i, k, +1.0}, {j, k, -1.0}, {i, j, -1.0}});
      }
      sys.equations.push_back(std::move(p));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Polynomial p;
      p.add(1.0, {{sys.var_r(i, j), 1}});
      p.add(-1.0, {{sys.var_yt(i, j), 1}});
      sys.equations.push_back(std::move(p));
    }
  }
  sys.degrees.reserve(sys.equations.size());
  for (const auto& eq : sys.equations) sys.degrees.push_back(eq.degree());
  return sys;
}

VectorXd evaluate_system(const FewnomialSystem& system, const PotentialParams& params,
                         const DistanceVector& distances) {
  const int n = system.n;
  const int pairs = DistanceVector::pair_count(n);
  std::vector<double> values(3 * pairs);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = distances(i, j);
      values[system.var_r(i, j)] = r;
      values[system.var_y(i, j)] = std::pow(r, -(params.alpha + 2.0));
      values[system.var_yt(i, j)] = r;
    }
  }
  VectorXd out(static_cast<int>(system.equations.size()));
  for (size_t e = 0; e < system.equations.size(); ++e)
    out(static_cast<int>(e)) = system.equations[e].evaluate(values);
  return out;
}

BigInt khovanskii_bound(const std::vector<int>& degrees, int k) {
  if (degrees.empty()) throw std::invalid_argument("degrees must be nonempty");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  BigInt prod = 1;
  long long sum = 0;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("degrees must be >= 1");
    prod *= d;
    sum += d;
  }
  const BigInt base = BigInt(sum) + 1;
  BigInt out = prod * boost::multiprecision::pow(base, static_cast<unsigned>(k));
  out *= boost::multiprecision::pow(BigInt(2),
                                    static_cast<unsigned>(static_cast<long long>(k) * (k - 1) / 2));
  return out;
}

BigInt u_of_n(int n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  const long long p = static_cast<long long>(n) * (n - 1);  // n^2 - n
  BigInt out = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(p / 2));
  out *= boost::multiprecision::pow(BigInt(2 * static_cast<long long>(n) * n - 2 * n + 1),
                                    static_cast<unsigned>(p));
  out *= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(p * (p - 1) / 2));
  return out;
}

}  // namespace ccenum
